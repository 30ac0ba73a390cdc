#include <doctest.h>

#include <fstream>
#include <random>
#include <set>

#include "phaselab/io.hpp"
#include "phaselab/poly.hpp"

using namespace phaselab;

namespace {

Rational q(long n, long d = 1) { return make_rat(n, d); }

IntPoly from_roots(const std::vector<long>& roots) {
    IntPoly p = IntPoly::from_longs({1});
    for (long r : roots) p = p * IntPoly::from_longs({-r, 1});
    return p;
}

}  // namespace

TEST_CASE("eval") {
    IntPoly p = IntPoly::from_longs({1, 0, 1});  // x^2 + 1
    CHECK(p.eval(q(2)) == q(5));
    CHECK(p.eval(q(1, 2)) == q(5, 4));
    CHECK(IntPoly().eval(q(42)) == q(0));
}

TEST_CASE("sturm chains: textbook cases") {
    auto chain = sturm_chain(IntPoly::from_longs({-2, 0, 1})).seq;  // x^2 - 2
    REQUIRE(chain.size() == 3);
    CHECK(chain[2].degree() == 0);
    CHECK(sgn(chain[2].leading()) > 0);

    auto chain2 = sturm_chain(IntPoly::from_longs({1, 0, 1})).seq;  // x^2 + 1
    REQUIRE(chain2.size() == 3);
    CHECK(sgn(chain2[2].leading()) < 0);
}

TEST_CASE("count_real_roots: basic") {
    CHECK(count_real_roots(IntPoly::from_longs({1, 0, 1})) == 0);
    CHECK(count_real_roots(IntPoly::from_longs({-2, 0, 1})) == 2);
    CHECK(count_real_roots(IntPoly::from_longs({-2, 0, 1}), {false, q(0), q(2)}) == 1);
    // Root at an interval bound is rejected.
    CHECK_THROWS_AS(count_real_roots(IntPoly::from_longs({-1, 1}), {false, q(1), q(2)}),
                    std::invalid_argument);
    // Non-squarefree: (x-1)^2 has one distinct real root.
    CHECK(count_real_roots(IntPoly::from_longs({1, -2, 1})) == 1);
    CHECK_THROWS_AS(count_real_roots(IntPoly()), std::invalid_argument);
}

TEST_CASE("count_real_roots: constructed integer roots (randomized)") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t) {
        std::set<long> roots;
        std::size_t k = 1 + rng() % 5;
        while (roots.size() < k) roots.insert(static_cast<long>(rng() % 21) - 10);
        std::vector<long> rs(roots.begin(), roots.end());
        IntPoly p = from_roots(rs);
        CHECK(count_real_roots(p) == static_cast<int>(rs.size()));
        // Positive integer scaling changes nothing.
        CHECK(count_real_roots(BigInt(7) * p) == static_cast<int>(rs.size()));
        // Repeated factors count distinct roots only.
        CHECK(count_real_roots(p * p) == static_cast<int>(rs.size()));
        // Interval [min-1, max+1] contains them all.
        long lo = rs.front() - 1, hi = rs.back() + 1;
        CHECK(count_real_roots(p, {false, q(lo), q(hi)}) == static_cast<int>(rs.size()));
    }
}

TEST_CASE("disjoint product adds counts (randomized)") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        std::set<long> a, b;
        while (a.size() < 2) a.insert(static_cast<long>(rng() % 10));
        while (b.size() < 2) b.insert(static_cast<long>(rng() % 10) + 20);
        IntPoly pa = from_roots(std::vector<long>(a.begin(), a.end()));
        IntPoly pb = from_roots(std::vector<long>(b.begin(), b.end()));
        CHECK(count_real_roots(pa * pb) == count_real_roots(pa) + count_real_roots(pb));
    }
}

TEST_CASE("f0 dataset") {
    const BivariatePoly& f0 = f0_dataset();
    CHECK(f0.term_count() == 11);
    CHECK(is_homogeneous(f0, 10));
    CHECK(!is_homogeneous(BivariatePoly({{2, 0, BigInt(1)}, {0, 1, BigInt(1)}}), 2));
    CHECK(is_homogeneous(BivariatePoly(), 3));  // zero polynomial: vacuous

    IntPoly u = specialize_x34(f0);  // f0(1, t)
    CHECK(u.degree() == 10);
    CHECK(u.eval(q(0)) ==
          Rational("950484050032900617743793729374383632917614227356173754905368787200"));
    CHECK(u.leading() ==
          BigInt("615836814694440125755941750205355957259806055430532973956877900"));
    // Coefficient of x44^9 x34 (second displayed term, negative).
    CHECK(u[9] ==
          BigInt("-884972594452387958848562473144241797030697764519228205098183524"));

    CHECK(count_real_roots(u) == 0);
    CHECK(count_real_roots(specialize_x44(f0)) == 0);  // reversed specialization
    CHECK(sturm_chain(u).seq.size() <= 11);

    // Transcription checksum: sum of all coefficients = f0(1, 1).
    CHECK(u.eval(q(1)) ==
          Rational("10409092232810525740343833164087844495549793735834199813160813640625"));
}

TEST_CASE("specialize: simple cases") {
    BivariatePoly xy({{1, 1, BigInt(1)}});  // x34 * x44
    CHECK(specialize_x34(xy) == IntPoly::from_longs({0, 1}));
    CHECK(specialize_x34(BivariatePoly()).is_zero());
}

TEST_CASE("poly text round-trip and shipped data file") {
    std::string text = poly_to_text(f0_dataset());
    std::istringstream in(text);
    CHECK(poly_to_text(parse_poly_text(in)) == text);

    std::ifstream file(PHASELAB_SOURCE_DIR "/core/data/f0.txt");
    REQUIRE(file.good());
    CHECK(poly_to_text(parse_poly_text(file)) == text);

    std::istringstream bad("0 1 oops");
    CHECK_THROWS_AS(parse_poly_text(bad), IoError);
}

TEST_CASE("pseudo_rem / gcd / exact_div") {
    IntPoly a = IntPoly::from_longs({-2, 0, 1});   // x^2 - 2
    IntPoly b = IntPoly::from_longs({0, 2});       // 2x
    IntPoly r = pseudo_rem(a, b);
    CHECK(r.degree() == 0);

    IntPoly p = from_roots({1, 2});
    IntPoly g = poly_gcd(p * IntPoly::from_longs({-1, 1}), p);
    CHECK(g == p.primitive());

    CHECK(exact_div(p * b, b) == p);
    CHECK_THROWS_AS(exact_div(IntPoly::from_longs({1, 1}), IntPoly::from_longs({0, 2})),
                    std::invalid_argument);
}
