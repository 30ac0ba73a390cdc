#include "phaselab/examples.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "phaselab/falsify.hpp"
#include "phaselab/poly.hpp"

namespace phaselab {
namespace {

Vec<Rational> ones(std::size_t d) {
    Vec<Rational> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = Rational(1);
    return x;
}

template <class S>
bool run_named_check(const ExampleBundle<S>& b, const std::string& name);

template <>
bool run_named_check(const ExampleBundle<double>& b, const std::string& name) {
    if (name == "is_frame") return is_frame(*b.frame);
    if (name == "full_spark") return full_spark(*b.frame).full_spark;
    if (name == "does_phase_retrieval") return does_phase_retrieval(*b.frame).holds;
    if (name == "perps_fail_edidin_at_ones") {
        auto arr = arrangement_from_perps(*b.frame);
        Vec<double> x(b.frame->dim());
        for (std::size_t i = 0; i < x.dim(); ++i) x[i] = 1.0;
        return !edidin_verify_witness(arr, x).spans;
    }
    throw std::invalid_argument("unknown example check: " + name);
}

template <>
bool run_named_check(const ExampleBundle<Rational>& b, const std::string& name) {
    if (name == "is_frame") return is_frame(*b.frame);
    if (name == "full_spark") return full_spark(*b.frame).full_spark;
    if (name == "does_phase_retrieval") return does_phase_retrieval(*b.frame).holds;
    if (name == "set_a_identity") {
        const std::size_t d = b.frame->dim();
        for (const auto& phi : b.frame->vectors()) {
            Rational head_sum(0), head_sq(0);
            for (std::size_t i = 0; i + 1 < d; ++i) {
                head_sum += phi[i];
                head_sq += phi[i] * phi[i];
            }
            if (phi[d - 1] * head_sum != head_sq) return false;
        }
        return true;
    }
    if (name == "perps_fail_edidin_at_ones") {
        auto arr = arrangement_from_perps(*b.frame);
        return !edidin_verify_witness(arr, ones(b.frame->dim())).spans;
    }
    if (name == "perps_last_coord_zero_at_ones") {
        auto arr = arrangement_from_perps(*b.frame);
        const std::size_t d = b.frame->dim();
        Vec<Rational> x = ones(d);
        for (const auto& w : arr.subs)
            if (sgn((w.projector() * x)[d - 1]) != 0) return false;
        return true;
    }
    if (name == "edidin_no_witness_numeric")
        return !edidin_numeric_falsify(*b.arrangement, 200, 7).witness_found;
    if (name == "edidin_no_witness_numeric_500")
        return !edidin_numeric_falsify(*b.arrangement, 500, 7).witness_found;
    if (name == "perp_normals_fail_cp") {
        std::vector<Vec<Rational>> normals;
        for (const auto& w : b.arrangement->subs) normals.push_back(perp(w).basis().col(0));
        Frame<Rational> f(b.arrangement->d, normals);
        return !complement_property(f).holds;
    }
    if (name == "subspace_dims_are_dminus1") {
        for (const auto& w : b.arrangement->subs)
            if (w.subspace_dim() != b.arrangement->d - 1) return false;
        return true;
    }
    if (name == "sturm_f0_no_real_roots")
        return count_real_roots(specialize_x34(f0_dataset())) == 0;
    if (name == "zprobe_no_exact_member")
        return z_random_probe(*b.arrangement, 1000, 7).exact_members == 0;
    throw std::invalid_argument("unknown example check: " + name);
}

template <class S>
std::vector<PropertyOutcome> evaluate_impl(const ExampleBundle<S>& b) {
    std::vector<PropertyOutcome> out;
    for (const auto& e : b.expected)
        out.push_back({e.name, e.expected, run_named_check(b, e.name)});
    return out;
}

}  // namespace

ExampleBundle<double> gen_r3_quintet() {
    const double s2 = std::sqrt(2.0);
    std::vector<Vec<double>> vecs = {
        Vec<double>{0, 0, 1}, Vec<double>{1, 0, 1},      Vec<double>{0, 1, 1},
        Vec<double>{1, 1 - s2, 2}, Vec<double>{1, 1, 1},
    };
    ExampleBundle<double> b;
    b.name = "r3-quintet";
    b.frame = Frame<double>(3, std::move(vecs));
    b.expected = {{"is_frame", true},
                  {"full_spark", true},
                  {"does_phase_retrieval", true},
                  {"perps_fail_edidin_at_ones", true}};
    return b;
}

ExampleBundle<Rational> gen_rd_family(std::size_t d, std::vector<Rational> xs) {
    if (d < 3) throw std::invalid_argument("gen_rd_family: d >= 3 required");
    if (xs.empty())
        for (std::size_t k = 2; k <= d; ++k) xs.push_back(Rational(static_cast<long>(k)));
    if (xs.size() != d - 1) throw std::invalid_argument("gen_rd_family: needs d-1 points");

    auto b_vector = [d](const Rational& x) {
        // (x, x^2, ..., x^{d-2}, 1 - sum x^i, sum x^{2i} + (1 - sum x^i)^2)
        Vec<Rational> v(d);
        Rational power(1), sum(0), sum_sq(0);
        for (std::size_t i = 0; i + 2 < d; ++i) {
            power *= x;
            v[i] = power;
            sum += power;
            sum_sq += power * power;
        }
        v[d - 2] = Rational(1) - sum;
        v[d - 1] = sum_sq + v[d - 2] * v[d - 2];
        return v;
    };

    std::vector<Vec<Rational>> base;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        Vec<Rational> phi(d);
        phi[i] = Rational(1);
        phi[d - 1] = Rational(1);
        base.push_back(phi);
    }
    base.push_back(ones(d));

    // Replace generator points that break distinctness, the nonzero-sum
    // precondition, or full spark; retries walk upward from the default range.
    long next_candidate = static_cast<long>(d) + 1;
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::set<std::string> seen;
        bool distinct = true;
        for (const auto& x : xs) distinct = distinct && seen.insert(rational_str(x)).second;
        std::vector<Vec<Rational>> vecs = base;
        bool valid = distinct;
        for (const auto& x : xs) {
            if (sgn(x) == 0) valid = false;
            if (valid) vecs.push_back(b_vector(x));
        }
        if (valid) {
            // Every vector must satisfy the defining identity and a nonzero
            // head sum (base vectors do by construction).
            for (const auto& phi : vecs) {
                Rational head_sum(0), head_sq(0);
                for (std::size_t i = 0; i + 1 < d; ++i) {
                    head_sum += phi[i];
                    head_sq += phi[i] * phi[i];
                }
                if (sgn(head_sum) == 0 || phi[d - 1] * head_sum != head_sq) valid = false;
            }
        }
        if (valid) {
            Frame<Rational> f(d, vecs);
            auto spark = full_spark(f);
            if (spark.full_spark) {
                ExampleBundle<Rational> bundle;
                bundle.name = "rd-family";
                bundle.frame = std::move(f);
                bundle.xs_used = xs;
                bundle.expected = {{"is_frame", true},
                                   {"full_spark", true},
                                   {"set_a_identity", true},
                                   {"does_phase_retrieval", true},
                                   {"perps_last_coord_zero_at_ones", true},
                                   {"perps_fail_edidin_at_ones", true}};
                return bundle;
            }
            // Replace the last point involved in the dependent subset.
            const auto& dep = *spark.dependent_subset;
            std::size_t bad = dep.back();
            std::size_t which = bad >= d ? bad - d : xs.size() - 1;
            xs[which] = Rational(next_candidate++);
            continue;
        }
        // Distinctness or precondition failure: bump the last point.
        xs.back() = Rational(next_candidate++);
    }
    throw std::runtime_error("gen_rd_family: could not reach a full spark instance");
}

ExampleBundle<Rational> gen_r3_hyperplane_quintet() {
    auto span2 = [](Vec<Rational> u, Vec<Rational> v) {
        return Subspace<Rational>::from_basis(Mat<Rational>::from_columns({u, v}));
    };
    Vec<Rational> e1{Rational(1), Rational(0), Rational(0)};
    Vec<Rational> e2{Rational(0), Rational(1), Rational(0)};
    Vec<Rational> e3{Rational(0), Rational(0), Rational(1)};
    Vec<Rational> e12 = e1 + e2, e23 = e2 + e3, e13 = e1 + e3;
    std::vector<Subspace<Rational>> subs = {span2(e2, e3), span2(e1, e3), span2(e12, e3),
                                            span2(e1, e23), span2(e2, e13)};
    ExampleBundle<Rational> b;
    b.name = "r3-hyperplanes";
    b.arrangement = Arrangement<Rational>(3, std::move(subs));
    b.expected = {{"subspace_dims_are_dminus1", true},
                  {"edidin_no_witness_numeric", true},
                  {"perp_normals_fail_cp", true}};
    return b;
}

ExampleBundle<Rational> gen_r4_six_hyperplanes() {
    auto hyper = [](long a, long b, long c, long d) {
        return Subspace<Rational>::hyperplane(
            Vec<Rational>{Rational(a), Rational(b), Rational(c), Rational(d)});
    };
    std::vector<Subspace<Rational>> subs = {hyper(2, -1, 2, 2), hyper(2, 5, 4, 1),
                                            hyper(0, 4, -1, -1), hyper(5, 4, -2, -4),
                                            hyper(4, 1, 5, 3),  hyper(3, -4, -4, -3)};
    ExampleBundle<Rational> b;
    b.name = "r4-six";
    b.arrangement = Arrangement<Rational>(4, std::move(subs));
    b.expected = {{"subspace_dims_are_dminus1", true},
                  {"edidin_no_witness_numeric_500", true},
                  {"sturm_f0_no_real_roots", true},
                  {"zprobe_no_exact_member", true}};
    return b;
}

std::vector<PropertyOutcome> evaluate_bundle(const ExampleBundle<double>& b) {
    return evaluate_impl(b);
}
std::vector<PropertyOutcome> evaluate_bundle(const ExampleBundle<Rational>& b) {
    return evaluate_impl(b);
}

}  // namespace phaselab
