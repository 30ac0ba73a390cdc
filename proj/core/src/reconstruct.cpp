#include "phaselab/reconstruct.hpp"

#include <algorithm>
#include <random>

namespace phaselab {
namespace {

// Canonical representative of the class {x, -x}: first nonzero entry positive.
Vec<Rational> canonical_sign(Vec<Rational> x) {
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (sgn(x[i]) == 0) continue;
        if (sgn(x[i]) < 0)
            for (std::size_t j = i; j < x.dim(); ++j) x[j] = -x[j];
        break;
    }
    return x;
}

bool vec_less(const Vec<Rational>& a, const Vec<Rational>& b) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

}  // namespace

MeasurementSet measure(const Frame<Rational>& f, const Vec<Rational>& x) {
    if (x.dim() != f.dim()) throw std::invalid_argument("measure: dimension mismatch");
    MeasurementSet m;
    m.magnitudes.reserve(f.size());
    for (const auto& phi : f.vectors()) m.magnitudes.push_back(abs(dot(x, phi)));
    return m;
}

std::vector<Vec<Rational>> reconstruct_brute(const Frame<Rational>& f,
                                             const MeasurementSet& b) {
    const std::size_t n = f.size();
    if (b.magnitudes.size() != n)
        throw std::invalid_argument("reconstruct_brute: measurement count mismatch");
    if (n > kReconstructGuard)
        throw GuardExceeded("reconstruct_brute: n > 24 sign patterns");

    // Zero magnitudes pin <x, phi_i> = 0 regardless of sign; only the other
    // indices get enumerated signs, the first of them fixed to +1.
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < n; ++i)
        if (sgn(b.magnitudes[i]) != 0) free_idx.push_back(i);

    std::vector<Vec<Rational>> classes;
    auto add_class = [&](Vec<Rational> x) {
        x = canonical_sign(std::move(x));
        for (const auto& c : classes)
            if (c == x) return;
        classes.push_back(std::move(x));
    };

    const std::size_t enumerated = free_idx.empty() ? 0 : free_idx.size() - 1;
    const std::uint64_t patterns = std::uint64_t(1) << enumerated;
    Mat<Rational> lhs = Mat<Rational>::from_rows(f.vectors());
    Mat<Rational> null = nullspace(lhs);
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        Vec<Rational> rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = b.magnitudes[i];
        for (std::size_t k = 1; k < free_idx.size(); ++k)
            if ((mask >> (k - 1)) & 1) rhs[free_idx[k]] = -rhs[free_idx[k]];
        auto x = solve(lhs, rhs);
        if (!x) continue;
        // Exact consistency is guaranteed by solve(); underdetermined systems
        // contribute a second representative to surface the ambiguity.
        add_class(*x);
        if (null.cols() > 0) add_class(*x + null.col(0));
    }
    std::sort(classes.begin(), classes.end(), vec_less);
    return classes;
}

bool pr_empirical(const Frame<Rational>& f, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        Vec<Rational> x(f.dim());
        bool nonzero = false;
        for (std::size_t i = 0; i < f.dim(); ++i) {
            long v = static_cast<long>(rng() % 41) - 20;
            x[i] = Rational(v);
            nonzero = nonzero || v != 0;
        }
        if (!nonzero) {
            --t;
            continue;
        }
        auto classes = reconstruct_brute(f, measure(f, x));
        if (classes.size() != 1) return false;
    }
    return true;
}

std::pair<Vec<Rational>, Vec<Rational>> cp_ambiguity_pair(
    const Frame<Rational>& f, const std::vector<std::size_t>& witness) {
    std::vector<Vec<Rational>> in_rows, out_rows;
    std::vector<bool> in_set(f.size(), false);
    for (std::size_t i : witness) in_set[i] = true;
    for (std::size_t i = 0; i < f.size(); ++i)
        (in_set[i] ? in_rows : out_rows).push_back(f[i]);

    Mat<Rational> null_in = nullspace(Mat<Rational>::from_rows(in_rows));
    Mat<Rational> null_out = nullspace(Mat<Rational>::from_rows(out_rows));
    if (null_in.cols() == 0 || null_out.cols() == 0)
        throw std::invalid_argument("cp_ambiguity_pair: subset is not a CP failure witness");
    Vec<Rational> u = null_in.col(0), v = null_out.col(0);
    return {u + v, u - v};
}

}  // namespace phaselab
