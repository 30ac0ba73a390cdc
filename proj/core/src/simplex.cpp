#include "phaselab/simplex.hpp"

#include <cstddef>

namespace phaselab {

std::optional<std::vector<Rational>> feasible_nonneg(const Mat<Rational>& a,
                                                     const Vec<Rational>& b) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.dim() != m) throw std::invalid_argument("feasible_nonneg: shape mismatch");

    // Tableau [A | I | rhs] with rhs >= 0; artificial columns n..n+m-1 form
    // the starting basis. Minimize the sum of artificials.
    Mat<Rational> t(m, n + m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = sgn(b[i]) < 0;
        for (std::size_t j = 0; j < n; ++j) t(i, j) = flip ? -a(i, j) : a(i, j);
        t(i, n + i) = Rational(1);
        t(i, n + m) = flip ? -b[i] : b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    auto cost = [n](std::size_t j) { return j >= n ? Rational(1) : Rational(0); };

    for (;;) {
        // Reduced costs r_j = c_j - sum_i c_basis[i] * t(i, j); Bland picks the
        // smallest j with r_j < 0.
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m && enter == n + m; ++j) {
            Rational r = cost(j);
            for (std::size_t i = 0; i < m; ++i)
                if (basis[i] >= n) r -= t(i, j);
            if (sgn(r) < 0) enter = j;
        }
        if (enter == n + m) break;  // optimal

        // Min-ratio leaving row, ties broken by smallest basis index (Bland).
        std::size_t leave = m;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (sgn(t(i, enter)) <= 0) continue;
            Rational ratio = t(i, n + m) / t(i, enter);
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) break;  // unbounded column cannot happen in phase 1

        const Rational piv = t(leave, enter);
        for (std::size_t j = 0; j <= n + m; ++j) t(leave, j) /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            Rational f = t(i, enter);
            if (sgn(f) == 0) continue;
            for (std::size_t j = 0; j <= n + m; ++j) t(i, j) -= f * t(leave, j);
        }
        basis[leave] = enter;
    }

    Rational objective(0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) objective += t(i, n + m);
    if (sgn(objective) != 0) return std::nullopt;

    std::vector<Rational> x(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t(i, n + m);
    return x;
}

}  // namespace phaselab
