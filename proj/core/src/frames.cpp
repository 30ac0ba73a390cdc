#include "phaselab/frames.hpp"

#include "phaselab/simplex.hpp"

namespace phaselab {

std::optional<ScalabilityCertificate> scalability(const Frame<Rational>& f) {
    if (!is_frame(f)) throw std::invalid_argument("scalability: input is not a frame");
    const std::size_t d = f.dim(), n = f.size();

    // Linearize sum c_i phi_i phi_i^T = I over the upper triangle.
    const std::size_t m = d * (d + 1) / 2;
    Mat<Rational> a(m, n);
    Vec<Rational> b(m);
    std::size_t row = 0;
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p; q < d; ++q, ++row) {
            for (std::size_t i = 0; i < n; ++i) a(row, i) = f[i][p] * f[i][q];
            b[row] = Rational(p == q ? 1 : 0);
        }

    auto c = feasible_nonneg(a, b);
    if (!c) return std::nullopt;
    return ScalabilityCertificate{std::move(*c), Rational(1)};
}

}  // namespace phaselab
