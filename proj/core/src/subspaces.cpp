#include "phaselab/subspaces.hpp"

#include "phaselab/simplex.hpp"

namespace phaselab {

std::optional<std::vector<Rational>> fusion_scalability(const Arrangement<Rational>& arr) {
    const std::size_t d = arr.d, n = arr.size();
    const std::size_t m = d * (d + 1) / 2;
    Mat<Rational> a(m, n);
    Vec<Rational> b(m);
    std::size_t row = 0;
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p; q < d; ++q, ++row) {
            for (std::size_t i = 0; i < n; ++i) a(row, i) = arr.subs[i].projector()(p, q);
            b[row] = Rational(p == q ? 1 : 0);
        }
    return feasible_nonneg(a, b);
}

ZMember z_membership(const Arrangement<Rational>& arr, const Mat<Rational>& q) {
    if (!q.is_symmetric(0)) throw std::invalid_argument("z_membership: Q must be symmetric");
    if (q.rows() != arr.d) throw std::invalid_argument("z_membership: dimension mismatch");
    if (!arr.all_hyperplanes())
        throw std::invalid_argument("z_membership: hyperplanes only");

    Rational trace(0);
    for (std::size_t i = 0; i < q.rows(); ++i) trace += q(i, i);

    ZMember res;
    bool all_zero = true;
    for (const auto& w : arr.subs) {
        const Vec<Rational>& phi = *w.normal();
        Rational quad = dot(phi, q * phi) / norm_sq(phi);
        Rational l = trace - quad;
        if (sgn(l) != 0) all_zero = false;
        res.residuals.push_back(std::move(l));
    }
    res.rank = rank(q);
    res.member = all_zero && res.rank <= 2;
    return res;
}

}  // namespace phaselab
