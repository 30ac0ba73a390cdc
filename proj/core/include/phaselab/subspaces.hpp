#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "phaselab/frames.hpp"
#include "phaselab/linalg.hpp"
#include "phaselab/scalar.hpp"

namespace phaselab {

// Proper nonzero subspace of R^d, held either as an independent-column basis
// matrix or as a hyperplane normal. Basis subspaces cache their projector at
// construction; hyperplanes build it lazily from the normal.
template <class S>
class Subspace {
public:
    static Subspace from_basis(Mat<S> basis, double eps = kDefaultEps) {
        if (basis.rows() == 0 || basis.cols() == 0)
            throw std::invalid_argument("Subspace: empty basis");
        if (basis.cols() >= basis.rows())
            throw std::invalid_argument("Subspace: must be a proper subspace");
        Subspace w;
        w.d_ = basis.rows();
        w.proj_ = projector_span(basis, eps);  // validates independence
        w.basis_ = std::move(basis);
        if (w.basis_.cols() == w.d_ - 1) {
            Mat<S> nsp = nullspace(w.basis_.transposed(), eps);
            w.normal_ = nsp.col(0);
        }
        return w;
    }

    static Subspace hyperplane(Vec<S> normal, double eps = kDefaultEps) {
        if (normal.dim() < 2)
            throw std::invalid_argument("Subspace: hyperplane needs dimension >= 2");
        if (normal.is_zero(eps)) throw std::invalid_argument("Subspace: zero normal");
        Subspace w;
        w.d_ = normal.dim();
        w.normal_ = std::move(normal);
        w.eps_ = eps;
        return w;
    }

    std::size_t ambient_dim() const { return d_; }
    std::size_t subspace_dim() const {
        return basis_.cols() > 0 ? basis_.cols() : d_ - 1;
    }
    bool is_hyperplane() const { return subspace_dim() == d_ - 1; }
    const std::optional<Vec<S>>& normal() const { return normal_; }

    const Mat<S>& projector() const {
        if (!proj_) proj_ = projector_hyperplane(*normal_, eps_);
        return *proj_;
    }

    const Mat<S>& basis(double eps = kDefaultEps) const {
        if (basis_.cols() == 0) {
            Mat<S> row(1, d_);
            for (std::size_t j = 0; j < d_; ++j) row(0, j) = (*normal_)[j];
            basis_ = nullspace(row, eps);
        }
        return basis_;
    }

private:
    Subspace() = default;
    std::size_t d_ = 0;
    mutable Mat<S> basis_;
    std::optional<Vec<S>> normal_;
    mutable std::optional<Mat<S>> proj_;
    double eps_ = kDefaultEps;
};

template <class S>
struct Arrangement {
    std::size_t d = 0;
    std::vector<Subspace<S>> subs;

    Arrangement(std::size_t dim, std::vector<Subspace<S>> subspaces)
        : d(dim), subs(std::move(subspaces)) {
        if (subs.empty()) throw std::invalid_argument("Arrangement: needs a subspace");
        for (const auto& w : subs)
            if (w.ambient_dim() != d)
                throw std::invalid_argument("Arrangement: ambient dimension mismatch");
    }

    std::size_t size() const { return subs.size(); }
    bool all_hyperplanes() const {
        for (const auto& w : subs)
            if (!w.is_hyperplane()) return false;
        return true;
    }
};

template <class S>
struct EdidinWitness {
    Vec<S> x;
    std::size_t achieved_rank = 0;
    bool spans = false;  // rank == d
};

template <class S>
Subspace<S> perp(const Subspace<S>& w, double eps = kDefaultEps) {
    Mat<S> nsp = nullspace(w.basis(eps).transposed(), eps);
    return Subspace<S>::from_basis(std::move(nsp), eps);
}

// Hyperplanes phi_i^perp induced by the frame vectors.
template <class S>
Arrangement<S> arrangement_from_perps(const Frame<S>& f, double eps = kDefaultEps) {
    std::vector<Subspace<S>> subs;
    subs.reserve(f.size());
    for (const auto& v : f.vectors()) subs.push_back(Subspace<S>::hyperplane(v, eps));
    return Arrangement<S>(f.dim(), std::move(subs));
}

// Stacks the rows (P_i x)^T and reports their exact rank; rank < d proves the
// arrangement fails phase retrieval (Edidin's criterion).
template <class S>
EdidinWitness<S> edidin_verify_witness(const Arrangement<S>& arr, const Vec<S>& x,
                                       double eps = kDefaultEps) {
    if (x.dim() != arr.d) throw std::invalid_argument("edidin_verify_witness: dim mismatch");
    if (x.is_zero(eps)) throw std::invalid_argument("edidin_verify_witness: zero vector");
    std::vector<Vec<S>> rows;
    rows.reserve(arr.size());
    for (const auto& w : arr.subs) rows.push_back(w.projector() * x);
    std::size_t r = rank(Mat<S>::from_rows(rows), eps);
    return {x, r, r == arr.d};
}

// For n <= 2d-3 hyperplanes, a nonzero x in the intersection of the first
// min(d-1, n) of them is always a deficient witness.
template <class S>
EdidinWitness<S> edidin_small_n_witness(const Arrangement<S>& arr, double eps = kDefaultEps) {
    const std::size_t d = arr.d, n = arr.size();
    if (d < 2 || n + 3 > 2 * d)
        throw std::invalid_argument("edidin_small_n_witness: requires n <= 2d-3");
    if (!arr.all_hyperplanes())
        throw std::invalid_argument("edidin_small_n_witness: hyperplanes only");
    const std::size_t k = std::min(d - 1, n);
    Mat<S> normals(k, d);
    for (std::size_t i = 0; i < k; ++i) {
        const Vec<S>& phi = *arr.subs[i].normal();
        for (std::size_t j = 0; j < d; ++j) normals(i, j) = phi[j];
    }
    Vec<S> x = nullspace(normals, eps).col(0);
    return edidin_verify_witness(arr, x, eps);
}

// For exactly 2d-2 hyperplanes: none when the perp normals are full spark;
// otherwise an exactly verified deficient witness built from a dependent
// d-subset of normals.
template <class S>
std::optional<EdidinWitness<S>> minimal_fullspark_necessity(const Arrangement<S>& arr,
                                                            double eps = kDefaultEps) {
    const std::size_t d = arr.d, n = arr.size();
    if (n != 2 * d - 2)
        throw std::invalid_argument("minimal_fullspark_necessity: requires n = 2d-2");
    if (!arr.all_hyperplanes())
        throw std::invalid_argument("minimal_fullspark_necessity: hyperplanes only");
    std::vector<Vec<S>> normals;
    normals.reserve(n);
    for (const auto& w : arr.subs) normals.push_back(*w.normal());
    auto spark = full_spark(Frame<S>(d, normals, eps), eps);
    if (spark.full_spark) return std::nullopt;
    const auto& idx = *spark.dependent_subset;
    Mat<S> stacked(idx.size(), d);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < d; ++j) stacked(i, j) = normals[idx[i]][j];
    Vec<S> x = nullspace(stacked, eps).col(0);
    return edidin_verify_witness(arr, x, eps);
}

// Checks sum a_i^2 P_i = A*I; on success also verifies the complementary
// identity sum a_i^2 (I-P_i) = (sum a_i^2 - A)*I with a positive constant.
template <class S>
std::optional<S> weighted_tight_check(const Arrangement<S>& arr, const std::vector<S>& a,
                                      double eps = kDefaultEps) {
    if (a.size() != arr.size())
        throw std::invalid_argument("weighted_tight_check: weight count mismatch");
    const std::size_t d = arr.d;
    Mat<S> total(d, d);
    S weight_sq(0);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        total = total + (a[i] * a[i]) * arr.subs[i].projector();
        weight_sq += a[i] * a[i];
    }
    S cand = total(0, 0);
    if (!(total - cand * Mat<S>::identity(d)).is_zero(eps)) return std::nullopt;
    S comp = weight_sq - cand;
    if (backend_traits<S>::to_double(comp) <= 0 ||
        backend_traits<S>::is_zero(comp, eps))
        return std::nullopt;  // only possible for all-zero weights
    return cand;
}

// Exact LP feasibility for sum c_i P_i = I with c >= 0. A certificate implies
// (via the weighted-tightness identity) that the arrangement and its perps
// both do norm retrieval.
std::optional<std::vector<Rational>> fusion_scalability(const Arrangement<Rational>& arr);

struct ZMember {
    std::vector<Rational> residuals;  // l_j = Tr(Q) - phi_j^T Q phi_j / ||phi_j||^2
    std::size_t rank = 0;
    bool member = false;  // all l_j = 0 and rank <= 2
};

// Membership in the rank-<=2 trace-annihilator variety of a hyperplane
// arrangement; exact for rational normals (no unit normalization needed).
ZMember z_membership(const Arrangement<Rational>& arr, const Mat<Rational>& q);

struct ZProbeReport {
    std::uint64_t seed = 0;
    int trials = 0;
    int near_members = 0;        // numeric candidates surviving both projections
    double min_near_residual = 0;  // smallest combined residual seen over all trials
    int exact_members = 0;       // candidates that re-verified exactly after rounding
};

// Randomized search for nonzero members of Z: samples Q = xx^T - yy^T,
// alternates projection onto the trace constraints and the rank-<=2 cone, and
// tries exact re-verification of numeric near-members via rational rounding.
ZProbeReport z_random_probe(const Arrangement<Rational>& arr, int trials, std::uint64_t seed);

}  // namespace phaselab
