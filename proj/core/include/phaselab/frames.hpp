#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "phaselab/linalg.hpp"
#include "phaselab/scalar.hpp"

namespace phaselab {

// Ordered list of n nonzero vectors in R^d. Duplicates are allowed; zero
// vectors are rejected at construction.
template <class S>
class Frame {
public:
    Frame(std::size_t dim, std::vector<Vec<S>> vectors, double eps = kDefaultEps)
        : d_(dim), vecs_(std::move(vectors)) {
        if (d_ == 0) throw std::invalid_argument("Frame: dimension must be positive");
        if (vecs_.empty()) throw std::invalid_argument("Frame: needs at least one vector");
        for (const auto& v : vecs_) {
            if (v.dim() != d_) throw std::invalid_argument("Frame: vector dimension mismatch");
            if (v.is_zero(eps)) throw std::invalid_argument("Frame: zero vector");
        }
    }

    std::size_t dim() const { return d_; }
    std::size_t size() const { return vecs_.size(); }
    const Vec<S>& operator[](std::size_t i) const { return vecs_[i]; }
    const std::vector<Vec<S>>& vectors() const { return vecs_; }

    // d x n synthesis matrix (vectors as columns).
    Mat<S> synthesis() const { return Mat<S>::from_columns(vecs_); }

private:
    std::size_t d_;
    std::vector<Vec<S>> vecs_;
};

struct CPReport {
    bool holds = false;
    // Lexicographically smallest failing subset (0-based) when !holds and a
    // witness exists; empty optional when failure is by vector count alone.
    std::optional<std::vector<std::size_t>> witness;
};

template <class S>
struct FullSparkReport {
    bool full_spark = false;
    // Lexicographically first dependent d-subset (0-based) on failure.
    std::optional<std::vector<std::size_t>> dependent_subset;
};

struct ScalabilityCertificate {
    std::vector<Rational> weights;  // c_i >= 0, not all zero
    Rational target;                // sum c_i phi_i phi_i^T = target * I
};

inline constexpr std::size_t kComplementPropertyGuard = 30;

template <class S>
bool is_frame(const Frame<S>& f, double eps = kDefaultEps) {
    return rank(f.synthesis(), eps) == f.dim();
}

template <class S>
Mat<S> frame_operator(const Frame<S>& f) {
    Mat<S> s(f.dim(), f.dim());
    for (const auto& v : f.vectors()) s = s + Mat<S>::outer(v, v);
    return s;
}

// Returns the tight constant A = (sum ||phi_i||^2) / d when S = A*I, else none.
template <class S>
std::optional<S> is_tight(const Frame<S>& f, double eps = kDefaultEps) {
    Mat<S> s = frame_operator(f);
    S total(0);
    for (const auto& v : f.vectors()) total += norm_sq(v);
    S a = total / S(static_cast<long>(f.dim()));
    if ((s - a * Mat<S>::identity(f.dim())).is_zero(eps)) return a;
    return std::nullopt;
}

namespace detail {

template <class S>
bool subset_spans(const Frame<S>& f, const std::vector<std::size_t>& idx, double eps) {
    if (idx.size() < f.dim()) return false;  // too few vectors to span
    std::vector<Vec<S>> rows;
    rows.reserve(idx.size());
    for (std::size_t i : idx) rows.push_back(f[i]);
    return rank(Mat<S>::from_rows(rows), eps) == f.dim();
}

// Visits size-k index combinations of {0..n-1} in lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& visit) {
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    for (;;) {
        if (!visit(c)) return;
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace detail

// True iff every d-subset is linearly independent; on failure reports the
// lexicographically first dependent d-subset.
template <class S>
FullSparkReport<S> full_spark(const Frame<S>& f, double eps = kDefaultEps) {
    const std::size_t d = f.dim(), n = f.size();
    if (n < d) throw std::invalid_argument("full_spark: fewer vectors than dimension");
    FullSparkReport<S> rep{true, std::nullopt};
    detail::for_each_combination(n, d, [&](const std::vector<std::size_t>& idx) {
        std::vector<Vec<S>> rows;
        for (std::size_t i : idx) rows.push_back(f[i]);
        if (backend_traits<S>::is_zero(det(Mat<S>::from_rows(rows), eps), eps)) {
            rep.full_spark = false;
            rep.dependent_subset = idx;
            return false;
        }
        return true;
    });
    return rep;
}

// Complement property: for every subset I, {phi_i}_{i in I} or its complement
// spans R^d. Complementary pairs are enumerated once (subsets containing
// index 0); the reported witness is the lexicographically smallest failing
// subset, which always contains index 0.
template <class S>
CPReport complement_property(const Frame<S>& f, double eps = kDefaultEps,
                             bool override_guard = false) {
    const std::size_t n = f.size();
    if (n > kComplementPropertyGuard && !override_guard)
        throw GuardExceeded("complement_property: n > 30 (use the override to force)");

    std::optional<std::vector<std::size_t>> best;
    const std::uint64_t masks = std::uint64_t(1) << (n - 1);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        std::vector<std::size_t> in{0}, out;
        for (std::size_t i = 1; i < n; ++i)
            (mask >> (i - 1)) & 1 ? in.push_back(i) : out.push_back(i);
        if (detail::subset_spans(f, in, eps)) continue;
        if (detail::subset_spans(f, out, eps)) continue;
        if (!best || std::lexicographical_compare(in.begin(), in.end(), best->begin(),
                                                  best->end()))
            best = in;
    }
    if (best) return {false, best};
    return {true, std::nullopt};
}

// Real phase retrieval <=> complement property; short-circuits to false when
// the necessary vector count n >= 2d-1 is violated.
template <class S>
CPReport does_phase_retrieval(const Frame<S>& f, double eps = kDefaultEps,
                              bool override_guard = false) {
    if (f.size() < 2 * f.dim() - 1) return {false, std::nullopt};
    return complement_property(f, eps, override_guard);
}

template <class S>
Frame<S> rescale(const Frame<S>& f, const std::vector<S>& c, double eps = kDefaultEps) {
    if (c.size() != f.size()) throw std::invalid_argument("rescale: weight count mismatch");
    std::vector<Vec<S>> scaled;
    scaled.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (backend_traits<S>::is_zero(c[i], eps))
            throw std::invalid_argument("rescale: zero scale factor");
        scaled.push_back(c[i] * f[i]);
    }
    return Frame<S>(f.dim(), std::move(scaled), eps);
}

// Exact scalability: existence of c_i >= 0, not all zero, with
// sum c_i phi_i phi_i^T = I (the tight constant is normalized to 1).
std::optional<ScalabilityCertificate> scalability(const Frame<Rational>& f);

}  // namespace phaselab
