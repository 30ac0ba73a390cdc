#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "phaselab/scalar.hpp"

namespace phaselab {

template <class S>
class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t dim) : e_(dim, S(0)) {}
    Vec(std::initializer_list<S> init) : e_(init) {}
    explicit Vec(std::vector<S> entries) : e_(std::move(entries)) {}

    std::size_t dim() const { return e_.size(); }
    S& operator[](std::size_t i) { return e_[i]; }
    const S& operator[](std::size_t i) const { return e_[i]; }
    const std::vector<S>& entries() const { return e_; }

    bool is_zero(double eps = kDefaultEps) const {
        for (const S& x : e_)
            if (!backend_traits<S>::is_zero(x, eps)) return false;
        return true;
    }

    friend Vec operator+(const Vec& a, const Vec& b) {
        Vec r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
        return r;
    }
    friend Vec operator-(const Vec& a, const Vec& b) {
        Vec r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
        return r;
    }
    friend Vec operator*(const S& c, const Vec& a) {
        Vec r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r[i] = c * a[i];
        return r;
    }
    friend bool operator==(const Vec& a, const Vec& b) { return a.e_ == b.e_; }

private:
    std::vector<S> e_;
};

template <class S>
S dot(const Vec<S>& a, const Vec<S>& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dot: dimension mismatch");
    S s(0);
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

template <class S>
S norm_sq(const Vec<S>& a) {
    return dot(a, a);
}

template <class S>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, S(0)) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<S> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows_ * cols_) throw std::invalid_argument("Mat: entry count mismatch");
    }
    Mat(std::initializer_list<std::initializer_list<S>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        e_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("Mat: ragged rows");
            for (const S& x : row) e_.push_back(x);
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }
    static Mat from_columns(const std::vector<Vec<S>>& cols) {
        if (cols.empty()) return Mat(0, 0);
        Mat m(cols[0].dim(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].dim() != m.rows()) throw std::invalid_argument("from_columns: ragged");
            for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
        }
        return m;
    }
    static Mat from_rows(const std::vector<Vec<S>>& rows) {
        if (rows.empty()) return Mat(0, 0);
        Mat m(rows.size(), rows[0].dim());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].dim() != m.cols()) throw std::invalid_argument("from_rows: ragged");
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Mat outer(const Vec<S>& a, const Vec<S>& b) {
        Mat m(a.dim(), b.dim());
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < b.dim(); ++j) m(i, j) = a[i] * b[j];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    S& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Vec<S> row(std::size_t i) const {
        Vec<S> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    Vec<S> col(std::size_t j) const {
        Vec<S> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    bool is_zero(double eps = kDefaultEps) const {
        for (const S& x : e_)
            if (!backend_traits<S>::is_zero(x, eps)) return false;
        return true;
    }
    bool is_symmetric(double eps = kDefaultEps) const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!backend_traits<S>::is_zero((*this)(i, j) - (*this)(j, i), eps)) return false;
        return true;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend Mat operator*(const S& c, const Mat& a) {
        Mat r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = c * a.e_[i];
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Mat*: shape mismatch");
        Mat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& aik = a(i, k);
                if (backend_traits<S>::exact && backend_traits<S>::is_zero(aik, 0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend Vec<S> operator*(const Mat& a, const Vec<S>& x) {
        if (a.cols_ != x.dim()) throw std::invalid_argument("Mat*Vec: shape mismatch");
        Vec<S> r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            S s(0);
            for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
            r[i] = s;
        }
        return r;
    }
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<S> e_;
};

namespace detail {

// Pivot row at/below `start` in column `col`: first nonzero for the exact
// backend, largest magnitude for the float backend. Returns rows() if none.
template <class S>
std::size_t pick_pivot(const Mat<S>& m, std::size_t start, std::size_t col, double eps) {
    if constexpr (backend_traits<S>::exact) {
        for (std::size_t i = start; i < m.rows(); ++i)
            if (!backend_traits<S>::is_zero(m(i, col), eps)) return i;
        return m.rows();
    } else {
        std::size_t best = m.rows();
        double best_abs = eps;
        for (std::size_t i = start; i < m.rows(); ++i) {
            double a = std::fabs(backend_traits<S>::to_double(m(i, col)));
            if (a > best_abs) {
                best_abs = a;
                best = i;
            }
        }
        return best;
    }
}

}  // namespace detail

// Reduced row echelon form with the list of pivot columns.
template <class S>
struct RrefResult {
    Mat<S> r;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

template <class S>
RrefResult<S> rref(Mat<S> m, double eps = kDefaultEps) {
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < m.cols() && prow < m.rows(); ++col) {
        std::size_t p = detail::pick_pivot(m, prow, col, eps);
        if (p == m.rows()) continue;
        if (p != prow) m.swap_rows(p, prow);
        S inv_piv = S(1) / m(prow, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(prow, j) = inv_piv * m(prow, j);
        m(prow, col) = S(1);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == prow) continue;
            S f = m(i, col);
            if (backend_traits<S>::is_zero(f, eps)) {
                m(i, col) = S(0);
                continue;
            }
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(prow, j);
            m(i, col) = S(0);
        }
        pivots.push_back(col);
        ++prow;
    }
    return {std::move(m), std::move(pivots)};
}

// Rank via fraction-free (Bareiss) elimination on the exact backend,
// Gaussian elimination with magnitude pivoting on the float backend.
template <class S>
std::size_t rank(Mat<S> m, double eps = kDefaultEps) {
    if constexpr (backend_traits<S>::exact) {
        std::size_t rk = 0;
        S prev(1);
        for (std::size_t col = 0; col < m.cols() && rk < m.rows(); ++col) {
            std::size_t p = detail::pick_pivot(m, rk, col, eps);
            if (p == m.rows()) continue;
            if (p != rk) m.swap_rows(p, rk);
            const S piv = m(rk, col);
            for (std::size_t i = rk + 1; i < m.rows(); ++i) {
                for (std::size_t j = col + 1; j < m.cols(); ++j)
                    m(i, j) = (m(i, j) * piv - m(i, col) * m(rk, j)) / prev;
                m(i, col) = S(0);
            }
            prev = piv;
            ++rk;
        }
        return rk;
    } else {
        return rref(std::move(m), eps).rank();
    }
}

template <class S>
S det(Mat<S> m, double eps = kDefaultEps) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return S(1);
    int sign = 1;
    if constexpr (backend_traits<S>::exact) {
        // Bareiss: after full elimination, the last pivot is det.
        S prev(1);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = detail::pick_pivot(m, k, k, eps);
            if (p == m.rows()) return S(0);
            if (p != k) {
                m.swap_rows(p, k);
                sign = -sign;
            }
            const S piv = m(k, k);
            for (std::size_t i = k + 1; i < n; ++i) {
                for (std::size_t j = k + 1; j < n; ++j)
                    m(i, j) = (m(i, j) * piv - m(i, k) * m(k, j)) / prev;
                m(i, k) = S(0);
            }
            prev = piv;
        }
        return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
    } else {
        S d(1);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = detail::pick_pivot(m, k, k, eps);
            if (p == m.rows()) return S(0);
            if (p != k) {
                m.swap_rows(p, k);
                sign = -sign;
            }
            const S piv = m(k, k);
            d *= piv;
            for (std::size_t i = k + 1; i < n; ++i) {
                S f = m(i, k) / piv;
                for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
            }
        }
        return sign > 0 ? d : -d;
    }
}

// Columns form the canonical RREF free-variable basis of ker(M).
template <class S>
Mat<S> nullspace(const Mat<S>& m, double eps = kDefaultEps) {
    auto rr = rref(m, eps);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    Mat<S> basis(m.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t f = free_cols[k];
        basis(f, k) = S(1);
        for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
            basis(rr.pivot_cols[r], k) = -rr.r(r, f);
    }
    return basis;
}

// One solution of M x = b if consistent (free variables set to zero).
template <class S>
std::optional<Vec<S>> solve(const Mat<S>& m, const Vec<S>& b, double eps = kDefaultEps) {
    if (m.rows() != b.dim()) throw std::invalid_argument("solve: rows(M) != dim(b)");
    Mat<S> aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto rr = rref(std::move(aug), eps);
    if (!rr.pivot_cols.empty() && rr.pivot_cols.back() == m.cols()) return std::nullopt;
    Vec<S> x(m.cols());
    for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r) x[rr.pivot_cols[r]] = rr.r(r, m.cols());
    return x;
}

// Exact inverse via Gauss-Jordan; throws if singular.
template <class S>
Mat<S> inverse(const Mat<S>& m, double eps = kDefaultEps) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    Mat<S> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = S(1);
    }
    auto rr = rref(std::move(aug), eps);
    if (rr.rank() < n || rr.pivot_cols[n - 1] != n - 1)
        throw std::invalid_argument("inverse: singular matrix");
    Mat<S> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.r(i, n + j);
    return inv;
}

// Orthogonal projector onto the column span of B: P = B (B^T B)^{-1} B^T.
// Stays rational for rational input (no orthonormalization).
template <class S>
Mat<S> projector_span(const Mat<S>& basis, double eps = kDefaultEps) {
    std::size_t rk = rank(basis, eps);
    if (rk != basis.cols())
        throw std::invalid_argument("projector_span: dependent columns (rank " +
                                    std::to_string(rk) + " of " + std::to_string(basis.cols()) +
                                    ")");
    Mat<S> bt = basis.transposed();
    Mat<S> gram_inv = inverse(bt * basis, eps);
    return basis * gram_inv * bt;
}

// Projector onto the hyperplane with normal phi: P = I - phi phi^T / ||phi||^2.
template <class S>
Mat<S> projector_hyperplane(const Vec<S>& phi, double eps = kDefaultEps) {
    if (phi.is_zero(eps)) throw std::invalid_argument("projector_hyperplane: zero normal");
    const S nsq = norm_sq(phi);
    Mat<S> p = Mat<S>::identity(phi.dim());
    for (std::size_t i = 0; i < phi.dim(); ++i)
        for (std::size_t j = 0; j < phi.dim(); ++j) p(i, j) -= phi[i] * phi[j] / nsq;
    return p;
}

}  // namespace phaselab
