#ifndef KLEIN_MATRIX_HPP
#define KLEIN_MATRIX_HPP

#include "gaussian_rational.hpp"
#include "poly.hpp"

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace klein {

/// Dense row-major matrix over one coefficient ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    /// Appends the rows of `other` (same column count).
    void append_rows(const Matrix& other) {
        if (other.cols_ != cols_ && rows_ != 0) throw std::invalid_argument("column count mismatch");
        if (rows_ == 0) cols_ = other.cols_;
        data_.insert(data_.end(), other.data_.begin(), other.data_.end());
        rows_ += other.rows_;
    }

    const std::vector<T>& data() const noexcept { return data_; }

    static Matrix identity(std::size_t n, const T& zero, const T& one) {
        Matrix m(n, n, zero);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = one;
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ExactMatrix = Matrix<GaussianRational>;
using PolyMatrix = Matrix<MultiPoly>;

/// Ring operations used by fraction-free elimination. The ring must be an
/// integral domain in which exact_div(a, b) is exact whenever b divides a.
template <class T>
struct RingTraits;

template <>
struct RingTraits<GaussianRational> {
    static bool is_zero(const GaussianRational& a) { return a.is_zero(); }
    static GaussianRational one_like(const GaussianRational&) { return GaussianRational(1); }
    static GaussianRational zero_like(const GaussianRational&) { return GaussianRational(0); }
    static GaussianRational exact_div(const GaussianRational& a, const GaussianRational& b) { return a / b; }
    static std::size_t weight(const GaussianRational& a) { return a.bit_size(); }
};

template <>
struct RingTraits<MultiPoly> {
    static bool is_zero(const MultiPoly& a) { return a.is_zero(); }
    static MultiPoly one_like(const MultiPoly& a) { return MultiPoly(a.context(), GaussianRational(1)); }
    static MultiPoly zero_like(const MultiPoly& a) { return MultiPoly(a.context()); }
    static MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) { return divide_exact(a, b); }
    static std::size_t weight(const MultiPoly& a) { return a.size(); }
};

template <>
struct RingTraits<mpz_class> {
    static bool is_zero(const mpz_class& a) { return sgn(a) == 0; }
    static mpz_class one_like(const mpz_class&) { return 1; }
    static mpz_class zero_like(const mpz_class&) { return 0; }
    static mpz_class exact_div(const mpz_class& a, const mpz_class& b) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    static std::size_t weight(const mpz_class& a) { return mpz_sizeinbase(a.get_mpz_t(), 2); }
};

template <class T>
struct RankKernel {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
    /// One vector per non-pivot column, entries in the matrix ring.
    std::vector<std::vector<T>> kernel;
};

namespace detail {

// Among rows [from, rows) pick the nonzero entry of column c with the smallest weight.
template <class T>
std::size_t choose_pivot_row(const Matrix<T>& m, std::size_t from, std::size_t c) {
    using R = RingTraits<T>;
    std::size_t best = m.rows();
    std::size_t best_weight = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = from; r < m.rows(); ++r) {
        if (R::is_zero(m(r, c))) continue;
        std::size_t w = R::weight(m(r, c));
        if (w < best_weight) {
            best = r;
            best_weight = w;
        }
    }
    return best;
}

// One fraction-free update: (pivot*x - left*right) / prev.
template <class T>
T bareiss_step(const T& pivot, const T& x, const T& left, const T& right, const T& prev, bool prev_is_one) {
    using R = RingTraits<T>;
    T num;
    if (R::is_zero(left) || R::is_zero(right)) {
        if (R::is_zero(x)) return R::zero_like(x);
        num = pivot * x;
    } else if (R::is_zero(x)) {
        num = -(left * right);
    } else {
        num = pivot * x - left * right;
    }
    if (prev_is_one || R::is_zero(num)) return num;
    return R::exact_div(num, prev);
}

}  // namespace detail

/// Rank by fraction-free (Bareiss) forward elimination. Every intermediate
/// entry is a minor of the input, so the divisions are exact.
template <class T>
std::size_t rank(Matrix<T> m) {
    using R = RingTraits<T>;
    if (m.rows() == 0 || m.cols() == 0) return 0;
    std::size_t r = 0;
    T prev = R::one_like(m(0, 0));
    bool prev_is_one = true;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = detail::choose_pivot_row(m, r, c);
        if (p == m.rows()) continue;
        m.swap_rows(p, r);
        const T pivot = m(r, c);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const T left = m(i, c);
            for (std::size_t j = c + 1; j < m.cols(); ++j)
                m(i, j) = detail::bareiss_step(pivot, m(i, j), left, m(r, j), prev, prev_is_one);
            m(i, c) = R::zero_like(pivot);
        }
        prev = pivot;
        prev_is_one = false;
        ++r;
    }
    return r;
}

/// Rank and kernel by fraction-free Gauss-Jordan elimination. At the end all
/// pivots equal the last pivot d, so for a free column f the vector with
/// v[f] = d and v[pivot column of row k] = -m(k, f) lies in the kernel.
template <class T>
RankKernel<T> rank_kernel(Matrix<T> m) {
    using R = RingTraits<T>;
    RankKernel<T> out;
    if (m.cols() == 0) return out;
    if (m.rows() == 0) {
        // Without a sample entry we cannot build ring constants for MultiPoly; callers
        // with polynomial entries pass at least one row.
        if constexpr (std::is_same_v<T, MultiPoly>) throw std::invalid_argument("empty polynomial matrix");
        for (std::size_t f = 0; f < m.cols(); ++f) {
            std::vector<T> v(m.cols(), T(0));
            v[f] = T(1);
            out.kernel.push_back(std::move(v));
        }
        return out;
    }
    const T sample = m(0, 0);
    std::size_t r = 0;
    T prev = R::one_like(sample);
    bool prev_is_one = true;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = detail::choose_pivot_row(m, r, c);
        if (p == m.rows()) continue;
        m.swap_rows(p, r);
        const T pivot = m(r, c);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            const T left = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (j == c) continue;
                m(i, j) = detail::bareiss_step(pivot, m(i, j), left, m(r, j), prev, prev_is_one);
            }
            m(i, c) = R::zero_like(sample);
        }
        out.pivot_columns.push_back(c);
        prev = pivot;
        prev_is_one = false;
        ++r;
    }
    out.rank = r;
    const T d = r ? prev : R::one_like(sample);
    std::size_t next_pivot = 0;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (next_pivot < r && out.pivot_columns[next_pivot] == f) {
            ++next_pivot;
            continue;
        }
        std::vector<T> v(m.cols(), R::zero_like(sample));
        v[f] = d;
        for (std::size_t k = 0; k < r; ++k) v[out.pivot_columns[k]] = -m(k, f);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

/// m * v, used to re-check kernel vectors.
template <class T>
std::vector<T> multiply(const Matrix<T>& m, const std::vector<T>& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("dimension mismatch");
    std::vector<T> out;
    out.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        T acc = RingTraits<T>::zero_like(v.empty() ? T() : v[0]);
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!RingTraits<T>::is_zero(m(r, c)) && !RingTraits<T>::is_zero(v[c])) acc = acc + m(r, c) * v[c];
        out.push_back(std::move(acc));
    }
    return out;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch");
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            T acc = RingTraits<T>::zero_like(a(i, 0));
            for (std::size_t k = 0; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
            out(i, j) = std::move(acc);
        }
    return out;
}

/// Inverse over Q(i) by Gauss-Jordan.
class SingularMatrix : public std::domain_error {
public:
    SingularMatrix() : std::domain_error("matrix is singular") {}
};

inline ExactMatrix inverse(const ExactMatrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
    ExactMatrix m = a;
    ExactMatrix inv = ExactMatrix::identity(n, GaussianRational(0), GaussianRational(1));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) throw SingularMatrix();
        m.swap_rows(p, c);
        inv.swap_rows(p, c);
        GaussianRational s = m(c, c).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) *= s;
            inv(c, j) *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c).is_zero()) continue;
            GaussianRational f = m(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                if (!m(c, j).is_zero()) m(r, j) -= f * m(c, j);
                if (!inv(c, j).is_zero()) inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

/// Entry-wise scalar evaluation of a polynomial matrix.
inline ExactMatrix specialize(const PolyMatrix& m, std::span<const GaussianRational> values) {
    ExactMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = evaluate(m(r, c), values);
    return out;
}

}  // namespace klein

#endif  // KLEIN_MATRIX_HPP
