#ifndef PADELIC_MATRIX_HPP
#define PADELIC_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "rational.hpp"

namespace padelic {

// Dense matrix over an exact commutative ring (Rational, SeriesQ, ...).
template <typename T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(size_t n, const T& one, const T& zero = T()) {
        Matrix m(n, n, zero);
        for (size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix m(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Matrix operator+(const Matrix& o) const {
        Matrix m(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
        return m;
    }
    Matrix operator-(const Matrix& o) const {
        Matrix m(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - o.data_[i];
        return m;
    }
    Matrix operator*(const Matrix& o) const {
        Matrix m(rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k)
                for (size_t j = 0; j < o.cols_; ++j)
                    m(i, j) = m(i, j) + (*this)(i, k) * o(k, j);
        return m;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        std::vector<T> y(rows_, T());
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) y[i] = y[i] + (*this)(i, j) * x[j];
        return y;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    size_t rows_, cols_;
    std::vector<T> data_;
};

// Division-free determinant: Laplace expansion with memoization over column
// subsets. Fine for the small orders used here (<= 6), works over any ring.
template <typename T>
T det(const Matrix<T>& a) {
    size_t n = a.rows();
    if (n != a.cols()) throw DomainError("det: matrix not square");
    if (n == 0) return T(1);
    std::vector<T> f(size_t(1) << n, T());
    f[0] = T(1);
    for (size_t mask = 1; mask < f.size(); ++mask) {
        size_t k = static_cast<size_t>(__builtin_popcountll(mask));
        T acc{};
        int pos = 0;
        for (size_t j = 0; j < n; ++j) {
            if (!(mask & (size_t(1) << j))) continue;
            T term = a(k - 1, j) * f[mask ^ (size_t(1) << j)];
            if ((static_cast<int>(k - 1) + pos) % 2 != 0)
                acc = acc - term;
            else
                acc = acc + term;
            ++pos;
        }
        f[mask] = acc;
    }
    return f.back();
}

inline Rational dotv(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Exact linear solve A x = b over the rationals (Gaussian elimination).
inline std::vector<Rational> solve_linear(Matrix<Rational> a, std::vector<Rational> b) {
    size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw DomainError("solve_linear: shape mismatch");
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) throw SingularError("solve_linear: singular matrix");
        if (piv != col) {
            for (size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            std::swap(b[piv], b[col]);
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            Rational f = a(i, col) / a(col, col);
            for (size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
            b[i] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a(i, i);
    return x;
}

inline Matrix<Rational> inverse(const Matrix<Rational>& a) {
    size_t n = a.rows();
    Matrix<Rational> inv(n, n);
    for (size_t j = 0; j < n; ++j) {
        std::vector<Rational> e(n, Rational(0));
        e[j] = 1;
        auto col = solve_linear(a, e);
        for (size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

}  // namespace padelic

#endif
