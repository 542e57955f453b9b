#ifndef PADELIC_GAUSS_INTEGRALS_HPP
#define PADELIC_GAUSS_INTEGRALS_HPP

#include <vector>

#include "hilbert.hpp"
#include "matrix.hpp"

namespace padelic {

// Full-space Gaussian integral of chi_v(alpha x^2 + beta x):
// lambda_v(alpha) * |2 alpha|_v^(-1/2) * chi_v(-beta^2 / (4 alpha)).
inline Amplitude gaussian_1d(const Valuation& v, const Rational& alpha, const Rational& beta) {
    if (alpha == 0) throw DomainError("gaussian_1d: alpha must be nonzero");
    Rational mag_sq = Rational(1) / norm_v(2 * alpha, v);
    UnitPhase phase = lambda_v(v, alpha) + chi(v, -beta * beta / (4 * alpha));
    return Amplitude(mag_sq, phase);
}

// chi_v(x^T alpha x + beta^T x) integrand data for the n-dimensional case.
struct QuadraticIntegrand {
    Matrix<Rational> alpha;       // symmetric n x n
    std::vector<Rational> beta;   // length n

    size_t dim() const { return alpha.rows(); }

    void validate() const {
        size_t n = alpha.rows();
        if (alpha.cols() != n || beta.size() != n)
            throw DomainError("QuadraticIntegrand: shape mismatch");
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (alpha(i, j) != alpha(j, i))
                    throw DomainError("QuadraticIntegrand: alpha must be symmetric");
    }
};

// Congruence diagonalization M alpha M^T = diag(d), M invertible over Q.
// Returns {M, d}. Zero diagonal pivots are repaired by rational shears.
inline std::pair<Matrix<Rational>, std::vector<Rational>> congruence_diagonalize(
    Matrix<Rational> a) {
    size_t n = a.rows();
    Matrix<Rational> m = Matrix<Rational>::identity(n, Rational(1), Rational(0));
    auto add_row_col = [&](size_t dst, size_t src, const Rational& f) {
        for (size_t j = 0; j < n; ++j) a(dst, j) += f * a(src, j);
        for (size_t i = 0; i < n; ++i) a(i, dst) += f * a(i, src);
        for (size_t j = 0; j < n; ++j) m(dst, j) += f * m(src, j);
    };
    auto swap_row_col = [&](size_t i, size_t j) {
        for (size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
        for (size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
        for (size_t k = 0; k < n; ++k) std::swap(m(i, k), m(j, k));
    };
    for (size_t k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            size_t piv = k;
            for (size_t i = k + 1; i < n; ++i)
                if (a(i, i) != 0) {
                    piv = i;
                    break;
                }
            if (piv != k) {
                swap_row_col(k, piv);
            } else {
                size_t j = k;
                for (size_t i = k + 1; i < n; ++i)
                    if (a(k, i) != 0) {
                        j = i;
                        break;
                    }
                if (j == k) throw SingularError("congruence_diagonalize: singular matrix");
                add_row_col(k, j, Rational(1));  // a(k,k) becomes 2*a(k,j) != 0
            }
        }
        for (size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            add_row_col(i, k, -a(i, k) / a(k, k));
        }
    }
    std::vector<Rational> d(n);
    for (size_t i = 0; i < n; ++i) d[i] = a(i, i);
    return {m, d};
}

// n-dimensional Gaussian over Q_v^n, evaluated through an exact congruence
// change of variables x = M^T y:
//   |det M|_v * prod_i gaussian_1d(v, d_i, (M beta)_i).
inline Amplitude gaussian_nd(const Valuation& v, const QuadraticIntegrand& q) {
    q.validate();
    auto [m, d] = congruence_diagonalize(q.alpha);
    for (const auto& di : d)
        if (di == 0) throw SingularError("gaussian_nd: alpha is singular");
    std::vector<Rational> gamma = m.apply(q.beta);
    Rational detm = det(m);
    Amplitude acc(norm_v(detm, v) * norm_v(detm, v), UnitPhase());
    for (size_t i = 0; i < d.size(); ++i) acc *= gaussian_1d(v, d[i], gamma[i]);
    return acc;
}

}  // namespace padelic

#endif
