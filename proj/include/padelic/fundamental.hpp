#ifndef PADELIC_FUNDAMENTAL_HPP
#define PADELIC_FUNDAMENTAL_HPP

#include "lagrangian.hpp"

namespace padelic {

// The n x 2n solution matrix F(t) of the homogeneous system, its derivative,
// and the particular solution xi(t) for the inhomogeneous right-hand side.
// Columns of [F; Fdot] start from the standard basis of initial data at
// t = 0, with one column rescaled so det[F; Fdot] * det A = normalization.
struct FundamentalMatrix {
    size_t n = 1;
    int order = 32;
    SeriesMatrix F, Fdot;   // n x 2n
    SeriesVector xi, xidot; // n
    Rational normalization; // the Wronskian constant
};

namespace detail {

// One Taylor column: solve M2 q'' + M1 q' + M0 q = rhs to the given order
// from initial data (q0, q1).
inline SeriesVector solve_column(const ODESystem& sys, const std::vector<Rational>& q0,
                                 const std::vector<Rational>& q1, const SeriesVector& rhs,
                                 int order) {
    size_t n = q0.size();
    Matrix<Rational> a0(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a0(i, j) = sys.M2(i, j).coeff(0);
    Matrix<Rational> a0inv = inverse(a0);

    // coefficient vectors q[k]
    std::vector<std::vector<Rational>> q(static_cast<size_t>(order) + 1,
                                         std::vector<Rational>(n, Rational(0)));
    q[0] = q0;
    if (order >= 1) q[1] = q1;

    for (int k = 0; k + 2 <= order; ++k) {
        // coefficient of t^k in M2 q'' + M1 q' + M0 q = rhs, solved for qdd[k]
        std::vector<Rational> acc(n, Rational(0));
        for (size_t i = 0; i < n; ++i) acc[i] = rhs[i].coeff(k);
        for (int j = 1; j <= k; ++j) {  // M2 tail contributions
            for (size_t r = 0; r < n; ++r)
                for (size_t c = 0; c < n; ++c) {
                    Rational m = sys.M2(r, c).coeff(j);
                    if (m == 0) continue;
                    int i = k - j;  // index into qdd
                    acc[r] -= m * q[size_t(i) + 2][c] * Rational((i + 1) * (i + 2));
                }
        }
        for (int j = 0; j <= k; ++j) {
            for (size_t r = 0; r < n; ++r)
                for (size_t c = 0; c < n; ++c) {
                    Rational m1 = sys.M1(r, c).coeff(j);
                    if (m1 != 0) acc[r] -= m1 * q[size_t(k - j) + 1][c] * Rational(k - j + 1);
                    Rational m0 = sys.M0(r, c).coeff(j);
                    if (m0 != 0) acc[r] -= m0 * q[size_t(k - j)][c];
                }
        }
        std::vector<Rational> qdd = a0inv.apply(acc);
        for (size_t c = 0; c < n; ++c) q[size_t(k) + 2][c] = qdd[c] / Rational((k + 1) * (k + 2));
    }

    SeriesVector out(n);
    for (size_t c = 0; c < n; ++c) {
        std::vector<Rational> coeffs(static_cast<size_t>(order) + 1);
        for (int k = 0; k <= order; ++k) coeffs[size_t(k)] = q[size_t(k)][c];
        out[c] = SeriesQ(std::move(coeffs), order);
    }
    return out;
}

}  // namespace detail

// 2n independent solutions from standard initial data at t = 0, plus the
// particular solution with zero initial data. When normalize_to_one is set
// the first column is rescaled by 1/det A(0) so the Wronskian constant is 1.
inline FundamentalMatrix solve_fundamental(const QuadraticLagrangian& L, int order,
                                           bool normalize_to_one = true) {
    L.validate();
    ODESystem sys = euler_lagrange(L);
    size_t n = L.n;
    FundamentalMatrix fm;
    fm.n = n;
    fm.order = order;
    fm.F = SeriesMatrix(n, 2 * n);
    fm.Fdot = SeriesMatrix(n, 2 * n);
    SeriesVector zero_rhs(n, SeriesQ(0));

    Matrix<Rational> a0(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a0(i, j) = L.A(i, j).coeff(0);
    Rational det_a0 = det(a0);

    for (size_t m = 0; m < 2 * n; ++m) {
        std::vector<Rational> q0(n, Rational(0)), q1(n, Rational(0));
        if (m < n)
            q0[m] = 1;
        else
            q1[m - n] = 1;
        SeriesVector col = detail::solve_column(sys, q0, q1, zero_rhs, order);
        Rational scale = (m == 0 && normalize_to_one) ? Rational(1) / det_a0 : Rational(1);
        for (size_t k = 0; k < n; ++k) {
            fm.F(k, m) = col[k] * scale;
            fm.Fdot(k, m) = fm.F(k, m).derivative();
        }
    }
    fm.normalization = normalize_to_one ? Rational(1) : det_a0;

    std::vector<Rational> z(n, Rational(0));
    fm.xi = detail::solve_column(sys, z, z, sys.rhs, order);
    fm.xidot.resize(n);
    for (size_t k = 0; k < n; ++k) fm.xidot[k] = fm.xi[k].derivative();
    return fm;
}

// det[F(t); Fdot(t)] * det A(t): constant for exact solutions. Returned as a
// series so tests can assert that every order >= 1 coefficient vanishes.
inline SeriesQ wronskian_constant(const FundamentalMatrix& fm, const QuadraticLagrangian& L) {
    size_t n = fm.n;
    SeriesMatrix stack(2 * n, 2 * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < 2 * n; ++j) {
            stack(i, j) = fm.F(i, j);
            stack(n + i, j) = fm.Fdot(i, j);
        }
    return det(stack) * det(L.A);
}

}  // namespace padelic

#endif
