#ifndef PADELIC_BALL_HPP
#define PADELIC_BALL_HPP

#include "gauss_integrals.hpp"

namespace padelic {

// Exact value of the linear character over a ball:
// int_{|x|_p <= p^N} chi_p(u x) dx = p^N when |u|_p <= p^(-N), else 0.
inline Rational ball_character_integral(const Integer& p, const Rational& u, long N) {
    if (!is_prime(p)) throw DomainError("ball_character_integral: p must be prime");
    auto vu = padic_valuation(u, p);
    if (!vu || *vu >= N) return rat_pow(Rational(p), N);
    return Rational(0);
}

// int over the polyball |x_i|_p <= p^N of chi_p(y^T B x) d^n x, as the
// product of the componentwise linear integrals against B^T y.
inline Rational ball_linear_integral_nd(const Integer& p, const Matrix<Rational>& B,
                                        const std::vector<Rational>& y, long N) {
    size_t n = B.rows();
    if (B.cols() != n || y.size() != n) throw DomainError("ball_linear_integral_nd: shape mismatch");
    if (det(B) == 0) throw SingularError("ball_linear_integral_nd: B is singular");
    std::vector<Rational> w = B.transpose().apply(y);
    Rational acc(1);
    for (const auto& wk : w) acc *= ball_character_integral(p, wk, N);
    return acc;
}

// Exact quadratic character integral over a ball:
//   int_{|x|_p <= p^N} chi_p(a x^2 + b x) dx.
// Case analysis on the valuations; no floating point anywhere.
inline Amplitude ball_gauss(const Integer& p, const Rational& a, const Rational& b, long N) {
    if (!is_prime(p)) throw DomainError("ball_gauss: p must be prime");
    Rational ball_measure_sq = rat_pow(Rational(p), 2 * N);  // (p^N)^2

    if (a == 0) {
        Rational r = ball_character_integral(p, b, N);
        return r == 0 ? Amplitude::zero() : Amplitude(r * r, UnitPhase());
    }

    long ga = *padic_valuation(a, p);
    long v2 = (p == 2) ? 1 : 0;

    // quadratic term constant on the ball
    if (ga >= 2 * N) {
        auto vb = padic_valuation(b, p);
        if (!vb || *vb >= N) return Amplitude(ball_measure_sq, UnitPhase());
        return Amplitude::zero();
    }

    // center of the completed square: -b/(2a)
    bool center_inside;
    long vb = 0;
    if (b == 0) {
        center_inside = true;
    } else {
        vb = *padic_valuation(b, p);
        center_inside = (vb - ga - v2) >= -N;
    }

    if (center_inside) {
        if (p == 2 && ga - 2 * N == -1) return Amplitude::zero();
        Rational mag_sq = rat_pow(Rational(p), ga + v2);  // |2a|_p^{-1}
        UnitPhase phase = lambda_v(Valuation::prime(p), a);
        if (b != 0) phase += chi(Valuation::prime(p), -b * b / (4 * a));
        return Amplitude(mag_sq, phase);
    }

    // center outside the ball: the integral vanishes except for one p = 2
    // boundary combination where the phase is identically trivial
    if (p == 2 && ((ga % 2) != 0) && N == (ga + 1) / 2 && vb == (ga - 1) / 2)
        return Amplitude(ball_measure_sq, UnitPhase());
    return Amplitude::zero();
}

// Same integral with an additional constant term in the phase.
inline Amplitude ball_gauss_affine(const Integer& p, const Rational& a, const Rational& b,
                                   const Rational& c, long N) {
    Amplitude g = ball_gauss(p, a, b, N);
    if (g.is_zero()) return g;
    return g * Amplitude(Rational(1), chi(Valuation::prime(p), c));
}

}  // namespace padelic

#endif
