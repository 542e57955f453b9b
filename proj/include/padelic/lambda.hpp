#ifndef PADELIC_LAMBDA_HPP
#define PADELIC_LAMBDA_HPP

#include <vector>

#include "characters.hpp"
#include "legendre.hpp"

namespace padelic {

// lambda_v: the eighth-root-of-unity factor of one-dimensional Gaussian
// integrals over Q_v. lambda_v(0) = 1 by convention.
//
// Odd p, v_p(x) = m:  1 for even m; sqrt((-1|p)) * (x_m|p) for odd m, with
// sqrt((-1|p)) = 1 when p = 1 (mod 4) and = i when p = 3 (mod 4).
// p = 2: digit formula on the unit part, branch fixed against the ball-sum
// oracle (see tests).  Infinite place: exp(-pi*i*sgn(x)/4).
inline UnitPhase lambda_v(const Valuation& v, const Rational& x) {
    if (x == 0) return UnitPhase();
    if (v.is_infinity())
        return UnitPhase(x > 0 ? make_rational(-1, 8) : make_rational(1, 8));

    const Integer& p = v.prime_value();
    long m = *padic_valuation(x, p);
    Rational u = x * rat_pow(Rational(p), -m);  // unit part

    if (p != 2) {
        if (m % 2 == 0) return UnitPhase();
        Rational base = (p % 4 == 1) ? Rational(0) : make_rational(1, 4);
        if (legendre_unit(u, p) == -1) base += make_rational(1, 2);
        return UnitPhase(base);
    }

    Integer u8 = detail::rational_mod_pk(u, p, 3);  // u mod 8 = 1 + 2*u1 + 4*u2
    long u1 = mpz_tstbit(u8.get_mpz_t(), 1);
    long u2 = mpz_tstbit(u8.get_mpz_t(), 2);
    if (m % 2 == 0)
        return UnitPhase(u1 == 0 ? make_rational(1, 8) : make_rational(7, 8));
    return UnitPhase(make_rational(1, 8) + make_rational(u1, 4) + make_rational(u2, 2));
}

// Big-Lambda: the plain phase product of lambda_v over a tuple.
inline UnitPhase big_lambda(const Valuation& v, const std::vector<Rational>& xs) {
    UnitPhase acc;
    for (const auto& x : xs) acc += lambda_v(v, x);
    return acc;
}

}  // namespace padelic

#endif
