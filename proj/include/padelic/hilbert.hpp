#ifndef PADELIC_HILBERT_HPP
#define PADELIC_HILBERT_HPP

#include <vector>

#include "lambda.hpp"

namespace padelic {

namespace detail {

inline long eps_mod2(const Rational& u, const Integer& p) {
    // (u-1)/2 mod 2 via u mod 4
    Integer u4 = rational_mod_pk(u, p, 2);
    return Integer((u4 - 1) / 2).get_si() % 2;
}

inline long omega_mod2(const Rational& u, const Integer& p) {
    // (u^2-1)/8 mod 2 via u mod 8
    Integer u8 = rational_mod_pk(u, p, 3);
    return Integer(((u8 * u8 - 1) / 8) % 2).get_si();
}

}  // namespace detail

// Hilbert symbol (a,b)_v via the local closed forms.
inline int hilbert(const Valuation& v, const Rational& a, const Rational& b) {
    if (a == 0 || b == 0) throw DomainError("hilbert: arguments must be nonzero");
    if (v.is_infinity()) return (a < 0 && b < 0) ? -1 : 1;

    const Integer& p = v.prime_value();
    long alpha = *padic_valuation(a, p);
    long beta = *padic_valuation(b, p);
    Rational u = a * rat_pow(Rational(p), -alpha);
    Rational w = b * rat_pow(Rational(p), -beta);

    if (p != 2) {
        long eps_p = Integer((p - 1) / 2 % 2).get_si();
        int sign = (alpha % 2 != 0 && beta % 2 != 0 && eps_p != 0) ? -1 : 1;
        if (beta % 2 != 0 && legendre_unit(u, p) == -1) sign = -sign;
        if (alpha % 2 != 0 && legendre_unit(w, p) == -1) sign = -sign;
        return sign;
    }

    long e = detail::eps_mod2(u, p) * detail::eps_mod2(w, p) +
             (alpha % 2 != 0 ? detail::omega_mod2(w, p) : 0) +
             (beta % 2 != 0 ? detail::omega_mod2(u, p) : 0);
    return e % 2 == 0 ? 1 : -1;
}

// Right-hand side of the n-fold lambda product law:
// lambda_v(prod x_i) * lambda_v(1)^(n-1) * prod_{i<j} (x_i, x_j)_v.
// Must agree with big_lambda on every nonzero tuple.
inline UnitPhase big_lambda_factored(const Valuation& v, const std::vector<Rational>& xs) {
    Rational prod(1);
    for (const auto& x : xs) {
        if (x == 0) throw DomainError("big_lambda_factored: zero entry");
        prod *= x;
    }
    UnitPhase acc = lambda_v(v, prod);
    acc += lambda_v(v, Rational(1)).times(static_cast<long>(xs.size()) - 1);
    int sign = 1;
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j) sign *= hilbert(v, xs[i], xs[j]);
    if (sign == -1) acc += UnitPhase(make_rational(1, 2));
    return acc;
}

}  // namespace padelic

#endif
