#ifndef PADELIC_LEGENDRE_HPP
#define PADELIC_LEGENDRE_HPP

#include "valuation.hpp"

namespace padelic {

// Legendre symbol (a|p) for odd prime p, by Euler's criterion:
// +1 for a nonzero square mod p, -1 for a nonsquare, 0 when p | a.
inline int legendre(const Integer& a, const Integer& p) {
    if (p == 2 || !is_prime(p)) throw DomainError("legendre: modulus must be an odd prime");
    Integer r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    Integer e = (p - 1) / 2, x;
    mpz_powm(x.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return x == 1 ? 1 : -1;
}

inline int legendre(long a, long p) { return legendre(Integer(a), Integer(p)); }

// (u|p) for a rational p-adic unit u: reduce u mod p first.
inline int legendre_unit(const Rational& u, const Integer& p) {
    return legendre(detail::rational_mod_pk(u, p, 1), p);
}

}  // namespace padelic

#endif
