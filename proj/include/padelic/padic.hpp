#ifndef PADELIC_PADIC_HPP
#define PADELIC_PADIC_HPP

#include <optional>
#include <vector>

#include "valuation.hpp"

namespace padelic {

// Exponent of p in x; nullopt encodes +infinity (x = 0).
inline std::optional<long> padic_valuation(const Rational& x, const Integer& p) {
    if (!is_prime(p)) throw DomainError("padic_valuation: modulus must be prime");
    if (x == 0) return std::nullopt;
    Integer tmp;
    long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(), p.get_mpz_t()));
    return vn - vd;
}

// |x|_p = p^(-v_p(x)), |0|_p = 0.
inline Rational padic_norm(const Rational& x, const Integer& p) {
    auto m = padic_valuation(x, p);
    if (!m) return Rational(0);
    return rat_pow(Rational(p), -*m);
}

// |x|_v for any valuation; |0| = 0 everywhere.
inline Rational norm_v(const Rational& x, const Valuation& v) {
    if (v.is_infinity()) return rat_abs(x);
    return padic_norm(x, v.prime_value());
}

namespace detail {

// x mod p^e for a rational x with v_p(x) >= 0, as an integer in [0, p^e).
inline Integer rational_mod_pk(const Rational& x, const Integer& p, unsigned long e) {
    Integer pk = int_pow(p, e);
    Integer dinv;
    if (mpz_invert(dinv.get_mpz_t(), x.get_den().get_mpz_t(), pk.get_mpz_t()) == 0)
        throw DomainError("rational_mod_pk: denominator not invertible mod p^e");
    Integer r = (x.get_num() % pk) * dinv % pk;
    if (r < 0) r += pk;
    return r;
}

}  // namespace detail

// The principal part of the canonical base-p expansion: the unique
// r in [0,1) with p-power denominator such that v_p(x - r) >= 0.
inline Rational fractional_part(const Rational& x, const Integer& p) {
    auto m = padic_valuation(x, p);
    if (!m || *m >= 0) return Rational(0);
    unsigned long e = static_cast<unsigned long>(-*m);
    Integer pe = int_pow(p, e);
    // x = a / (p^e * b') with p coprime to b'; r = (a * b'^-1 mod p^e) / p^e.
    Rational scaled = x * Rational(pe);  // now v_p >= 0
    Integer c = detail::rational_mod_pk(scaled, p, e);
    return make_rational(c, pe);
}

// Base-p digits b_m..b_{m+count-1} of x, leading digit nonzero unless x = 0.
struct PadicDigits {
    long start_exponent = 0;  // m
    std::vector<Integer> digits;
    Integer prime;
};

inline PadicDigits padic_digits(const Rational& x, const Integer& p, long count) {
    if (count < 0) throw DomainError("padic_digits: negative count");
    PadicDigits out;
    out.prime = p;
    auto m = padic_valuation(x, p);
    if (!m) return out;  // zero: empty digit list
    out.start_exponent = *m;
    Rational u = x * rat_pow(Rational(p), -*m);  // p-adic unit
    out.digits.reserve(static_cast<size_t>(count));
    for (long k = 0; k < count; ++k) {
        Integer d = detail::rational_mod_pk(u, p, 1);
        out.digits.push_back(d);
        u = (u - Rational(d)) / Rational(p);
    }
    return out;
}

// Digit of x at exponent k (0 for k below the leading exponent).
inline Integer padic_digit_at(const Rational& x, const Integer& p, long k) {
    auto m = padic_valuation(x, p);
    if (!m || k < *m) return Integer(0);
    Rational u = x * rat_pow(Rational(p), -k);
    // digits below exponent k form the fractional part of u; strip and reduce.
    Rational frac = fractional_part(u, p);
    return detail::rational_mod_pk(u - frac, p, 1);
}

enum class Ordering { LT, EQ, GT };

// Linear order on Q inherited from Q_p: smaller p-adic norm first, then the
// first differing canonical digit decides.
inline Ordering padic_compare(const Rational& x, const Rational& y, const Integer& p) {
    if (x == y) return Ordering::EQ;
    Rational nx = padic_norm(x, p), ny = padic_norm(y, p);
    if (nx != ny) return nx < ny ? Ordering::LT : Ordering::GT;
    long k = *padic_valuation(x - y, p);  // first differing digit index
    Integer dx = padic_digit_at(x, p, k), dy = padic_digit_at(y, p, k);
    return dx < dy ? Ordering::LT : Ordering::GT;
}

}  // namespace padelic

#endif
