#ifndef PADELIC_CHARACTERS_HPP
#define PADELIC_CHARACTERS_HPP

#include "padic.hpp"
#include "phase.hpp"

namespace padelic {

// Additive character chi_v(a): exp(2*pi*i*{a}_p) at a finite place,
// exp(-2*pi*i*a) at the real place.
inline UnitPhase chi(const Valuation& v, const Rational& a) {
    if (v.is_infinity()) return UnitPhase(-a);
    return UnitPhase(fractional_part(a, v.prime_value()));
}

// Indicator of the unit ball: Omega(t) for t = |x|_v.
inline int omega(const Rational& t) {
    if (t < 0) throw DomainError("omega: norms are non-negative");
    return t <= 1 ? 1 : 0;
}

}  // namespace padelic

#endif
