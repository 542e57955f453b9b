#ifndef PADELIC_PHASE_HPP
#define PADELIC_PHASE_HPP

#include <cmath>
#include <complex>

#include "rational.hpp"

namespace padelic {

// An element of Q/Z standing for the exact complex number exp(2*pi*i*q).
class UnitPhase {
  public:
    UnitPhase() : q_(0) {}
    explicit UnitPhase(const Rational& q) : q_(reduce(q)) {}

    const Rational& value() const { return q_; }

    UnitPhase operator+(const UnitPhase& o) const { return UnitPhase(q_ + o.q_); }
    UnitPhase operator-(const UnitPhase& o) const { return UnitPhase(q_ - o.q_); }
    UnitPhase operator-() const { return UnitPhase(-q_); }
    UnitPhase& operator+=(const UnitPhase& o) { return *this = *this + o; }

    UnitPhase times(long k) const { return UnitPhase(q_ * Rational(k)); }

    friend bool operator==(const UnitPhase& a, const UnitPhase& b) { return a.q_ == b.q_; }
    friend bool operator!=(const UnitPhase& a, const UnitPhase& b) { return !(a == b); }

    std::complex<double> to_complex() const {
        double t = 2.0 * M_PI * q_.get_d();
        return {std::cos(t), std::sin(t)};
    }

  private:
    static Rational reduce(const Rational& q) { return q - Rational(rat_floor(q)); }
    Rational q_;  // in [0, 1)
};

// Exact complex value (squared modulus, phase). Squared moduli stay rational
// for everything in scope; phases are roots of unity.
class Amplitude {
  public:
    Amplitude() : mag_sq_(0), phase_() {}
    Amplitude(const Rational& mag_sq, const UnitPhase& phase) : mag_sq_(mag_sq), phase_(phase) {
        if (mag_sq_ < 0) throw DomainError("Amplitude: negative squared modulus");
        if (mag_sq_ == 0) phase_ = UnitPhase();  // canonical zero
    }

    static Amplitude one() { return Amplitude(Rational(1), UnitPhase()); }
    static Amplitude zero() { return Amplitude(); }

    const Rational& mag_sq() const { return mag_sq_; }
    const UnitPhase& phase() const { return phase_; }
    bool is_zero() const { return mag_sq_ == 0; }

    Amplitude operator*(const Amplitude& o) const {
        return Amplitude(mag_sq_ * o.mag_sq_, phase_ + o.phase_);
    }
    Amplitude& operator*=(const Amplitude& o) { return *this = *this * o; }

    Amplitude conj() const { return Amplitude(mag_sq_, -phase_); }

    // Scale by an exact nonzero rational factor (enters mag_sq squared).
    Amplitude scaled(const Rational& f) const {
        Amplitude r(mag_sq_ * f * f, phase_);
        if (f < 0) r.phase_ += UnitPhase(Rational(1, 2));
        return r;
    }

    friend bool operator==(const Amplitude& a, const Amplitude& b) {
        return a.mag_sq_ == b.mag_sq_ && a.phase_ == b.phase_;
    }
    friend bool operator!=(const Amplitude& a, const Amplitude& b) { return !(a == b); }

    std::complex<double> to_complex() const {
        return std::sqrt(mag_sq_.get_d()) * phase_.to_complex();
    }

  private:
    Rational mag_sq_;
    UnitPhase phase_;
};

}  // namespace padelic

#endif
