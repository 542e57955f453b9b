#ifndef PADELIC_VALUATION_HPP
#define PADELIC_VALUATION_HPP

#include <string>
#include <vector>

#include "rational.hpp"

namespace padelic {

// Deterministic primality: trial division, then Miller-Rabin over a fixed
// base set (exact for n < 3.3e24, which covers every prime this library is
// used with; larger inputs fall back to mpz_probab_prime_p).
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    static const long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (long s : small) {
        if (n == s) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(s))) return false;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 81)
        return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
    Integer d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
    for (long a : small) {
        Integer x;
        Integer base(a);
        mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned long i = 0; i + 1 < r; ++i) {
            x = (x * x) % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// v = infinity or v = p for a prime p; selects the norm, character and
// lambda dispatch everywhere else.
class Valuation {
  public:
    static Valuation infinity() { return Valuation(Integer(0)); }

    static Valuation prime(const Integer& p) {
        if (!is_prime(p)) throw DomainError("Valuation::prime: " + p.get_str() + " is not prime");
        return Valuation(p);
    }
    static Valuation prime(long p) { return prime(Integer(p)); }

    bool is_infinity() const { return p_ == 0; }
    const Integer& prime_value() const {
        if (is_infinity()) throw DomainError("Valuation: no prime for the infinite place");
        return p_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
    friend bool operator<(const Valuation& a, const Valuation& b) { return a.p_ < b.p_; }

    std::string str() const { return is_infinity() ? "inf" : p_.get_str(); }

    // "inf" (or "oo", "infinity") or a prime integer.
    static Valuation parse(const std::string& s) {
        if (s == "inf" || s == "oo" || s == "infinity") return infinity();
        try {
            return prime(Integer(s));
        } catch (const std::invalid_argument&) {
            throw DomainError("Valuation::parse: bad valuation '" + s + "'");
        }
    }

  private:
    explicit Valuation(Integer p) : p_(std::move(p)) {}
    Integer p_;  // 0 encodes the infinite place
};

}  // namespace padelic

#endif
