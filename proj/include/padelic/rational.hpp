#ifndef PADELIC_RATIONAL_HPP
#define PADELIC_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace padelic {

// Exact arbitrary-precision scalars. mpq_class is kept canonical (reduced,
// positive denominator) by going through the helpers below.
using Integer = mpz_class;
using Rational = mpq_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A precondition on the input data does not hold.
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// A matrix/determinant that must be invertible is not.
struct SingularError : Error {
    explicit SingularError(const std::string& what) : Error(what) {}
};

// The brute-force term budget would be exceeded.
struct BudgetError : Error {
    explicit BudgetError(const std::string& what) : Error(what) {}
};

// p-adic series evaluation outside the guarded convergence window.
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline const Integer num(const Rational& q) { return q.get_num(); }
inline const Integer den(const Rational& q) { return q.get_den(); }

// Parses "num", "num/den", with optional sign and surrounding whitespace.
inline Rational rat_from_string(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw DomainError("rat_from_string: empty rational string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return make_rational(Integer(s), 1);
        return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw DomainError("rat_from_string: malformed rational '" + text + "'");
    }
}

// "num/den" with den omitted when it is 1.
inline std::string rat_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational rat_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    if (q == 0) {
        if (e < 0) throw DomainError("rat_pow: 0 to negative power");
        return Rational(0);
    }
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    mpz_pow_ui(d.get_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    return e > 0 ? make_rational(n, d) : make_rational(d, n);
}

inline Integer int_pow(const Integer& b, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// floor(q) as an integer.
inline Integer rat_floor(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return f;
}

}  // namespace padelic

#endif
