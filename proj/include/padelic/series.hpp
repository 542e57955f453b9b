#ifndef PADELIC_SERIES_HPP
#define PADELIC_SERIES_HPP

#include <algorithm>
#include <climits>
#include <vector>

#include "padic.hpp"

namespace padelic {

// Truncated power series over Q in one variable. `order` is the largest
// exponent whose coefficient is trustworthy; EXACT marks an exact polynomial
// (no truncation error at all). Arithmetic propagates the weakest order.
class SeriesQ {
  public:
    static constexpr int EXACT = INT_MAX;

    SeriesQ() : order_(EXACT) {}
    SeriesQ(long c) : order_(EXACT) {  // NOLINT: implicit by design
        if (c != 0) c_.push_back(Rational(c));
    }
    explicit SeriesQ(const Rational& c) : order_(EXACT) {
        if (c != 0) c_.push_back(c);
    }
    SeriesQ(std::vector<Rational> coeffs, int order) : c_(std::move(coeffs)), order_(order) {
        trim();
    }

    static SeriesQ monomial(const Rational& c, int k, int order = EXACT) {
        std::vector<Rational> v(static_cast<size_t>(k) + 1, Rational(0));
        v.back() = c;
        return SeriesQ(std::move(v), order);
    }

    int order() const { return order_; }
    bool is_exact() const { return order_ == EXACT; }

    Rational coeff(int k) const {
        if (k < 0 || static_cast<size_t>(k) >= c_.size()) return Rational(0);
        return c_[static_cast<size_t>(k)];
    }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

    bool is_zero() const { return c_.empty(); }

    // Index of the lowest nonzero coefficient; -1 when the series is zero
    // through its whole window.
    int leading_order() const {
        for (size_t k = 0; k < c_.size(); ++k)
            if (c_[k] != 0) return static_cast<int>(k);
        return -1;
    }

    SeriesQ operator+(const SeriesQ& o) const {
        int ord = std::min(order_, o.order_);
        std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
        for (size_t k = 0; k < v.size(); ++k) v[k] = coeff(int(k)) + o.coeff(int(k));
        return SeriesQ(std::move(v), ord);
    }
    SeriesQ operator-(const SeriesQ& o) const { return *this + (o * Rational(-1)); }
    SeriesQ operator-() const { return *this * Rational(-1); }

    SeriesQ operator*(const Rational& s) const {
        std::vector<Rational> v = c_;
        for (auto& c : v) c *= s;
        return SeriesQ(std::move(v), order_);
    }

    SeriesQ operator*(const SeriesQ& o) const {
        int ord = std::min(order_, o.order_);
        if (c_.empty() || o.c_.empty()) return SeriesQ(std::vector<Rational>{}, ord);
        size_t cap = c_.size() + o.c_.size() - 1;
        if (ord != EXACT) cap = std::min(cap, static_cast<size_t>(ord) + 1);
        std::vector<Rational> v(cap, Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; j < o.c_.size() && i + j < cap; ++j) {
                if (o.c_[j] == 0) continue;
                v[i + j] += c_[i] * o.c_[j];
            }
        }
        return SeriesQ(std::move(v), ord);
    }

    SeriesQ derivative() const {
        std::vector<Rational> v;
        for (size_t k = 1; k < c_.size(); ++k) v.push_back(c_[k] * Rational(long(k)));
        int ord = order_ == EXACT ? EXACT : order_ - 1;
        return SeriesQ(std::move(v), ord);
    }

    // Antiderivative without constant term.
    SeriesQ antiderivative() const {
        std::vector<Rational> v(c_.size() + 1, Rational(0));
        for (size_t k = 0; k < c_.size(); ++k) v[k + 1] = c_[k] / Rational(long(k) + 1);
        int ord = order_ == EXACT ? EXACT : order_ + 1;
        return SeriesQ(std::move(v), ord);
    }

    // Truncate the coefficient window (and the trust order) at `ord`.
    SeriesQ truncated(int ord) const {
        std::vector<Rational> v = c_;
        if (v.size() > static_cast<size_t>(ord) + 1) v.resize(static_cast<size_t>(ord) + 1);
        return SeriesQ(std::move(v), std::min(order_, ord));
    }

    // Series inverse of a unit (nonzero constant term), to order `ord`.
    SeriesQ inverse(int ord) const {
        if (coeff(0) == 0) throw SingularError("SeriesQ::inverse: zero constant term");
        int n = std::min(ord, std::min(order_, ord));
        std::vector<Rational> v(static_cast<size_t>(n) + 1, Rational(0));
        v[0] = Rational(1) / c_[0];
        for (int k = 1; k <= n; ++k) {
            Rational acc(0);
            for (int j = 1; j <= k; ++j) acc += coeff(j) * v[static_cast<size_t>(k - j)];
            v[static_cast<size_t>(k)] = -acc / c_[0];
        }
        return SeriesQ(std::move(v), std::min(order_, ord));
    }

    SeriesQ divided_by(const SeriesQ& o, int ord) const { return (*this * o.inverse(ord)).truncated(ord); }

    Rational evaluate(const Rational& t) const {
        Rational acc(0);
        for (size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
        return acc;
    }

    // Taylor shift t -> t + a (exact on the stored window).
    SeriesQ shifted(const Rational& a) const {
        if (a == 0) return *this;
        size_t n = c_.size();
        std::vector<Rational> v(n, Rational(0));
        // binomial expansion of each monomial, row by row
        std::vector<Rational> apow(n, Rational(1));
        for (size_t k = 1; k < n; ++k) apow[k] = apow[k - 1] * a;
        for (size_t k = 0; k < n; ++k) {
            if (c_[k] == 0) continue;
            Rational binom(1);
            for (size_t j = 0; j <= k; ++j) {
                v[j] += c_[k] * binom * apow[k - j];
                binom = binom * Rational(long(k - j)) / Rational(long(j) + 1);
            }
        }
        return SeriesQ(std::move(v), order_);
    }

    friend bool operator==(const SeriesQ& a, const SeriesQ& b) {
        size_t n = std::max(a.c_.size(), b.c_.size());
        for (size_t k = 0; k < n; ++k)
            if (a.coeff(int(k)) != b.coeff(int(k))) return false;
        return true;
    }
    friend bool operator!=(const SeriesQ& a, const SeriesQ& b) { return !(a == b); }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        if (order_ != EXACT && c_.size() > static_cast<size_t>(order_) + 1)
            c_.resize(static_cast<size_t>(order_) + 1);
    }
    std::vector<Rational> c_;
    int order_;
};

inline SeriesQ operator*(const Rational& s, const SeriesQ& f) { return f * s; }

// t^(-pole) * ser; the Laurent shape produced by dividing series with a zero
// of finite order at t = 0.
struct LaurentQ {
    int pole = 0;
    SeriesQ ser;

    // num/den where den has a finite-order zero at 0.
    static LaurentQ ratio(const SeriesQ& num, const SeriesQ& den, int ord) {
        int kd = den.leading_order();
        if (kd < 0) throw SingularError("LaurentQ::ratio: division by zero series");
        int kn = num.leading_order();
        if (kn < 0) return LaurentQ{0, SeriesQ(std::vector<Rational>{}, ord)};
        int drop = std::min(kn, kd);
        auto shift_down = [](const SeriesQ& f, int k, int ord2) {
            std::vector<Rational> v;
            for (int j = k; j <= f.degree(); ++j) v.push_back(f.coeff(j));
            int o = f.order() == SeriesQ::EXACT ? SeriesQ::EXACT : f.order() - k;
            return SeriesQ(std::move(v), std::min(o, ord2));
        };
        SeriesQ n2 = shift_down(num, drop, ord);
        SeriesQ d2 = shift_down(den, kd, ord);
        SeriesQ q = n2.divided_by(d2, ord);
        return LaurentQ{kd - drop, q};
    }

    LaurentQ operator*(const LaurentQ& o) const { return {pole + o.pole, ser * o.ser}; }
    LaurentQ operator*(const Rational& s) const { return {pole, ser * s}; }

    LaurentQ operator+(const LaurentQ& o) const {
        int p = std::max(pole, o.pole);
        return {p, raise(p - pole) + o.raise(p - o.pole)};
    }
    LaurentQ operator-(const LaurentQ& o) const { return *this + (o * Rational(-1)); }

    // multiply by t^k (k >= 0), reducing the pole
    SeriesQ raise(int k) const {
        if (k == 0) return ser;
        std::vector<Rational> v(static_cast<size_t>(k), Rational(0));
        for (int j = 0; j <= ser.degree(); ++j) v.push_back(ser.coeff(j));
        int o = ser.order() == SeriesQ::EXACT ? SeriesQ::EXACT : ser.order() + k;
        return SeriesQ(std::move(v), o);
    }

    // the plain series when there is no pole left
    SeriesQ as_series() const {
        if (pole > 0 && ser.leading_order() >= 0 && ser.leading_order() < pole)
            throw SingularError("LaurentQ::as_series: genuine pole");
        if (pole <= 0) return raise(-pole);
        // cancel t^pole against the leading zeros
        std::vector<Rational> v;
        for (int j = pole; j <= ser.degree(); ++j) v.push_back(ser.coeff(j));
        int o = ser.order() == SeriesQ::EXACT ? SeriesQ::EXACT : ser.order() - pole;
        return SeriesQ(std::move(v), o);
    }
};

// p-adic evaluation guard: the last `guard_terms` retained coefficients must
// contribute below p^(-precision) at the evaluation point.
inline Rational evaluate_guarded(const SeriesQ& f, const Rational& t, const Valuation& v,
                                 int precision = 8, int guard_terms = 4) {
    if (!v.is_infinity() && f.order() != SeriesQ::EXACT) {
        const Integer& p = v.prime_value();
        Rational bound = rat_pow(Rational(p), -precision);
        int hi = f.order();
        for (int k = std::max(0, hi - guard_terms + 1); k <= hi; ++k) {
            Rational term = f.coeff(k) * rat_pow(t, k);
            if (padic_norm(term, p) > bound)
                throw ConvergenceError("series evaluation outside the p-adic convergence guard (p=" +
                                       p.get_str() + ")");
        }
    }
    return f.evaluate(t);
}

}  // namespace padelic

#endif
