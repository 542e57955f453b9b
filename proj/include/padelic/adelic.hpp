#ifndef PADELIC_ADELIC_HPP
#define PADELIC_ADELIC_HPP

#include <map>
#include <set>

#include "kernel.hpp"

namespace padelic {

namespace detail {

// Odd primes dividing numerator or denominator.
inline std::set<Integer> odd_support(const Rational& x) {
    std::set<Integer> out;
    auto collect = [&](Integer n) {
        n = abs(n);
        for (Integer f(3); f * f <= n; f += 2)
            while (mpz_divisible_p(n.get_mpz_t(), f.get_mpz_t())) {
                out.insert(f);
                n /= f;
            }
        if (n > 2) out.insert(n);
    };
    collect(x.get_num());
    collect(x.get_den());
    return out;
}

}  // namespace detail

// |x|_inf * prod_p |x|_p over the support of x; identically 1 on Q*.
inline Rational norm_product(const Rational& x) {
    if (x == 0) throw DomainError("norm_product: x must be nonzero");
    Rational acc = rat_abs(x);
    acc *= padic_norm(x, Integer(2));
    for (const auto& p : detail::odd_support(x)) acc *= padic_norm(x, p);
    return acc;
}

// Phase of lambda_inf(x) * prod_p lambda_p(x); only the infinite place, p = 2
// and odd p with odd valuation contribute. Identically trivial on Q*.
inline UnitPhase lambda_product(const Rational& x) {
    if (x == 0) throw DomainError("lambda_product: x must be nonzero");
    UnitPhase acc = lambda_v(Valuation::infinity(), x);
    acc += lambda_v(Valuation::prime(2), x);
    for (const auto& p : detail::odd_support(x)) {
        if (*padic_valuation(x, p) % 2 != 0) acc += lambda_v(Valuation::prime(p), x);
    }
    return acc;
}

// (x,y)_inf * prod_p (x,y)_p over the joint support; identically +1.
inline int hilbert_product(const Rational& x, const Rational& y) {
    if (x == 0 || y == 0) throw DomainError("hilbert_product: arguments must be nonzero");
    int acc = hilbert(Valuation::infinity(), x, y) * hilbert(Valuation::prime(2), x, y);
    auto sup = detail::odd_support(x);
    auto sy = detail::odd_support(y);
    sup.insert(sy.begin(), sy.end());
    for (const auto& p : sup) acc *= hilbert(Valuation::prime(p), x, y);
    return acc;
}

// Phase of chi_inf(x) * prod_p chi_p(x); only primes dividing the denominator
// contribute. Identically trivial on Q.
inline UnitPhase chi_product(const Rational& x) {
    UnitPhase acc = chi(Valuation::infinity(), x);
    Integer d = x.get_den();
    if (d % 2 == 0) acc += chi(Valuation::prime(2), x);
    for (const auto& p : detail::odd_support(Rational(d))) acc += chi(Valuation::prime(p), x);
    return acc;
}

// Adele with finite support: a real component, explicitly listed finite
// components, and a tail value carried by every unlisted prime (which must be
// a p-adic integer there). The principal embedding of q lists the primes
// dividing den(q).
class Adele {
  public:
    static Adele principal(const Rational& q) {
        Adele a;
        a.real_ = q;
        a.tail_ = q;
        a.normalize();
        return a;
    }

    static Adele make(const Rational& real, std::map<Integer, Rational> finite,
                      const Rational& tail = Rational(0)) {
        Adele a;
        a.real_ = real;
        a.finite_ = std::move(finite);
        a.tail_ = tail;
        for (const auto& [p, _] : a.finite_)
            if (!is_prime(p)) throw DomainError("Adele: key " + p.get_str() + " is not prime");
        a.normalize();
        return a;
    }

    const Rational& real_part() const { return real_; }
    const std::map<Integer, Rational>& finite_part() const { return finite_; }

    Rational component(const Valuation& v) const {
        if (v.is_infinity()) return real_;
        auto it = finite_.find(v.prime_value());
        return it != finite_.end() ? it->second : tail_;
    }

    Adele operator+(const Adele& o) const { return combine(o, std::plus<Rational>()); }
    Adele operator*(const Adele& o) const { return combine(o, std::multiplies<Rational>()); }

    friend bool operator==(const Adele& a, const Adele& b) {
        if (a.real_ != b.real_ || a.tail_ != b.tail_) return false;
        return a.finite_ == b.finite_;
    }

  private:
    template <typename Op>
    Adele combine(const Adele& o, Op op) const {
        Adele out;
        out.real_ = op(real_, o.real_);
        out.tail_ = op(tail_, o.tail_);
        std::set<Integer> keys;
        for (const auto& [p, _] : finite_) keys.insert(p);
        for (const auto& [p, _] : o.finite_) keys.insert(p);
        for (const auto& p : keys) {
            Valuation v = Valuation::prime(p);
            out.finite_[p] = op(component(v), o.component(v));
        }
        out.normalize();
        return out;
    }

    // List every prime where the tail value is not a p-adic integer; drop
    // listed entries that agree with the tail.
    void normalize() {
        Integer d = tail_.get_den();
        std::set<Integer> need;
        if (d % 2 == 0) need.insert(Integer(2));
        for (const auto& p : detail::odd_support(Rational(d))) need.insert(p);
        for (const auto& p : need)
            if (!finite_.count(p)) finite_[p] = tail_;
        for (auto it = finite_.begin(); it != finite_.end();) {
            if (it->second == tail_ && !need.count(it->first))
                it = finite_.erase(it);
            else
                ++it;
        }
    }

    Rational real_ = Rational(0);
    std::map<Integer, Rational> finite_;
    Rational tail_ = Rational(0);
};

// Vacuum stability at a finite place (n = 1): the unit ball integral of the
// kernel against the vacuum must reproduce the vacuum indicator at
// representative norms {1/p, 1, p}. Exact, with an optional residue-sum
// cross-check of the in-ball case.
struct VacuumReport {
    bool holds = false;
    std::vector<std::pair<Rational, Amplitude>> integrals;  // (x2, value)
};

inline VacuumReport vacuum_check(const KernelContext& ctx, const Integer& p, const Rational& t1,
                                 const Rational& t2, const Rational& h,
                                 bool cross_check = false, double budget = 1e7) {
    if (ctx.L.n != 1) throw DomainError("vacuum_check: n must be 1");
    Valuation v = Valuation::prime(p);
    BoundaryData bd{t1, t2, {Rational(0)}, {Rational(0)}};
    PropagatorRequest req{v, bd, h};
    KernelResult k = kernel_v(ctx, req);

    VacuumReport rep;
    rep.holds = true;
    std::vector<Rational> xs = {Rational(p), Rational(1), Rational(1) / Rational(p)};
    for (const auto& x2 : xs) {
        Amplitude got = kernel_ball_integral(k, p, h, x2, 0);
        Amplitude want = omega(norm_v(x2, v)) ? Amplitude::one() : Amplitude::zero();
        if (!(got == want)) rep.holds = false;
        rep.integrals.emplace_back(x2, got);
    }

    if (cross_check) {
        // residue-sum version of the x2 = 1 case
        const ClassicalAction& f = k.form;
        long M = 4;
        double terms = std::pow(p.get_d(), double(M));
        if (terms > budget) throw BudgetError("vacuum_check: budget exceeded");
        Integer reps = int_pow(p, static_cast<unsigned long>(M));
        std::complex<double> acc{0.0, 0.0};
        double w = rat_pow(Rational(p), -M).get_d();
        double mag = std::sqrt(k.amp.mag_sq().get_d());
        UnitPhase nphase = k.amp.phase() - chi(v, -k.action / h);
        for (Integer j(0); j < reps; ++j) {
            Rational x1(j);
            acc += mag * (nphase + chi(v, -f.evaluate({Rational(1)}, {x1}) / h)).to_complex() * w;
        }
        Amplitude exact = kernel_ball_integral(k, p, h, Rational(1), 0);
        if (std::abs(acc - exact.to_complex()) > 1e-9)
            throw Error("vacuum_check: residue-sum cross-check failed");
    }
    return rep;
}

// Group condition at a finite place (n = 1): residue-sum deviation of
// int_{Z_p} K(x2,t2; x,tm) K(x,tm; x1,t1) dx from K(x2,t2; x1,t1).
inline double group_condition_check(const KernelContext& ctx, const Integer& p, const Rational& t1,
                                    const Rational& tm, const Rational& t2, const Rational& h,
                                    long resolution = 4, double budget = 1e7) {
    if (ctx.L.n != 1) throw DomainError("group_condition_check: n must be 1");
    Valuation v = Valuation::prime(p);
    auto kernel_for = [&](const Rational& a, const Rational& b) {
        BoundaryData bd{a, b, {Rational(0)}, {Rational(0)}};
        PropagatorRequest req{v, bd, h};
        return kernel_v(ctx, req);
    };
    KernelResult k21 = kernel_for(t1, tm), k32 = kernel_for(tm, t2), k31 = kernel_for(t1, t2);

    auto complex_kernel = [&](const KernelResult& k, const Rational& a, const Rational& b) {
        double mag = std::sqrt(k.amp.mag_sq().get_d());
        UnitPhase nphase = k.amp.phase() - chi(v, -k.action / h);
        return mag * (nphase + chi(v, -k.form.evaluate({a}, {b}) / h)).to_complex();
    };

    double terms = std::pow(p.get_d(), double(resolution));
    if (terms > budget) throw BudgetError("group_condition_check: budget exceeded");
    Integer reps = int_pow(p, static_cast<unsigned long>(resolution));
    double w = rat_pow(Rational(p), -resolution).get_d();

    double worst = 0.0;
    std::vector<Rational> samples = {Rational(0), Rational(1), Rational(p)};
    for (const auto& x2 : samples)
        for (const auto& x1 : samples) {
            std::complex<double> acc{0.0, 0.0};
            for (Integer j(0); j < reps; ++j) {
                Rational x(j);
                acc += complex_kernel(k32, x2, x) * complex_kernel(k21, x, x1) * w;
            }
            worst = std::max(worst, std::abs(acc - complex_kernel(k31, x2, x1)));
        }
    return worst;
}

// Per-valuation kernels over {inf} union P, with the tail certified by
// sampled vacuum checks outside P.
struct AdelicKernelValue {
    std::map<Valuation, Amplitude> per_valuation;
    std::vector<Integer> tail_certificate;
    Amplitude total;
};

inline AdelicKernelValue adelic_kernel(const KernelContext& ctx, const Adele& t1, const Adele& t2,
                                       const Adele& x1, const Adele& x2, const Rational& h,
                                       const std::vector<Integer>& primes, int tail_samples = 3) {
    AdelicKernelValue out;
    out.total = Amplitude::one();
    std::vector<Valuation> places = {Valuation::infinity()};
    for (const auto& p : primes) places.push_back(Valuation::prime(p));
    for (const auto& v : places) {
        BoundaryData bd{t1.component(v), t2.component(v), {x1.component(v)}, {x2.component(v)}};
        if (ctx.L.n != 1) throw DomainError("adelic_kernel: n must be 1");
        PropagatorRequest req{v, bd, h};
        try {
            KernelResult k = kernel_v(ctx, req);
            out.per_valuation[v] = k.amp;
            out.total *= k.amp;
        } catch (const Error& e) {
            throw Error("adelic_kernel at v=" + v.str() + ": " + e.what());
        }
    }
    // tail: sample primes beyond P; the Lagrangian coefficients must be
    // p-adic integers there and the vacuum condition must hold.
    Integer q(2);
    if (!primes.empty()) q = *std::max_element(primes.begin(), primes.end());
    int sampled = 0;
    while (sampled < tail_samples) {
        mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
        bool coeff_ok = true;
        auto check_series = [&](const SeriesQ& s) {
            for (int k = 0; k <= s.degree(); ++k)
                if (padic_norm(s.coeff(k), q) > 1) coeff_ok = false;
        };
        for (size_t i = 0; i < ctx.L.n; ++i)
            for (size_t j = 0; j < ctx.L.n; ++j) {
                check_series(ctx.L.A(i, j));
                check_series(ctx.L.B(i, j));
                check_series(ctx.L.C(i, j));
            }
        for (size_t i = 0; i < ctx.L.n; ++i) {
            check_series(ctx.L.D[i]);
            check_series(ctx.L.E[i]);
        }
        check_series(ctx.L.eps);
        if (!coeff_ok)
            throw DomainError("adelic_kernel: Lagrangian coefficient not integral at sampled p=" +
                              q.get_str());
        auto rep = vacuum_check(ctx, q, t1.component(Valuation::prime(q)),
                                t2.component(Valuation::prime(q)), h);
        if (!rep.holds)
            throw Error("adelic_kernel: tail vacuum check failed at p=" + q.get_str());
        out.tail_certificate.push_back(q);
        ++sampled;
    }
    return out;
}

}  // namespace padelic

#endif
