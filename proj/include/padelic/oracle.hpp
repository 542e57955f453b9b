#ifndef PADELIC_ORACLE_HPP
#define PADELIC_ORACLE_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "gauss_integrals.hpp"

namespace padelic {

// Ball |x|_p <= p^N sampled on cosets of p^M Z_p.
struct BallSpec {
    long radius_exponent = 2;      // N
    long resolution_exponent = 4;  // M >= 1

    void validate() const {
        if (resolution_exponent < 1) throw DomainError("BallSpec: M must be >= 1");
    }
};

namespace detail {

// Deterministic blocked-pairwise accumulator: identical results regardless of
// how callers would like to partition the work.
class PairwiseSum {
  public:
    void add(std::complex<double> z) {
        block_ += z;
        if (++in_block_ == kBlock) flush();
    }
    std::complex<double> total() {
        flush();
        std::complex<double> acc{0.0, 0.0};
        for (auto b : blocks_) acc += b;
        return acc;
    }

  private:
    static constexpr int kBlock = 4096;
    void flush() {
        if (in_block_ == 0) return;
        blocks_.push_back(block_);
        block_ = {0.0, 0.0};
        in_block_ = 0;
        // fold pairs so the reduction tree stays balanced
        while (blocks_.size() >= 2 && (blocks_.size() & 1) == 0) {
            auto hi = blocks_.back();
            blocks_.pop_back();
            blocks_.back() += hi;
        }
    }
    std::complex<double> block_{0.0, 0.0};
    int in_block_ = 0;
    std::vector<std::complex<double>> blocks_;
};

// e^(2 pi i r / P) with two table lookups.
class RootTable {
  public:
    explicit RootTable(uint64_t P) : P_(P) {
        lo_size_ = 1;
        while (lo_size_ * lo_size_ < P) ++lo_size_;
        uint64_t hi_size = P / lo_size_ + 2;
        lo_.resize(lo_size_);
        hi_.resize(hi_size);
        for (uint64_t s = 0; s < lo_size_; ++s) {
            double t = 2.0 * M_PI * double(s) / double(P);
            lo_[s] = {std::cos(t), std::sin(t)};
        }
        for (uint64_t q = 0; q < hi_size; ++q) {
            double t = 2.0 * M_PI * double(q * lo_size_ % P) / double(P);
            hi_[q] = {std::cos(t), std::sin(t)};
        }
    }
    std::complex<double> at(uint64_t r) const { return hi_[r / lo_size_] * lo_[r % lo_size_]; }

  private:
    uint64_t P_, lo_size_;
    std::vector<std::complex<double>> lo_, hi_;
};

// c as an integer residue mod p^E, assuming v_p(c) >= -E.
inline uint64_t coeff_mod(const Rational& c, const Integer& p, long E) {
    Rational scaled = c * rat_pow(Rational(p), E);
    if (scaled == 0) return 0;
    if (*padic_valuation(scaled, p) < 0)
        throw DomainError("coeff_mod: scale exponent too small");
    Integer r = rational_mod_pk(scaled, p, static_cast<unsigned long>(E));
    return r.get_ui();
}

}  // namespace detail

// Finite residue sum for int over the ball |x_i|_p <= p^N of
// chi_p(x^T alpha x + beta^T x), at coset resolution p^M:
//   p^(-nM) * sum over x in p^(-N) (Z/p^(N+M))^n.
// Exact once M clears the local-constancy scale; used as the floating-point
// oracle for the closed forms. n <= 2.
inline std::complex<double> brute_force_ball_integral(const Integer& p, const QuadraticIntegrand& q,
                                                      const BallSpec& spec,
                                                      double budget = 1e7) {
    q.validate();
    spec.validate();
    size_t n = q.dim();
    if (n < 1 || n > 2) throw DomainError("brute_force_ball_integral: n must be 1 or 2");
    long N = spec.radius_exponent, M = spec.resolution_exponent;
    double terms = std::pow(p.get_d(), double(n) * double(N + M));
    if (terms > budget) throw BudgetError("brute_force_ball_integral: term budget exceeded");

    // x_i = p^(-N) k_i; the phase is (sum C_ij k_i k_j + sum B_i k_i)/p^E mod 1
    long E = 0;
    auto track = [&](const Rational& c, long scale) {
        if (c == 0) return;
        long v = *padic_valuation(c, p) - scale;
        if (-v > E) E = -v;
    };
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) track(q.alpha(i, j), 2 * N);
        track(q.beta[i], N);
    }
    uint64_t P = 1;
    for (long i = 0; i < E; ++i) P *= p.get_ui();
    uint64_t K = 1;  // p^(N+M), number of representatives per axis
    for (long i = 0; i < N + M; ++i) K *= p.get_ui();

    detail::RootTable table(P);
    detail::PairwiseSum sum;
    auto cmod = [&](const Rational& c, long scale) {
        return detail::coeff_mod(c * rat_pow(Rational(p), -scale), p, E);
    };

    if (n == 1) {
        uint64_t C2 = cmod(q.alpha(0, 0), 2 * N), C1 = cmod(q.beta[0], N);
        // r(k) = C2 k^2 + C1 k mod P, via second differences
        uint64_t r = 0, d = (C2 + C1) % P, dd = (2 * C2) % P;
        for (uint64_t k = 0; k < K; ++k) {
            sum.add(table.at(r));
            r = (r + d) % P;
            d = (d + dd) % P;
        }
    } else {
        uint64_t C11 = cmod(q.alpha(0, 0), 2 * N), C22 = cmod(q.alpha(1, 1), 2 * N);
        uint64_t C12 = cmod(q.alpha(0, 1) + q.alpha(1, 0), 2 * N);
        uint64_t B1 = cmod(q.beta[0], N), B2 = cmod(q.beta[1], N);
        for (uint64_t k1 = 0; k1 < K; ++k1) {
            uint64_t k1m = k1 % P;
            uint64_t base = (C11 % P) * k1m % P * k1m % P;
            base = (base + (B1 % P) * k1m) % P;
            uint64_t cross = (C12 % P) * k1m % P;
            // over k2: r = base + C22 k2^2 + (cross + B2) k2
            uint64_t r = base, d = (C22 + cross + B2) % P, dd = (2 * C22) % P;
            for (uint64_t k2 = 0; k2 < K; ++k2) {
                sum.add(table.at(r));
                r = (r + d) % P;
                d = (d + dd) % P;
            }
        }
    }
    double weight = std::pow(p.get_d(), -double(n) * double(M));
    return sum.total() * weight;
}

}  // namespace padelic

#endif
