#ifndef PADELIC_TEST_ORACLES_HPP
#define PADELIC_TEST_ORACLES_HPP

#include <complex>
#include <set>
#include <vector>

#include "padelic/oracle.hpp"

// Independent oracles used only by the test suites. Each one recomputes a
// quantity along a different route than the library implementation.
namespace padelic::test_oracles {

// Normalized quadratic Gauss sum: sum_{x mod p} exp(2 pi i u x^2 / p) / sqrt(p).
inline std::complex<double> normalized_gauss_sum(long p, long u) {
    std::complex<double> acc{0.0, 0.0};
    for (long x = 0; x < p; ++x) {
        double t = 2.0 * M_PI * double((u % p + p) * x % p * x % p) / double(p);
        acc += std::complex<double>(std::cos(t), std::sin(t));
    }
    return acc / std::sqrt(double(p));
}

// lambda_v(a) recovered from the stabilized ball sum of chi_p(a x^2):
// integral = lambda_p(a) |2a|^(-1/2).
inline std::complex<double> lambda_from_ball_sum(const Integer& p, const Rational& a) {
    long va = *padic_valuation(a, p);
    long N = std::max<long>(1, va / 2 + 2);
    long M = std::max<long>(1, 2 * N - va + (p == 2 ? 2 : 1));
    QuadraticIntegrand q{Matrix<Rational>(1, 1), {Rational(0)}};
    q.alpha(0, 0) = a;
    auto val = brute_force_ball_integral(p, q, BallSpec{N, M}, 5e7);
    double mod = std::sqrt(norm_v(2 * a, Valuation::prime(p)).get_d());
    return val * mod;
}

// Hilbert symbol by the solvability definition: a x^2 + b y^2 = z^2 has a
// nontrivial solution over Q_p iff it has a primitive one modulo p^3 (odd p)
// or 2^6 (p = 2), after reducing a, b to integers with v_p in {0, 1}.
// Small p and small arguments only.
inline int hilbert_by_search(const Integer& p, const Rational& a0, const Rational& b0) {
    auto reduce = [&](const Rational& q) {
        Rational r = q * Rational(q.get_den() * q.get_den());  // same square class, integral
        long v = *padic_valuation(r, p);
        return Rational(r * rat_pow(Rational(p), -(v - (v % 2 != 0 ? 1 : 0))));
    };
    Integer a = reduce(a0).get_num(), b = reduce(b0).get_num();
    unsigned long e = (p == 2) ? 6 : 3;
    Integer mod = int_pow(p, e);
    long m = mod.get_si();
    long am = Integer((a % mod + mod) % mod).get_si();
    long bm = Integer((b % mod + mod) % mod).get_si();
    long pl = p.get_si();
    std::vector<char> square(static_cast<size_t>(m), 0);
    for (long z = 0; z < m; ++z) square[size_t(z * z % m)] = 1;
    for (long x = 0; x < m; ++x)
        for (long y = 0; y < m; ++y) {
            if (x % pl == 0 && y % pl == 0) continue;
            if (square[size_t((am * x % m * x % m + bm * y % m * y % m) % m)]) return 1;
        }
    return -1;
}

}  // namespace padelic::test_oracles

#endif
