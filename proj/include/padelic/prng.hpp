#ifndef PADELIC_PRNG_HPP
#define PADELIC_PRNG_HPP

#include <cstdint>

#include "rational.hpp"

namespace padelic {

// splitmix64: tiny, platform-stable generator so seeded suites are
// byte-reproducible everywhere.
class Prng {
  public:
    explicit Prng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi] inclusive
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    bool coin() { return next() & 1; }

    // nonzero rational with |num| <= max_num, 1 <= den <= max_den
    Rational nonzero_rational(long max_num, long max_den) {
        long n = 0;
        while (n == 0) n = range(-max_num, max_num);
        return make_rational(n, range(1, max_den));
    }

    Rational rational(long max_num, long max_den) {
        return make_rational(range(-max_num, max_num), range(1, max_den));
    }

  private:
    uint64_t state_;
};

}  // namespace padelic

#endif
