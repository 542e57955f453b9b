#include <catch2/catch_amalgamated.hpp>

#include "padelic/adelic.hpp"
#include "support/oracles.hpp"

using namespace padelic;
namespace oracles = padelic::test_oracles;

static const std::vector<Valuation> kPlaces = {Valuation::infinity(), Valuation::prime(2),
                                               Valuation::prime(3), Valuation::prime(5),
                                               Valuation::prime(7)};

TEST_CASE("additive characters") {
    CHECK(chi(Valuation::prime(3), make_rational(1, 3)).value() == make_rational(1, 3));
    CHECK(chi(Valuation::prime(5), Rational(7)).value() == 0);
    CHECK(chi(Valuation::infinity(), make_rational(1, 4)).value() == make_rational(3, 4));
}

TEST_CASE("vacuum indicator") {
    CHECK(omega(Rational(1)) == 1);
    CHECK(omega(Rational(3)) == 0);
    CHECK(omega(make_rational(1, 9)) == 1);
    CHECK_THROWS_AS(omega(Rational(-1)), DomainError);
}

TEST_CASE("legendre symbol against exhaustive squares") {
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        std::set<long> squares;
        for (long x = 1; x < p; ++x) squares.insert(x * x % p);
        for (long a = -2 * p; a <= 2 * p; ++a) {
            long r = ((a % p) + p) % p;
            int expect = r == 0 ? 0 : (squares.count(r) ? 1 : -1);
            CHECK(legendre(a, p) == expect);
        }
    }
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(2, 3) == -1);
    CHECK(legendre(1, 11) == 1);
    CHECK_THROWS_AS(legendre(Integer(3), Integer(2)), DomainError);
    CHECK_THROWS_AS(legendre(Integer(3), Integer(9)), DomainError);
}

TEST_CASE("lambda: pinned values") {
    CHECK(lambda_v(Valuation::prime(5), Rational(1)).value() == 0);
    CHECK(lambda_v(Valuation::prime(3), Rational(3)).value() == make_rational(1, 4));
    CHECK(lambda_v(Valuation::infinity(), Rational(-1)).value() == make_rational(1, 8));
    CHECK(lambda_v(Valuation::prime(2), Rational(1)).value() == make_rational(1, 8));
    CHECK(lambda_v(Valuation::prime(7), Rational(0)).value() == 0);  // lambda(0) = 1
}

TEST_CASE("lambda at odd p against the normalized Gauss sum") {
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        for (long u = 1; u < p; ++u) {
            auto expect = oracles::normalized_gauss_sum(p, u);
            auto got = lambda_v(Valuation::prime(p), Rational(p) * Rational(u)).to_complex();
            CHECK(std::abs(expect - got) < 1e-9);
        }
    }
}

TEST_CASE("lambda against the stabilized ball sum, every 2-adic square class") {
    for (long cls : {1L, 3L, 5L, 7L, 2L, 6L, 10L, 14L}) {
        auto expect = oracles::lambda_from_ball_sum(Integer(2), Rational(cls));
        auto got = lambda_v(Valuation::prime(2), Rational(cls)).to_complex();
        INFO("class " << cls);
        CHECK(std::abs(expect - got) < 1e-9);
    }
    // odd p spot checks through the same route, including negative valuations
    for (long p : {3L, 5L}) {
        for (Rational a : {Rational(1), Rational(p), make_rational(1, p), Rational(-2)}) {
            auto expect = oracles::lambda_from_ball_sum(Integer(p), a);
            auto got = lambda_v(Valuation::prime(p), a).to_complex();
            CHECK(std::abs(expect - got) < 1e-9);
        }
    }
}

TEST_CASE("lambda properties") {
    Prng rng(42);
    for (const auto& v : kPlaces) {
        for (int i = 0; i < 120; ++i) {
            Rational x = rng.nonzero_rational(60, 60), y = rng.nonzero_rational(60, 60);
            Rational a = rng.nonzero_rational(12, 12);
            CHECK(lambda_v(v, a * a * x) == lambda_v(v, x));
            CHECK((lambda_v(v, x) + lambda_v(v, -x)).value() == 0);
            if (x + y != 0)
                CHECK(lambda_v(v, x * y / (x + y)) ==
                      lambda_v(v, x) + lambda_v(v, y) - lambda_v(v, x + y));
            UnitPhase lhs = lambda_v(v, x) + lambda_v(v, y);
            UnitPhase rhs = lambda_v(v, Rational(1)) + lambda_v(v, x * y);
            if (hilbert(v, x, y) == -1) rhs += UnitPhase(make_rational(1, 2));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("hilbert symbol: pinned values and axioms") {
    CHECK(hilbert(Valuation::infinity(), Rational(-1), Rational(-1)) == -1);
    for (const auto& v : kPlaces) CHECK(hilbert(v, Rational(1), Rational(-5)) == 1);
    CHECK(hilbert(Valuation::prime(2), Rational(2), Rational(3)) == -1);
    CHECK(hilbert(Valuation::prime(3), Rational(2), Rational(3)) == -1);
    CHECK_THROWS_AS(hilbert(Valuation::prime(3), Rational(0), Rational(1)), DomainError);

    Prng rng(7);
    for (const auto& v : kPlaces) {
        for (int i = 0; i < 80; ++i) {
            Rational a = rng.nonzero_rational(40, 40), b = rng.nonzero_rational(40, 40);
            Rational c = rng.nonzero_rational(40, 40);
            CHECK(hilbert(v, a, b) == hilbert(v, b, a));
            CHECK(hilbert(v, a, b * c) == hilbert(v, a, b) * hilbert(v, a, c));
            CHECK(hilbert(v, a, -a) == 1);
        }
    }
}

TEST_CASE("hilbert symbol against the solvability search") {
    for (long p : {2L, 3L, 5L, 7L}) {
        for (long a = -6; a <= 6; ++a)
            for (long b = -6; b <= 6; ++b) {
                if (a == 0 || b == 0) continue;
                int got = hilbert(Valuation::prime(p), Rational(a), Rational(b));
                int expect = oracles::hilbert_by_search(Integer(p), Rational(a), Rational(b));
                INFO("p=" << p << " a=" << a << " b=" << b);
                CHECK(got == expect);
            }
    }
}

TEST_CASE("big lambda and its factored form") {
    CHECK(big_lambda(Valuation::prime(3), {}).value() == 0);
    CHECK(big_lambda(Valuation::infinity(), {Rational(-1), Rational(-1)}).value() ==
          make_rational(1, 4));
    CHECK(big_lambda(Valuation::prime(3), {Rational(3), Rational(3)}).value() ==
          make_rational(1, 2));
    CHECK(big_lambda_factored(Valuation::prime(3), {Rational(3)}) ==
          lambda_v(Valuation::prime(3), Rational(3)));
    CHECK(big_lambda_factored(Valuation::infinity(), {Rational(-1), Rational(-1)}).value() ==
          make_rational(1, 4));
    // lambda_3(3) lambda_3(1/3) = i * i = -1: both routes give phase 1/2
    CHECK(big_lambda_factored(Valuation::prime(3), {Rational(3), make_rational(1, 3)}).value() ==
          make_rational(1, 2));
    CHECK(big_lambda(Valuation::prime(3), {Rational(3), make_rational(1, 3)}).value() ==
          make_rational(1, 2));
    CHECK_THROWS_AS(big_lambda_factored(Valuation::prime(3), {Rational(0)}), DomainError);

    Prng rng(99);
    for (const auto& v : kPlaces) {
        for (int i = 0; i < 40; ++i) {
            std::vector<Rational> xs;
            int n = int(rng.range(1, 4));
            for (int k = 0; k < n; ++k) xs.push_back(rng.nonzero_rational(30, 30));
            CHECK(big_lambda(v, xs) == big_lambda_factored(v, xs));
        }
    }
}
