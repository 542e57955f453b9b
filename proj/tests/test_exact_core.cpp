#include <catch2/catch_amalgamated.hpp>

#include "padelic/padic.hpp"
#include "padelic/phase.hpp"
#include "padelic/prng.hpp"

using namespace padelic;

TEST_CASE("rational parsing and printing round-trip") {
    CHECK(rat_to_string(rat_from_string("7/4")) == "7/4");
    CHECK(rat_to_string(rat_from_string("-6/4")) == "-3/2");
    CHECK(rat_to_string(rat_from_string("5")) == "5");
    CHECK(rat_to_string(Rational(0)) == "0");
    CHECK_THROWS_AS(rat_from_string("x/y"), DomainError);
    CHECK_THROWS_AS(rat_from_string("1/0"), DomainError);
}

TEST_CASE("p-adic valuation") {
    Integer p2(2), p3(3), p7(7);
    CHECK(*padic_valuation(Rational(12), p2) == 2);
    CHECK(*padic_valuation(Rational(1), p7) == 0);
    CHECK(*padic_valuation(make_rational(7, 9), p3) == -2);
    CHECK(!padic_valuation(Rational(0), p3).has_value());
    CHECK_THROWS_AS(padic_valuation(Rational(1), Integer(6)), DomainError);
}

TEST_CASE("norms") {
    CHECK(padic_norm(Rational(12), Integer(2)) == make_rational(1, 4));
    CHECK(norm_v(make_rational(-3, 5), Valuation::infinity()) == make_rational(3, 5));
    CHECK(padic_norm(Rational(0), Integer(3)) == 0);
}

TEST_CASE("fractional part") {
    CHECK(fractional_part(Rational(5), Integer(3)) == 0);
    CHECK(fractional_part(make_rational(1, 2), Integer(2)) == make_rational(1, 2));
    CHECK(fractional_part(make_rational(7, 4), Integer(2)) == make_rational(3, 4));
    // subtracting the fractional part leaves a p-adic integer
    Prng rng(7);
    for (int i = 0; i < 50; ++i) {
        Rational x = rng.nonzero_rational(500, 500);
        for (long p : {2L, 3L, 5L}) {
            Rational r = fractional_part(x, Integer(p));
            CHECK(r >= 0);
            CHECK(r < 1);
            auto v = padic_valuation(x - r, Integer(p));
            CHECK((!v || *v >= 0));
        }
    }
}

TEST_CASE("digit expansions") {
    auto d = padic_digits(make_rational(7, 4), Integer(2), 3);
    CHECK(d.start_exponent == -2);
    REQUIRE(d.digits.size() == 3);
    CHECK((d.digits[0] == 1 && d.digits[1] == 1 && d.digits[2] == 1));

    d = padic_digits(make_rational(-1, 2), Integer(3), 3);
    CHECK(d.start_exponent == 0);
    CHECK((d.digits[0] == 1 && d.digits[1] == 1 && d.digits[2] == 1));

    d = padic_digits(Rational(1), Integer(5), 2);
    CHECK(d.start_exponent == 0);
    CHECK((d.digits[0] == 1 && d.digits[1] == 0));

    CHECK(padic_digits(Rational(0), Integer(5), 4).digits.empty());
}

TEST_CASE("digit reconstruction leaves high valuation") {
    Prng rng(11);
    for (int i = 0; i < 40; ++i) {
        Rational x = rng.nonzero_rational(300, 300);
        for (long pl : {2L, 3L, 7L}) {
            Integer p(pl);
            long count = 6;
            auto d = padic_digits(x, p, count);
            Rational acc(0);
            for (long k = 0; k < count; ++k)
                acc += Rational(d.digits[size_t(k)]) * rat_pow(Rational(p), d.start_exponent + k);
            auto v = padic_valuation(x - acc, p);
            CHECK((!v || *v >= d.start_exponent + count));
        }
    }
}

TEST_CASE("digits agree with the fractional part") {
    Prng rng(13);
    for (int i = 0; i < 40; ++i) {
        Rational x = rng.nonzero_rational(200, 64);
        Integer p(3);
        auto m = padic_valuation(x, p);
        Rational frac = fractional_part(x, p);
        Rational acc(0);
        if (m && *m < 0) {
            auto d = padic_digits(x, p, -*m);
            for (long k = 0; k < -*m; ++k)
                acc += Rational(d.digits[size_t(k)]) * rat_pow(Rational(p), *m + k);
        }
        CHECK(acc == frac);
    }
}

TEST_CASE("p-adic linear order") {
    Integer p3(3);
    CHECK(padic_compare(Rational(9), Rational(1), p3) == Ordering::LT);
    CHECK(padic_compare(Rational(5), Rational(5), p3) == Ordering::EQ);
    CHECK(padic_compare(Rational(1), Rational(2), p3) == Ordering::LT);

    // strict total order on a batch of distinct rationals
    Prng rng(17);
    std::vector<Rational> xs;
    for (int i = 0; i < 25; ++i) xs.push_back(rng.rational(100, 40));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = 0; j < xs.size(); ++j) {
            auto ord = padic_compare(xs[i], xs[j], p3);
            auto rev = padic_compare(xs[j], xs[i], p3);
            if (i == j) {
                CHECK(ord == Ordering::EQ);
            } else {
                CHECK(ord != Ordering::EQ);
                CHECK(((ord == Ordering::LT) == (rev == Ordering::GT)));
            }
        }
    // transitivity
    for (size_t a = 0; a < xs.size(); ++a)
        for (size_t b = 0; b < xs.size(); ++b)
            for (size_t c = 0; c < xs.size(); ++c) {
                if (padic_compare(xs[a], xs[b], p3) == Ordering::LT &&
                    padic_compare(xs[b], xs[c], p3) == Ordering::LT)
                    CHECK(padic_compare(xs[a], xs[c], p3) == Ordering::LT);
            }
}

TEST_CASE("norm multiplicativity and ultrametric inequality") {
    Prng rng(23);
    std::vector<Valuation> vs = {Valuation::infinity(), Valuation::prime(2), Valuation::prime(3),
                                 Valuation::prime(5), Valuation::prime(7)};
    for (int i = 0; i < 60; ++i) {
        Rational x = rng.rational(400, 60), y = rng.rational(400, 60);
        for (const auto& v : vs) {
            CHECK(norm_v(x * y, v) == norm_v(x, v) * norm_v(y, v));
            if (!v.is_infinity()) {
                Rational nx = norm_v(x, v), ny = norm_v(y, v);
                Rational ns = norm_v(x + y, v);
                CHECK(ns <= std::max(nx, ny));
                if (nx != ny) CHECK(ns == std::max(nx, ny));
            }
        }
    }
}

TEST_CASE("fractional parts of x and -x") {
    Prng rng(29);
    for (int i = 0; i < 60; ++i) {
        Rational x = rng.rational(300, 90);
        for (long pl : {2L, 3L, 5L}) {
            Integer p(pl);
            Rational s = fractional_part(x, p) + fractional_part(-x, p);
            CHECK((s == 0 || s == 1));
            auto v = padic_valuation(x, p);
            bool integral = !v || *v >= 0;
            CHECK((s == 0) == integral);
        }
    }
}

TEST_CASE("unit phases and amplitudes") {
    UnitPhase a(make_rational(3, 4)), b(make_rational(1, 2));
    CHECK((a + b).value() == make_rational(1, 4));
    CHECK((-a).value() == make_rational(1, 4));
    CHECK(UnitPhase(make_rational(9, 4)).value() == make_rational(1, 4));

    Amplitude z(make_rational(1, 2), a);
    Amplitude w(Rational(3), b);
    CHECK((z * w).mag_sq() == make_rational(3, 2));
    CHECK((z * w).phase().value() == make_rational(1, 4));
    CHECK(z.conj().conj() == z);
    CHECK(Amplitude::zero().phase() == UnitPhase());
    CHECK_THROWS_AS(Amplitude(Rational(-1), a), DomainError);

    // |a*b|^2 = |a|^2 |b|^2 and commutativity/associativity on random data
    Prng rng(31);
    for (int i = 0; i < 30; ++i) {
        Amplitude u(rat_abs(rng.rational(40, 9)), UnitPhase(rng.rational(16, 16)));
        Amplitude v(rat_abs(rng.rational(40, 9)), UnitPhase(rng.rational(16, 16)));
        Amplitude t(rat_abs(rng.rational(40, 9)), UnitPhase(rng.rational(16, 16)));
        CHECK((u * v).mag_sq() == u.mag_sq() * v.mag_sq());
        CHECK(u * v == v * u);
        CHECK((u * v) * t == u * (v * t));
        CHECK(u.conj().mag_sq() == u.mag_sq());
    }
}

TEST_CASE("primality checks") {
    CHECK(is_prime(Integer(2)));
    CHECK(is_prime(Integer(97)));
    CHECK(!is_prime(Integer(1)));
    CHECK(!is_prime(Integer(91)));
    CHECK(is_prime(Integer("32416190071")));
    CHECK_THROWS_AS(Valuation::prime(6), DomainError);
}
