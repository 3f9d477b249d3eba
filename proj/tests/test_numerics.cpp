#include <doctest.h>

#include <random>

#include "jnsharp/enclosure.hpp"
#include "jnsharp/errors.hpp"
#include "jnsharp/rational.hpp"

using namespace jnsharp;

namespace {

// |e - ref| <= tol, with ref a decimal string evaluated at 256 bits.
bool agrees(const Enclosure& e, const char* ref, const char* tol) {
    const Enclosure r = Enclosure::from_decimal(ref, ref, 256);
    const Enclosure t = Enclosure::from_decimal(tol, tol, 256);
    const Enclosure d = e - r;
    return certainly_less(d, t) && certainly_less(-t, d);
}

Rational random_rational(std::mt19937_64& rng, long range) {
    const long p = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range;
    const long q = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(range));
    return {p, q};
}

}  // namespace

TEST_CASE("rational parsing accepts fractions, signs and integer powers") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-6/8") == Rational(-3, 4));
    CHECK(Rational::parse("\xE2\x88\x92" "1/2") == Rational(-1, 2));
    CHECK(Rational::parse("1/10^9") == Rational(1, 1000000000));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational(-3, 4).str() == "-3/4");
    CHECK(Rational(8, 4).str() == "2");
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("0.5"), ParseError);
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
}

TEST_CASE("exp and log match independent 30-digit references") {
    const Enclosure one = exp_enclosure(Rational(0), 64);
    CHECK(one.contains(Rational(1)));
    CHECK(one.width() <= std::ldexp(1.0, -60));
    CHECK(agrees(exp_enclosure(Rational(1), 128), "2.71828182845904523536028747135", "1e-29"));
    CHECK(agrees(log_enclosure(Rational(2), 128), "0.693147180559945309417232121458", "1e-29"));
    const Enclosure four_over_e = Enclosure(4L, 160) * exp_enclosure(Rational(-1), 160);
    CHECK(agrees(exp_enclosure(four_over_e, 128), "4.35584126857531533742730927209", "1e-28"));
    const Enclosure zero = log_enclosure(Rational(1), 64);
    CHECK(zero.contains(Rational(0)));
    CHECK(zero.width() <= std::ldexp(1.0, -60));
    CHECK(log_enclosure(exp_enclosure(Rational(3), 128), 128).contains(Rational(3)));
}

TEST_CASE("exp width stays within the stated bound") {
    for (long n = -64; n <= 64; n += 8) {
        const Enclosure e = exp_enclosure(Rational(n, 3), 96);
        const double scale = std::max(1.0, e.hi_double());
        CHECK(e.width() <= std::ldexp(scale, 3 - 96));
    }
}

TEST_CASE("pow_enclosure on integer and fractional exponents") {
    CHECK(pow_enclosure(Enclosure(2L, 64), Rational(2), 64).contains(Rational(4)));
    CHECK(pow_enclosure(Enclosure(Rational(3, 2)), Rational(2), 128).contains(Rational(9, 4)));
    CHECK(agrees(pow_enclosure(Enclosure(2L), Enclosure(Rational(1, 2)), 128),
                 "1.41421356237309504880168872421", "1e-29"));
    CHECK_THROWS_AS(pow_enclosure(Enclosure(-2L), Rational(1, 2), 128), DomainError);
    CHECK_THROWS_AS(log_enclosure(Rational(0), 128), DomainError);
    CHECK_THROWS_AS(exp_enclosure(Rational(1), 16), PreconditionError);
}

TEST_CASE("exp overflow is reported") {
    CHECK_THROWS_AS(exp(Enclosure(Rational(mpz_class("1000000000000000000000"), mpz_class(1)), 64)),
                    OverflowError);
}

TEST_CASE("enclosures contain exact rational results on random inputs") {
    std::mt19937_64 rng(42);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        const Rational a = random_rational(rng, 50);
        Rational b = random_rational(rng, 50);
        if (b.is_zero()) b = Rational(1, 7);
        const int bits = 32 + static_cast<int>(rng() % 200);
        const Enclosure ea(a, bits);
        const Enclosure eb(b, bits);
        REQUIRE((ea + eb).contains(a + b));
        REQUIRE((ea - eb).contains(a - b));
        REQUIRE((ea * eb).contains(a * b));
        REQUIRE((ea / eb).contains(a / b));
        const long n = static_cast<long>(rng() % 17) - 8;
        if (!a.is_zero() || n > 0) {
            REQUIRE(pow(ea, n).contains(pow(a, n)));
        }
        if (a.sign() > 0) {
            REQUIRE(pow_enclosure(ea, Rational(n), bits).contains(pow(a, n)));
        }
        ++checked;
    }
    CHECK(checked == 10000);
}

TEST_CASE("sign is never wrong") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 5000; ++i) {
        const Rational a = random_rational(rng, 1000);
        const Rational b = a + Rational(static_cast<long>(rng() % 3) - 1, 1000000007);
        const Sign s = (Enclosure(a, 40) - Enclosure(b, 40)).sign();
        const int exact = (a - b).sign();
        if (s != Sign::Undetermined) REQUIRE(static_cast<int>(s) == exact);
        if (exact == 0) REQUIRE(s == Sign::Undetermined);
    }
}

TEST_CASE("higher precision refines the enclosure") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const Rational x = random_rational(rng, 20);
        for (int p : {64, 96, 128}) {
            const Enclosure coarse = exp_enclosure(x, p);
            const Enclosure fine = exp_enclosure(x, p + 32);
            REQUIRE(coarse.contains(fine));
            REQUIRE(fine.width() <= coarse.width());
            if (x.sign() > 0) {
                REQUIRE(log_enclosure(x, p).contains(log_enclosure(x, p + 32)));
            }
        }
    }
}

TEST_CASE("precision retry doubles until decided and gives up at the cap") {
    int calls = 0;
    const int bits = with_precision_retry<int>(
        [&](int b) -> std::optional<int> {
            ++calls;
            return b >= 512 ? std::optional<int>(b) : std::nullopt;
        });
    CHECK(bits == 512);
    CHECK(calls == 3);
    CHECK_THROWS_AS(with_precision_retry<int>([](int) -> std::optional<int> { return std::nullopt; }),
                    PrecisionExhausted);
    // e^{1/3}^3 - e is zero; no precision separates it.
    CHECK_THROWS_AS(certified_sign([](int b) {
                        return pow(exp_enclosure(Rational(1, 3), b), 3) - e_const(b);
                    }),
                    PrecisionExhausted);
    CHECK(certified_sign([](int b) { return e_const(b) - Enclosure(Rational(27183, 10000), b); }) == Sign::Negative);
}
