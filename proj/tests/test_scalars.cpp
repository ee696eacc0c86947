#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "perfrd/scalars.hpp"

using namespace perfrd;

namespace {

// Independent oracle: the zeroth base-p digit of C(n, k) computed from the
// full big-integer binomial coefficient.
int lucas_oracle(const mpz_class& n, const mpz_class& k, long p) {
    if (k < 0 || k > n) return 0;
    mpz_class b;
    mpz_bin_ui(b.get_mpz_t(), n.get_mpz_t(), k.get_ui());
    return static_cast<int>(mpz_fdiv_ui(b.get_mpz_t(), static_cast<unsigned long>(p)));
}

LocalizedRational lr(long num, long den = 1) {
    return LocalizedRational(mpz_class(num), mpz_class(den));
}

} // namespace

TEST_CASE("canonical form and arithmetic") {
    CHECK(lr(6, 4) == lr(3, 2));
    CHECK(lr(-6, 4).str() == "-3/2");
    CHECK(lr(0, 7).str() == "0");
    CHECK((lr(1, 3) + lr(1, 3) + lr(1, 3)) == lr(1));
    CHECK((lr(5, 9) * lr(3)) == lr(5, 3));
    CHECK((lr(7, 9) - lr(1, 9)) == lr(2, 3));
    CHECK(lr(1, 2) < lr(2, 3));
    CHECK(lr(-1).sign() == -1);
}

TEST_CASE("parse and print round-trip") {
    for (const char* s : {"0", "5", "-12", "5/9", "-7/27", "1/2"}) {
        CHECK(LocalizedRational::parse(s).str() == s);
    }
    CHECK_THROWS_AS(LocalizedRational::parse("5/3^1"), Error);
    CHECK_THROWS_AS(LocalizedRational::parse("1.5"), Error);
    CHECK_THROWS_AS(LocalizedRational::parse(""), Error);
    CHECK_THROWS_AS(LocalizedRational::parse("2/-3"), Error);
    CHECK_THROWS_AS(LocalizedRational::parse("a/3"), Error);
    // Non-canonical input is accepted and canonicalized.
    CHECK(LocalizedRational::parse("6/4").str() == "3/2");
}

TEST_CASE("p-locality and exponents") {
    CHECK(is_p_local(lr(5, 9), 3));
    CHECK(!is_p_local(lr(5, 6), 3));
    CHECK(is_p_local(lr(7), 2));
    CHECK(pexp(lr(5, 9), 3) == 2);
    CHECK(pexp(lr(4), 3) == 0);
    CHECK_THROWS_AS(pexp(lr(1, 2), 3), Error);
    CHECK(p_valuation(lr(18), 3) == 2);
    CHECK(p_valuation(lr(2, 27), 3) == -3);
    CHECK(pow_p(3, -2) == lr(1, 9));
    CHECK(pow_p(2, 5) == lr(32));
    CHECK_THROWS_AS(require_prime(6), Error);
    CHECK_THROWS_AS(require_prime(1), Error);
    CHECK_NOTHROW(require_prime(2));
    CHECK_NOTHROW(require_prime(13));
}

TEST_CASE("digit expansion") {
    // 7/9 = 2*3^-1 + 1*3^-2.
    auto d = to_digits(lr(7, 9), 3);
    CHECK(d.digits == std::map<long, int>{{-2, 1}, {-1, 2}});
    CHECK(d.value() == lr(7, 9));

    auto z = to_digits(lr(0), 5);
    CHECK(z.digits.empty());
    CHECK(z.value() == lr(0));

    auto n = to_digits(lr(11), 2); // 1011 in base 2
    CHECK(n.digits == std::map<long, int>{{0, 1}, {1, 1}, {3, 1}});

    CHECK_THROWS_AS(to_digits(lr(-1), 3), Error);
    CHECK_THROWS_AS(to_digits(lr(1, 2), 3), Error);

    // Round-trip on random p-local values.
    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
        long p = (i % 3 == 0) ? 2 : (i % 3 == 1) ? 3 : 5;
        long numv = static_cast<long>(rng() % 100000);
        long e = static_cast<long>(rng() % 5);
        LocalizedRational x = lr(numv) * pow_p(p, -e);
        CHECK(to_digits(x, p).value() == x);
    }
}

TEST_CASE("lucas digit against big-integer binomials, integer arguments") {
    std::mt19937_64 rng(7);
    for (long p : {2L, 3L, 5L, 7L}) {
        for (int iter = 0; iter < 200; ++iter) {
            long n = static_cast<long>(rng() % 400);
            long k = static_cast<long>(rng() % 400);
            CHECK(lucas_digit(lr(n), lr(k), p) == lucas_oracle(n, k, p));
        }
    }
}

TEST_CASE("lucas digit on N[1/p]: scale independence and binomial oracle") {
    std::mt19937_64 rng(11);
    for (long p : {2L, 3L, 5L}) {
        for (int iter = 0; iter < 120; ++iter) {
            long a = static_cast<long>(rng() % 2000);
            long b = static_cast<long>(rng() % 2000);
            long e = static_cast<long>(rng() % 5); // denominators up to p^4
            LocalizedRational n = lr(a) * pow_p(p, -e);
            LocalizedRational j = lr(b) * pow_p(p, -e);
            int got = lucas_digit(n, j, p);
            // Oracle at the minimal clearing scale.
            CHECK(got == lucas_oracle(a, b, p));
            // Independence of the chosen clearing exponent: scale both
            // arguments by one more power of p and recompute from scratch.
            mpz_class ap = mpz_class(a) * p, bp = mpz_class(b) * p;
            CHECK(got == lucas_oracle(ap, bp, p));
            CHECK(got == lucas_digit(n * lr(p), j * lr(p), p));
        }
    }
}

TEST_CASE("lucas digit conventions") {
    CHECK(lucas_digit(lr(3), lr(5), 3) == 0);  // j > n
    CHECK(lucas_digit(lr(3), lr(-1), 3) == 0); // j < 0
    CHECK(lucas_digit(lr(0), lr(0), 3) == 1);
    CHECK_THROWS_AS(lucas_digit(lr(-2), lr(0), 3), Error);
    // Spec'd example value: C(7,2) = 21, zeroth digit base 3 is 0.
    CHECK(lucas_digit(lr(7), lr(2), 3) == 0);
}
