#pragma once

// Exact arithmetic in the localization Z[1/p]: rationals whose denominator is
// a power of a fixed prime p.  The prime is a context parameter passed to the
// operations that need it; values themselves are plain exact rationals, and
// membership in Z[1/p] is validated at API boundaries.

#include <gmpxx.h>

#include <compare>
#include <map>
#include <string>

#include "perfrd/errors.hpp"

namespace perfrd {

// A rational number stored in lowest terms with positive denominator.
// The ring ops (+, -, *) preserve "denominator is a p-power", so code that
// starts from validated Z[1/p] values stays in Z[1/p].  Division is provided
// for internal linear algebra over the fraction field; ring-membership is
// re-checked wherever a result crosses a public boundary.
class LocalizedRational {
  public:
    LocalizedRational() : v_(0) {}
    LocalizedRational(long n) : v_(n) {}             // NOLINT(google-explicit-constructor)
    LocalizedRational(const mpz_class& n) : v_(n) {} // NOLINT(google-explicit-constructor)
    LocalizedRational(const mpz_class& num, const mpz_class& den);
    explicit LocalizedRational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static LocalizedRational parse(const std::string& text);

    const mpq_class& value() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    bool is_integer() const { return v_.get_den() == 1; }
    mpz_class to_integer() const; // throws unless is_integer()

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }

    // Renders "num" or "num/den"; exactly the serialization format.
    std::string str() const;

    LocalizedRational operator-() const { return LocalizedRational(mpq_class(-v_)); }
    LocalizedRational& operator+=(const LocalizedRational& o) { v_ += o.v_; return *this; }
    LocalizedRational& operator-=(const LocalizedRational& o) { v_ -= o.v_; return *this; }
    LocalizedRational& operator*=(const LocalizedRational& o) { v_ *= o.v_; return *this; }
    LocalizedRational& operator/=(const LocalizedRational& o);

    friend LocalizedRational operator+(LocalizedRational a, const LocalizedRational& b) { return a += b; }
    friend LocalizedRational operator-(LocalizedRational a, const LocalizedRational& b) { return a -= b; }
    friend LocalizedRational operator*(LocalizedRational a, const LocalizedRational& b) { return a *= b; }
    friend LocalizedRational operator/(LocalizedRational a, const LocalizedRational& b) { return a /= b; }

    friend bool operator==(const LocalizedRational& a, const LocalizedRational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const LocalizedRational& a, const LocalizedRational& b) { return a.v_ != b.v_; }
    friend bool operator<(const LocalizedRational& a, const LocalizedRational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const LocalizedRational& a, const LocalizedRational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const LocalizedRational& a, const LocalizedRational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const LocalizedRational& a, const LocalizedRational& b) { return a.v_ >= b.v_; }

  private:
    mpq_class v_;
};

// --- prime context helpers -------------------------------------------------

// Throws Errc::NotPrime unless p is a prime >= 2 (trial division; context
// primes are tiny in practice).
void require_prime(long p);

// True iff x lies in Z[1/p], i.e. den(x) is a power of p.
bool is_p_local(const LocalizedRational& x, long p);

// Minimal e >= 0 with x * p^e integral.  Throws Errc::NotPLocal if x is not
// in Z[1/p].
int pexp(const LocalizedRational& x, long p);

// p-adic valuation of x != 0 (may be negative).  Throws on x == 0 or if x is
// not in Z[1/p].
long p_valuation(const LocalizedRational& x, long p);

// p^k as an exact scalar, k of either sign.
LocalizedRational pow_p(long p, long k);

// mpz convenience: v_p(n) for n != 0.
long p_valuation_z(const mpz_class& n, long p);

// --- base-p digit expansions ------------------------------------------------

// Finite-support base-p expansion of a nonnegative element of N[1/p]:
// x = sum digits[i] * p^i with digits in 1..p-1 (zeros are not stored).
struct DigitExpansion {
    long p = 2;
    std::map<long, int> digits; // position -> digit, nonzero entries only

    int digit(long position) const {
        auto it = digits.find(position);
        return it == digits.end() ? 0 : it->second;
    }
    long min_position() const { return digits.empty() ? 0 : digits.begin()->first; }
    long max_position() const { return digits.empty() ? 0 : digits.rbegin()->first; }
    LocalizedRational value() const;
};

// Expansion of x >= 0 in Z[1/p].  Throws Errc::NegativeValue on x < 0 and
// Errc::NotPLocal on foreign denominators.
DigitExpansion to_digits(const LocalizedRational& x, long p);

// Zeroth base-p digit of the binomial coefficient C(n, j), extended to
// n, j in N[1/p] by scaling both arguments with the same power of p until they
// are integers (the result does not depend on the chosen power, by Lucas'
// theorem).  Returns 0 when j < 0 or j > n, following the usual binomial
// convention.
int lucas_digit(const LocalizedRational& n, const LocalizedRational& j, long p);

// C(a, b) mod p for 0 <= a, b < p.
int binomial_digit_mod_p(long a, long b, long p);

} // namespace perfrd
