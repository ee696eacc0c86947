#include "perfrd/scalars.hpp"

namespace perfrd {

LocalizedRational::LocalizedRational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) fail(Errc::InvalidArgument, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

LocalizedRational LocalizedRational::parse(const std::string& text) {
    if (text.empty()) fail(Errc::ParseError, "empty scalar");
    // mpq_class accepts forms like "-12" and "5/9" but also tolerates
    // whitespace and leading '+'; keep the accepted grammar tight.
    auto digits_only = [](const std::string& s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '-') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    std::string numpart = text, denpart;
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        numpart = text.substr(0, slash);
        denpart = text.substr(slash + 1);
        if (!digits_only(denpart) || denpart[0] == '-')
            fail(Errc::ParseError, "bad scalar literal: " + text);
    }
    if (!digits_only(numpart)) fail(Errc::ParseError, "bad scalar literal: " + text);
    mpq_class q;
    if (q.set_str(text, 10) != 0) fail(Errc::ParseError, "bad scalar literal: " + text);
    if (q.get_den() == 0) fail(Errc::ParseError, "zero denominator: " + text);
    q.canonicalize();
    return LocalizedRational(q);
}

mpz_class LocalizedRational::to_integer() const {
    if (!is_integer()) fail(Errc::InvalidArgument, "not an integer: " + str());
    return v_.get_num();
}

std::string LocalizedRational::str() const { return v_.get_str(); }

LocalizedRational& LocalizedRational::operator/=(const LocalizedRational& o) {
    if (o.is_zero()) fail(Errc::InvalidArgument, "division by zero");
    v_ /= o.v_;
    return *this;
}

void require_prime(long p) {
    if (p < 2) fail(Errc::NotPrime, "context prime must be >= 2, got " + std::to_string(p));
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
}

bool is_p_local(const LocalizedRational& x, long p) {
    mpz_class d = x.den();
    while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p)))
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(p));
    return d == 1;
}

int pexp(const LocalizedRational& x, long p) {
    mpz_class d = x.den();
    int e = 0;
    while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(p));
        ++e;
    }
    if (d != 1) fail(Errc::NotPLocal, x.str() + " is not in Z[1/" + std::to_string(p) + "]");
    return e;
}

long p_valuation_z(const mpz_class& n, long p) {
    if (n == 0) fail(Errc::InvalidArgument, "valuation of zero");
    mpz_class m = n;
    long v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

long p_valuation(const LocalizedRational& x, long p) {
    if (x.is_zero()) fail(Errc::InvalidArgument, "valuation of zero");
    return p_valuation_z(x.num(), p) - pexp(x, p);
}

LocalizedRational pow_p(long p, long k) {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(k >= 0 ? k : -k));
    if (k >= 0) return LocalizedRational(pk);
    return LocalizedRational(mpz_class(1), pk);
}

LocalizedRational DigitExpansion::value() const {
    LocalizedRational acc;
    for (const auto& [pos, dig] : digits) acc += LocalizedRational(dig) * pow_p(p, pos);
    return acc;
}

DigitExpansion to_digits(const LocalizedRational& x, long p) {
    require_prime(p);
    if (x.sign() < 0) fail(Errc::NegativeValue, "digit expansion of negative value " + x.str());
    int e = pexp(x, p);
    mpz_class n = x.num(); // x = n / p^e with p not dividing n (unless e == 0)
    DigitExpansion out;
    out.p = p;
    long pos = -e;
    while (n != 0) {
        unsigned long digit = mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(p));
        if (digit != 0) out.digits[pos] = static_cast<int>(digit);
        mpz_fdiv_q_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(p));
        ++pos;
    }
    return out;
}

int binomial_digit_mod_p(long a, long b, long p) {
    if (b < 0 || b > a) return 0;
    // C(a, b) mod p by the multiplicative formula; operands stay below p^3.
    long num = 1, den = 1;
    for (long t = 0; t < b; ++t) {
        num = (num * ((a - t) % p)) % p;
        den = (den * ((t + 1) % p)) % p;
    }
    // den is invertible mod p (b < p), find the inverse by Fermat.
    long inv = 1, base = den % p, exp = p - 2;
    while (exp > 0) {
        if (exp & 1) inv = (inv * base) % p;
        base = (base * base) % p;
        exp >>= 1;
    }
    return static_cast<int>((num * inv) % p);
}

int lucas_digit(const LocalizedRational& n, const LocalizedRational& j, long p) {
    require_prime(p);
    if (n.sign() < 0) fail(Errc::NegativeValue, "lucas_digit of negative n = " + n.str());
    if (j.sign() < 0 || j > n) return 0;
    int l = std::max(pexp(n, p), pexp(j, p));
    LocalizedRational scale = pow_p(p, l);
    mpz_class N = (n * scale).to_integer();
    mpz_class J = (j * scale).to_integer();
    // Lucas: C(N, J) mod p is the product of digitwise binomials.
    long acc = 1;
    while (J != 0 || N != 0) {
        long nd = static_cast<long>(mpz_fdiv_ui(N.get_mpz_t(), static_cast<unsigned long>(p)));
        long jd = static_cast<long>(mpz_fdiv_ui(J.get_mpz_t(), static_cast<unsigned long>(p)));
        acc = (acc * binomial_digit_mod_p(nd, jd, p)) % p;
        if (acc == 0) return 0;
        mpz_fdiv_q_ui(N.get_mpz_t(), N.get_mpz_t(), static_cast<unsigned long>(p));
        mpz_fdiv_q_ui(J.get_mpz_t(), J.get_mpz_t(), static_cast<unsigned long>(p));
    }
    return static_cast<int>(acc);
}

} // namespace perfrd
