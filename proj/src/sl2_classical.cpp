#include "perfrd/sl2_classical.hpp"

#include <algorithm>
#include <climits>

#include "perfrd/scalars.hpp"

namespace perfrd {

LaurentChar::LaurentChar(std::vector<std::pair<long, long>> terms) : terms_(std::move(terms)) {
    normalize();
}

LaurentChar LaurentChar::monomial(long exponent, long coeff) {
    if (coeff == 0) return {};
    return LaurentChar({{exponent, coeff}});
}

void LaurentChar::normalize() {
    std::sort(terms_.begin(), terms_.end());
    size_t out = 0;
    for (size_t i = 0; i < terms_.size();) {
        long e = terms_[i].first, c = 0;
        while (i < terms_.size() && terms_[i].first == e) c += terms_[i++].second;
        if (c != 0) terms_[out++] = {e, c};
    }
    terms_.resize(out);
}

long LaurentChar::coeff(long exponent) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair<long, long>(exponent, LONG_MIN));
    if (it != terms_.end() && it->first == exponent) return it->second;
    return 0;
}

long LaurentChar::dim() const {
    long d = 0;
    for (const auto& [e, c] : terms_) d += c;
    return d;
}

bool LaurentChar::symmetric() const {
    for (const auto& [e, c] : terms_)
        if (coeff(-e) != c) return false;
    return true;
}

LaurentChar& LaurentChar::operator+=(const LaurentChar& o) {
    std::vector<std::pair<long, long>> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            merged.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            merged.push_back(o.terms_[j++]);
        } else {
            long c = terms_[i].second + o.terms_[j].second;
            if (c != 0) merged.emplace_back(terms_[i].first, c);
            ++i, ++j;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

LaurentChar& LaurentChar::operator-=(const LaurentChar& o) {
    LaurentChar neg = o;
    for (auto& [e, c] : neg.terms_) c = -c;
    return *this += neg;
}

LaurentChar operator*(const LaurentChar& a, const LaurentChar& b) {
    std::vector<std::pair<long, long>> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) prod.emplace_back(ea + eb, ca * cb);
    return LaurentChar(std::move(prod));
}

LaurentChar LaurentChar::twist(long s) const {
    std::vector<std::pair<long, long>> t = terms_;
    for (auto& [e, c] : t) e *= s;
    return LaurentChar(std::move(t));
}

LaurentChar char_costandard(long m) {
    if (m < 0) return {};
    std::vector<std::pair<long, long>> t;
    t.reserve(static_cast<size_t>(m) + 1);
    for (long w = -m; w <= m; w += 2) t.emplace_back(w, 1);
    return LaurentChar(std::move(t));
}

namespace {

std::vector<long> base_p_digits(long m, long p) {
    std::vector<long> d;
    while (m > 0) {
        d.push_back(m % p);
        m /= p;
    }
    return d;
}

} // namespace

LaurentChar char_simple(long m, long p) {
    require_prime(p);
    if (m < 0) fail(Errc::NegativeValue, "char_simple of negative weight");
    // Tensor factorization along digits: each digit d at position i
    // contributes the i-fold-twisted character of the restricted simple L(d),
    // and restricted simples coincide with induced modules.
    LaurentChar acc = LaurentChar::monomial(0);
    long scale = 1;
    for (long d : base_p_digits(m, p)) {
        if (d != 0) acc = acc * char_costandard(d).twist(scale);
        scale *= p;
    }
    return acc;
}

std::vector<long> simple_weights(long m, long p) {
    std::vector<long> out;
    const LaurentChar ch = char_simple(m, p);
    out.reserve(ch.terms().size());
    for (const auto& [e, c] : ch.terms()) out.push_back(e); // multiplicities are all 1
    return out;
}

ClassicalSl2::ClassicalSl2(long p) : p_(p) { require_prime(p); }

void ClassicalSl2::require_odd() const {
    if (p_ == 2)
        fail(Errc::UnsupportedPrime,
             "Ext recursions are implemented for odd p only; p = 2 has no such digit rules");
}

const std::map<long, long>& ClassicalSl2::decomposition_row(long lambda) {
    if (lambda < 0) fail(Errc::NegativeValue, "decomposition row of negative weight");
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = rows_.find(lambda);
        if (it != rows_.end()) return it->second;
    }
    // Dense residual indexed by k with weight lambda - 2k; peel the simple
    // character at the top remaining weight.  Cost is O(dim) overall since
    // the simple characters partition the weights with multiplicity one.
    std::vector<long> residual(static_cast<size_t>(lambda) + 1, 1);
    std::map<long, long> row;
    for (long k = 0; 2 * k <= lambda; ++k) {
        long c = residual[static_cast<size_t>(k)];
        if (c == 0) continue;
        if (c < 0) fail(Errc::InvalidArgument, "character inversion produced a negative multiplicity");
        long mu = lambda - 2 * k;
        row[mu] = c;
        for (long w : simple_weights(mu, p_)) residual[static_cast<size_t>((lambda - w) / 2)] -= c;
    }
    for (long v : residual)
        if (v != 0) fail(Errc::InvalidArgument, "character inversion left a nonzero residual");
    std::lock_guard<std::mutex> g(mu_);
    return rows_.emplace(lambda, std::move(row)).first->second;
}

DecompTable ClassicalSl2::decomposition_numbers(long lambda_max) {
    DecompTable t;
    t.p = p_;
    t.lambda_max = lambda_max;
    for (long l = 0; l <= lambda_max; ++l) t.rows.push_back(decomposition_row(l));
    return t;
}

std::vector<long> ClassicalSl2::e0(long lambda) {
    std::vector<long> out;
    for (const auto& [mu, c] : decomposition_row(lambda)) out.push_back(mu);
    return out;
}

std::vector<long> ClassicalSl2::einf(long lambda) {
    std::vector<long> out;
    if (lambda == 0) return out;
    for (const auto& [mu, c] : decomposition_row(lambda - 1)) out.push_back(mu + 1);
    return out;
}

namespace {
unsigned long long pack(long a, long b) {
    return (static_cast<unsigned long long>(static_cast<unsigned long>(a)) << 32) ^
           static_cast<unsigned long>(b);
}
} // namespace

long ClassicalSl2::ext1_simple_costandard(long lambda, long mu) {
    require_odd();
    if (lambda < 0 || mu < 0) fail(Errc::NegativeValue, "negative weight");
    if (((lambda ^ mu) & 1) != 0) return 0; // different blocks (central character)
    if (lambda < p_ && mu < p_) return 0;   // restricted range: no extensions
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = ext_ln_.find(pack(lambda, mu));
        if (it != ext_ln_.end()) return it->second;
    }
    long l0 = lambda % p_, m0 = mu % p_;
    long a = lambda / p_, b = mu / p_;
    long value;
    if (l0 == m0) {
        // Equal last digits: strip them.
        value = ext1_simple_costandard(a, b);
    } else if (l0 + m0 == p_ - 2) {
        // Complementary digits: extension exists exactly for adjacent
        // quotients, quotient of the simple one higher.
        value = (a == b + 1) ? 1 : 0;
    } else {
        value = 0;
    }
    std::lock_guard<std::mutex> g(mu_);
    ext_ln_[pack(lambda, mu)] = value;
    return value;
}

long ClassicalSl2::hom_simple_tensor_l1(long a, long b) const {
    // dim Hom(L(a), L(b) (x) L(1)) by the last digit of b.
    if (a < 0 || b < 0) return 0;
    long b0 = b % p_;
    if (b0 == 0) return a == b + 1 ? 1 : 0;
    if (b0 == p_ - 1) return a == b - 1 ? 1 : 0;
    return (a == b + 1 || a == b - 1) ? 1 : 0;
}

long ClassicalSl2::ext1_simple_simple(long lambda, long mu) {
    require_odd();
    if (lambda < 0 || mu < 0) fail(Errc::NegativeValue, "negative weight");
    if (lambda == mu) return 0; // simples have no self-extensions
    if (((lambda ^ mu) & 1) != 0) return 0;
    if (lambda < p_ && mu < p_) return 0;
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = ext_ll_.find(pack(lambda, mu));
        if (it != ext_ll_.end()) return it->second;
    }
    long l0 = lambda % p_, m0 = mu % p_;
    long a = lambda / p_, b = mu / p_;
    long value;
    if (l0 == m0) {
        value = ext1_simple_simple(a, b);
    } else if (l0 + m0 == p_ - 2) {
        value = hom_simple_tensor_l1(a, b);
    } else {
        value = 0;
    }
    std::lock_guard<std::mutex> g(mu_);
    ext_ll_[pack(lambda, mu)] = value;
    return value;
}

} // namespace perfrd
