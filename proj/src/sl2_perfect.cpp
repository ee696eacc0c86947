#include "perfrd/sl2_perfect.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace perfrd {

namespace {

// Dense decomposition rows are linear in the primitive highest weight, so an
// explicit ceiling keeps accidental huge inputs from exhausting memory.
constexpr long kMaxPrimitiveInteger = 5'000'000;
constexpr long kMaxFractalPoints = 5'000'000;
constexpr long kMaxFractalRows = 2'000'000;
constexpr long kMaxWeightCount = 2'000'000;
constexpr long kMaxPgmCells = 50'000'000;

long checked_scale_pow(long p, long depth) {
    long s = 1;
    for (long i = 0; i < depth; ++i) {
        if (s > kMaxFractalRows / p)
            fail(Errc::InvalidArgument, "fractal depth too large for this prime");
        s *= p;
    }
    return s;
}

} // namespace

int simple_weight_dim(const LocalizedRational& n, const LocalizedRational& w, long p) {
    require_prime(p);
    if (n.sign() < 0)
        fail(Errc::NegativeValue, "highest weight must be nonnegative");
    if (!is_p_local(n, p) || !is_p_local(w, p))
        fail(Errc::NotPLocal, "weights must lie in Z[1/p]");
    LocalizedRational j = (n - w) / LocalizedRational(2);
    if (!is_p_local(j, p))
        return 0; // odd numerator at odd p: w is not of the form n - 2j
    if (j.sign() < 0 || j > n)
        return 0;
    return lucas_digit(n, j, p) != 0 ? 1 : 0;
}

std::vector<LocalizedRational> simple_weights(const LocalizedRational& n, long p) {
    require_prime(p);
    DigitExpansion d = to_digits(n, p); // validates n >= 0 and p-locality

    std::vector<std::pair<long, int>> pos; // (position, digit of n)
    pos.reserve(d.digits.size());
    long long count = 1;
    for (const auto& [q, dig] : d.digits) {
        pos.emplace_back(q, dig);
        count *= dig + 1;
        if (count > kMaxWeightCount)
            fail(Errc::InvalidArgument, "weight list too large");
    }

    std::vector<int> c(pos.size(), 0); // digits of j, c[k] <= digit of n
    std::vector<LocalizedRational> out;
    out.reserve(static_cast<size_t>(count));
    while (true) {
        LocalizedRational j(0);
        for (size_t k = 0; k < pos.size(); ++k)
            if (c[k] != 0)
                j += LocalizedRational(c[k]) * pow_p(p, pos[k].first);
        out.push_back(n - LocalizedRational(2) * j);
        size_t k = 0;
        while (k < pos.size() && c[k] == pos[k].second)
            c[k++] = 0;
        if (k == pos.size())
            break;
        ++c[k];
    }
    std::sort(out.begin(), out.end(),
              [](const LocalizedRational& a, const LocalizedRational& b) { return b < a; });
    return out;
}

FractalImage fractal(long p, long max_n, long depth) {
    require_prime(p);
    if (max_n < 0)
        fail(Errc::NegativeValue, "max_n must be nonnegative");
    if (depth < 0)
        fail(Errc::NegativeValue, "depth must be nonnegative");
    long scale = checked_scale_pow(p, depth);
    if (max_n > kMaxFractalRows / scale)
        fail(Errc::InvalidArgument, "fractal grid too large");
    long limit = max_n * scale;

    FractalImage img;
    img.p = p;
    img.max_n = max_n;
    img.depth = depth;
    img.scale = scale;

    // Scaling by p^depth identifies the grid with the integer rows
    // 0..max_n*scale of the mod-p Pascal support: row N holds the columns
    // N - 2J over all J whose base-p digits are bounded by those of N.
    std::vector<int> digits;
    for (long N = 0; N <= limit; ++N) {
        digits.clear();
        for (long t = N; t > 0; t /= p)
            digits.push_back(static_cast<int>(t % p));
        std::vector<int> c(digits.size(), 0);
        while (true) {
            long J = 0;
            for (size_t k = digits.size(); k-- > 0;)
                J = J * p + c[k];
            img.points.emplace_back(N, N - 2 * J);
            if (static_cast<long>(img.points.size()) > kMaxFractalPoints)
                fail(Errc::InvalidArgument, "fractal has too many points");
            size_t k = 0;
            while (k < digits.size() && c[k] == digits[k])
                c[k++] = 0;
            if (k == digits.size())
                break;
            ++c[k];
        }
    }
    std::sort(img.points.begin(), img.points.end());
    return img;
}

std::string fractal_svg(const FractalImage& img) {
    long M = img.max_n * img.scale;
    std::string s;
    s.reserve(64 * img.points.size() + 256);
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    s += std::to_string(-M) + " 0 " + std::to_string(2 * M + 1) + " " + std::to_string(M + 1);
    s += "\" shape-rendering=\"crispEdges\">\n";
    s += "<rect x=\"" + std::to_string(-M) + "\" y=\"0\" width=\"" + std::to_string(2 * M + 1) +
         "\" height=\"" + std::to_string(M + 1) + "\" fill=\"#ffffff\"/>\n";
    for (const auto& [N, W] : img.points) {
        s += "<rect x=\"" + std::to_string(W) + "\" y=\"" + std::to_string(N) +
             "\" width=\"1\" height=\"1\" fill=\"#000000\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string fractal_pgm(const FractalImage& img) {
    long M = img.max_n * img.scale;
    long width = 2 * M + 1, height = M + 1;
    if (width > kMaxPgmCells / height)
        fail(Errc::InvalidArgument, "raster too large");
    std::vector<unsigned char> grid(static_cast<size_t>(width * height), 1);
    for (const auto& [N, W] : img.points)
        grid[static_cast<size_t>(N) * width + (W + M)] = 0;

    std::string s;
    s.reserve(grid.size() * 2 + 32);
    s += "P2\n" + std::to_string(width) + " " + std::to_string(height) + "\n1\n";
    for (long r = 0; r < height; ++r) {
        for (long c = 0; c < width; ++c) {
            if (c != 0)
                s += ' ';
            s += static_cast<char>('0' + grid[static_cast<size_t>(r) * width + c]);
        }
        s += '\n';
    }
    return s;
}

int ext1(const LocalizedRational& lambda, const LocalizedRational& mu, ExtTarget target, long p) {
    require_prime(p);
    DigitExpansion A = to_digits(lambda, p);
    DigitExpansion B = to_digits(mu, p);

    long lo = 0, hi = 0;
    bool have = false;
    for (const DigitExpansion* e : {&A, &B}) {
        if (e->digits.empty())
            continue;
        lo = have ? std::min(lo, e->min_position()) : e->min_position();
        hi = have ? std::max(hi, e->max_position()) : e->max_position();
        have = true;
    }
    lo -= 1;
    hi += 1;

    std::vector<long> positions; // union of supports, for the equality scan
    for (const auto& [q, dig] : A.digits)
        positions.push_back(q);
    for (const auto& [q, dig] : B.digits)
        positions.push_back(q);
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());

    for (long i = lo; i <= hi; ++i) {
        int ai = A.digit(i), bi = B.digit(i);
        if (ai + bi != static_cast<int>(p) - 2)
            continue;
        if (target == ExtTarget::Costandard) {
            LocalizedRational lhs = lambda - LocalizedRational(ai) * pow_p(p, i);
            LocalizedRational rhs = mu - LocalizedRational(bi) * pow_p(p, i) + pow_p(p, i + 1);
            if (lhs == rhs)
                return 1;
        } else {
            if (std::labs(static_cast<long>(A.digit(i + 1)) - B.digit(i + 1)) != 1)
                continue;
            bool rest_equal = true;
            for (long q : positions) {
                if (q == i || q == i + 1)
                    continue;
                if (A.digit(q) != B.digit(q)) {
                    rest_equal = false;
                    break;
                }
            }
            if (rest_equal)
                return 1;
        }
    }
    return 0;
}

Sl2Perfect::Sl2Perfect(long p) : p_(p), oracle_(p) {}

Sl2Perfect::PrimitiveScale Sl2Perfect::primitive_scale(const LocalizedRational& lambda) const {
    long v = p_valuation(lambda, p_);
    LocalizedRational prim = lambda * pow_p(p_, -v);
    mpz_class z = prim.to_integer();
    if (!z.fits_slong_p() || z.get_si() > kMaxPrimitiveInteger)
        fail(Errc::InvalidArgument, "primitive highest weight too large");
    return PrimitiveScale{v, z.get_si()};
}

bool Sl2Perfect::einf_contains(long lambda, long nu) {
    std::vector<long> s = oracle_.einf(lambda);
    return std::binary_search(s.begin(), s.end(), nu);
}

int Sl2Perfect::multiplicity_impl(const LocalizedRational& lambda, const LocalizedRational& mu,
                                  bool weyl_variant) {
    if (weyl_variant) {
        if (lambda.sign() <= 0 || !is_p_local(lambda, p_))
            fail(Errc::NotStrictlyDominant, "highest weight must be strictly positive");
    } else {
        if (lambda.sign() < 0)
            fail(Errc::NegativeValue, "highest weight must be nonnegative");
        if (!is_p_local(lambda, p_))
            fail(Errc::NotPLocal, "highest weight must lie in Z[1/p]");
    }
    if (mu.sign() < 0)
        fail(Errc::NegativeValue, "factor weight must be nonnegative");
    if (!is_p_local(mu, p_))
        fail(Errc::NotPLocal, "factor weight must lie in Z[1/p]");

    if (!weyl_variant && lambda.is_zero())
        return mu.is_zero() ? 1 : 0;

    PrimitiveScale ps = primitive_scale(lambda);
    long L = ps.value;
    LocalizedRational muP = mu * pow_p(p_, -ps.v);
    if (muP > LocalizedRational(L))
        return 0;

    long base = weyl_variant ? L - 2 : L;
    if (muP.is_integer()) {
        long m = muP.to_integer().get_si();
        if (base >= 0 && oracle_.decomposition_row(base).count(m) != 0)
            return 1;
        // At p = 2 the tail exponent i = 1 lands back on integers: mu = nu - 1.
        if (p_ == 2 && einf_contains(L, m + 1))
            return 1;
        return 0;
    }

    // mu = (nu - 2/p^i) at the primitive scale forces i = pexp(mu) for odd p
    // and i = pexp(mu) + 1 for p = 2; no other exponent makes nu integral.
    long d = pexp(muP, p_);
    long i = (p_ == 2) ? d + 1 : d;
    LocalizedRational nu = muP + LocalizedRational(2) * pow_p(p_, -i);
    if (!nu.is_integer())
        return 0;
    long n = nu.to_integer().get_si();
    if (n < 1)
        return 0;
    return einf_contains(L, n) ? 1 : 0;
}

int Sl2Perfect::costandard_multiplicity(const LocalizedRational& lambda,
                                        const LocalizedRational& mu) {
    return multiplicity_impl(lambda, mu, false);
}

int Sl2Perfect::weyl_type_multiplicity(const LocalizedRational& lambda,
                                       const LocalizedRational& mu) {
    return multiplicity_impl(lambda, mu, true);
}

MultiplicityReport Sl2Perfect::factors_impl(const LocalizedRational& lambda, long depth,
                                            bool weyl_variant) {
    if (depth < 0)
        fail(Errc::InvalidArgument, "truncation depth must be nonnegative");
    if (weyl_variant) {
        if (lambda.sign() <= 0 || !is_p_local(lambda, p_))
            fail(Errc::NotStrictlyDominant, "highest weight must be strictly positive");
    } else {
        if (lambda.sign() < 0)
            fail(Errc::NegativeValue, "highest weight must be nonnegative");
        if (!is_p_local(lambda, p_))
            fail(Errc::NotPLocal, "highest weight must lie in Z[1/p]");
    }

    MultiplicityReport rep;
    rep.lambda = lambda;
    rep.p = p_;
    rep.truncation = depth;

    if (!weyl_variant && lambda.is_zero()) {
        rep.factors.push_back(CompositionFactor{LocalizedRational(0), 1, FactorOrigin::Integral, 0, 0});
        return rep;
    }

    PrimitiveScale ps = primitive_scale(lambda);
    rep.scale_exponent = ps.v;
    LocalizedRational unscale = pow_p(p_, ps.v);

    long base = weyl_variant ? ps.value - 2 : ps.value;
    if (base >= 0) {
        for (const auto& [m, mult] : oracle_.decomposition_row(base))
            rep.factors.push_back(
                CompositionFactor{LocalizedRational(m) * unscale, mult, FactorOrigin::Integral, 0, 0});
    }
    std::vector<long> tails = oracle_.einf(ps.value);
    rep.tail_continues = !tails.empty();
    for (long nu : tails) {
        for (long i = 1; i <= depth; ++i) {
            LocalizedRational muP = LocalizedRational(nu) - LocalizedRational(2) * pow_p(p_, -i);
            rep.factors.push_back(
                CompositionFactor{muP * unscale, 1, FactorOrigin::Tail, nu, i});
        }
    }
    std::sort(rep.factors.begin(), rep.factors.end(),
              [](const CompositionFactor& a, const CompositionFactor& b) { return b.mu < a.mu; });
    return rep;
}

MultiplicityReport Sl2Perfect::costandard_factors(const LocalizedRational& lambda, long depth) {
    return factors_impl(lambda, depth, false);
}

MultiplicityReport Sl2Perfect::weyl_type_factors(const LocalizedRational& lambda, long depth) {
    return factors_impl(lambda, depth, true);
}

SocleReport Sl2Perfect::socle_series(const LocalizedRational& lambda, long depth) {
    if (depth < 0)
        fail(Errc::InvalidArgument, "depth must be nonnegative");
    if (lambda.sign() < 0)
        fail(Errc::NegativeValue, "highest weight must be nonnegative");
    if (!is_p_local(lambda, p_))
        fail(Errc::NotPLocal, "highest weight must lie in Z[1/p]");

    SocleReport rep;
    rep.lambda = lambda;
    rep.p = p_;
    rep.depth = depth;

    if (lambda.is_zero()) {
        rep.certified = true;
        if (depth >= 1)
            rep.layers.push_back({LocalizedRational(0)});
        return rep;
    }

    PrimitiveScale ps = primitive_scale(lambda);
    long L = ps.value;
    LocalizedRational unscale = pow_p(p_, ps.v);

    if (L < p_) {
        // Uniserial family: socle layers lambda, lambda - 2/p, lambda - 2/p^2, ...
        rep.certified = true;
        rep.tail_continues = true;
        for (long k = 1; k <= depth; ++k) {
            LocalizedRational prim =
                (k == 1) ? LocalizedRational(L)
                         : LocalizedRational(L) - LocalizedRational(2) * pow_p(p_, -(k - 1));
            rep.layers.push_back({prim * unscale});
        }
        return rep;
    }
    if (L == 2 * p_ - 1) {
        // Two-strand family: layers {L}, {L - 2/p}, then pairs
        // {L - 2/p^{k-1}, 1 - 2/p^{k-2}} from the third layer on.
        rep.certified = true;
        rep.tail_continues = true;
        for (long k = 1; k <= depth; ++k) {
            std::vector<LocalizedRational> layer;
            if (k == 1) {
                layer.push_back(LocalizedRational(L) * unscale);
            } else {
                layer.push_back(
                    (LocalizedRational(L) - LocalizedRational(2) * pow_p(p_, -(k - 1))) * unscale);
                if (k >= 3)
                    layer.push_back(
                        (LocalizedRational(1) - LocalizedRational(2) * pow_p(p_, -(k - 2))) * unscale);
            }
            rep.layers.push_back(std::move(layer));
        }
        return rep;
    }

    // No certified layer structure: report the factor list only.
    MultiplicityReport facts = factors_impl(lambda, depth, false);
    rep.certified = false;
    rep.tail_continues = facts.tail_continues;
    rep.factors.reserve(facts.factors.size());
    for (const auto& f : facts.factors)
        rep.factors.push_back(f.mu);
    return rep;
}

bool Sl2Perfect::grothendieck_identity_check(long lambda, long window) {
    if (lambda < 2)
        fail(Errc::InvalidArgument, "identity requires an integer highest weight >= 2");
    if (lambda > kMaxPrimitiveInteger)
        fail(Errc::InvalidArgument, "highest weight too large");
    if (window < 0)
        window = lambda;

    std::map<long, long> top = oracle_.decomposition_row(lambda);
    std::map<long, long> below = oracle_.decomposition_row(lambda - 2);
    auto get = [](const std::map<long, long>& r, long m) {
        auto it = r.find(m);
        return it == r.end() ? 0L : it->second;
    };
    for (long mu = 0; mu <= window; ++mu) {
        long lhs = costandard_multiplicity(LocalizedRational(lambda), LocalizedRational(mu)) -
                   weyl_type_multiplicity(LocalizedRational(lambda), LocalizedRational(mu));
        long rhs = get(top, mu) - get(below, mu);
        if (lhs != rhs)
            return false;
    }
    return true;
}

std::string Sl2Perfect::block_label(const LocalizedRational& lambda) const {
    if (!is_p_local(lambda, p_))
        fail(Errc::NotPLocal, "weight must lie in Z[1/p]");
    if (p_ == 2)
        return "single"; // 1 = 2 * (1/2), so Z[1/2] / 2Z[1/2] is trivial
    return mpz_even_p(lambda.num().get_mpz_t()) ? "even" : "odd";
}

bool Sl2Perfect::same_block(const LocalizedRational& lambda, const LocalizedRational& mu) const {
    return block_label(lambda) == block_label(mu);
}

} // namespace perfrd
