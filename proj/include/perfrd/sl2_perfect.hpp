#pragma once

// Representation data of perfected SL2 over a field of characteristic p.
// Weights live in Z[1/p]; simple modules are indexed by the dominant cone
// N[1/p].  Weight multiplicities come from the zeroth base-p digit of binomial
// coefficients; Ext^1 dimensions are digit conditions with finitely many
// candidate positions; composition multiplicities of the induced (costandard)
// and Weyl-type modules reduce, by p-power rescaling, to finite classical
// decomposition numbers plus an explicit infinite "tail" family.

#include <string>
#include <utility>
#include <vector>

#include "perfrd/scalars.hpp"
#include "perfrd/sl2_classical.hpp"

namespace perfrd {

// dim of the w-weight space of the simple module with highest weight n:
// 1 iff w = n - 2j for some j in N[1/p] with 0 <= j <= n and the zeroth
// base-p digit of C(n, j) is nonzero; otherwise 0.
int simple_weight_dim(const LocalizedRational& n, const LocalizedRational& w, long p);

// The full weight list of the simple module with highest weight n, descending.
// Finite: denominators are bounded by the denominator of n, and the count is
// the product of (digit + 1) over the base-p digits of n.
std::vector<LocalizedRational> simple_weights(const LocalizedRational& n, long p);

// --- the weight fractal ------------------------------------------------------

// The set {(n, w) : dim of the w-space of the simple with highest weight n is
// 1} restricted to denominators dividing p^depth and n <= max_n.  Points are
// stored as integer pairs scaled by p^depth, sorted lexicographically.
struct FractalImage {
    long p = 2;
    long max_n = 0; // bound on the highest-weight axis (integer)
    long depth = 0; // denominators divide p^depth
    long scale = 1; // p^depth
    std::vector<std::pair<long, long>> points; // (scale*n, scale*w)
};

FractalImage fractal(long p, long max_n, long depth);

// Deterministic renderings.  Geometry: x = weight, y = highest weight, one
// unit square of side p^{-depth} per point (drawn at integer coordinates in
// the scaled frame).
std::string fractal_svg(const FractalImage& img);
std::string fractal_pgm(const FractalImage& img);

// --- Ext^1 between simples and induced modules -------------------------------

enum class ExtTarget {
    Simple,     // Ext^1(simple(lambda), simple(mu))
    Costandard, // Ext^1(simple(lambda), induced(mu))
};

// Digit criterion for Ext^1, evaluated over the union of the digit supports
// of lambda and mu extended by one position on each side (outside that window
// no position can satisfy either condition).  Result is 0 or 1.
//  - Costandard target: some position i has lambda_i + mu_i = p - 2 and
//    lambda - p^i lambda_i = mu - p^i mu_i + p^{i+1}.
//  - Simple target: some position i has lambda_i + mu_i = p - 2,
//    |lambda_{i+1} - mu_{i+1}| = 1, and all other digits equal.
int ext1(const LocalizedRational& lambda, const LocalizedRational& mu, ExtTarget target, long p);

// --- composition multiplicities ----------------------------------------------

// Provenance of a listed composition factor.
enum class FactorOrigin {
    Integral, // from the classical decomposition row at the primitive scale
    Tail,     // mu = (nu - 2/p^i) * p^v for nu in the stable top-factor set
};

struct CompositionFactor {
    LocalizedRational mu;  // highest weight of the factor, original scale
    long multiplicity = 1; // always 1 in rank one
    FactorOrigin origin = FactorOrigin::Integral;
    long nu = 0;            // Tail only: integer nu at the primitive scale
    long tail_exponent = 0; // Tail only: the exponent i >= 1
};

// Finite truncation of the (generally infinite) composition factor list.
struct MultiplicityReport {
    LocalizedRational lambda;
    long p = 2;
    long scale_exponent = 0;    // v with lambda = p^v * (p-primitive integer)
    long truncation = 0;        // tail factors listed for exponents 1..truncation
    bool tail_continues = false; // true iff factors beyond the truncation exist
    std::vector<CompositionFactor> factors; // descending by mu; multiplicities 1
};

// Socle filtration report.  Layers are certified exactly for two families of
// primitive highest weight (0 < l < p, and l = 2p-1); outside them only the
// unordered factor list is returned and `certified` is false.
struct SocleReport {
    LocalizedRational lambda;
    long p = 2;
    bool certified = false;
    long depth = 0;              // number of layers (certified) or tail cutoff
    bool tail_continues = false;
    std::vector<std::vector<LocalizedRational>> layers; // certified: socle first
    std::vector<LocalizedRational> factors;             // uncertified: descending
};

// Per-prime engine.  Owns the classical oracle whose decomposition rows are
// the finite inputs of the multiplicity formulas.  Thread-safety follows the
// oracle's (internally synchronized) contract.
class Sl2Perfect {
  public:
    explicit Sl2Perfect(long p);

    long p() const { return p_; }
    ClassicalSl2& oracle() { return oracle_; }

    // Composition multiplicity of the simple with highest weight mu in the
    // induced module with highest weight lambda; values are 0 or 1.
    // lambda = 0 degenerates to the one-factor module.
    int costandard_multiplicity(const LocalizedRational& lambda, const LocalizedRational& mu);

    // Same for the Weyl-type module; lambda must be strictly positive
    // (throws Errc::NotStrictlyDominant otherwise).
    int weyl_type_multiplicity(const LocalizedRational& lambda, const LocalizedRational& mu);

    MultiplicityReport costandard_factors(const LocalizedRational& lambda, long depth = 6);
    MultiplicityReport weyl_type_factors(const LocalizedRational& lambda, long depth = 6);

    SocleReport socle_series(const LocalizedRational& lambda, long depth = 6);

    // Verifies, for every integer mu in 0..window (window < 0 means lambda),
    // that costandard minus Weyl-type multiplicity equals the difference of
    // the classical decomposition numbers at lambda and lambda - 2 taken
    // directly from the oracle.  lambda must be an integer >= 2.
    bool grothendieck_identity_check(long lambda, long window = -1);

    // Block of a weight: the coset of lambda in Z[1/p] / 2Z[1/p].  For p = 2
    // the quotient is trivial ("single"); for odd p the label is the parity
    // of the numerator ("even" / "odd").
    std::string block_label(const LocalizedRational& lambda) const;
    bool same_block(const LocalizedRational& lambda, const LocalizedRational& mu) const;

  private:
    struct PrimitiveScale {
        long v = 0;     // lambda = p^v * value
        long value = 0; // p-primitive positive integer
    };
    PrimitiveScale primitive_scale(const LocalizedRational& lambda) const;
    int multiplicity_impl(const LocalizedRational& lambda, const LocalizedRational& mu,
                          bool weyl_variant);
    MultiplicityReport factors_impl(const LocalizedRational& lambda, long depth,
                                    bool weyl_variant);
    bool einf_contains(long lambda, long nu);

    long p_;
    ClassicalSl2 oracle_;
};

} // namespace perfrd
