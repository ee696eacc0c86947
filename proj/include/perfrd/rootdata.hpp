#pragma once

// Root data over Z[1/p], stored in an integral Z-form: a character lattice X,
// a cocharacter lattice Y, a unimodular pairing between them, and aligned
// lists of roots and coroots.  Each root is one representative of its p-power
// scaling orbit, normalized to be an integer vector not divisible by p; the
// aligned coroot absorbs the reciprocal scaling and may have p-power
// denominators.  On top of the raw data: axiom validation, builtin
// constructors for the familiar reductive groups, reflections, Weyl-group
// enumeration, Cartan/Dynkin classification, duality, dominance and block
// tests, and conversion to and from the reflection-group presentation.

#include <optional>
#include <string>
#include <vector>

#include "perfrd/lattice.hpp"
#include "perfrd/scalars.hpp"

namespace perfrd {

class RootDatum {
  public:
    // Roots are normalized at construction: each root is scaled by the power
    // of p making it an integer vector with p-free content, and the aligned
    // coroot is scaled by the inverse power.  Other invariants are *not*
    // enforced here; use validate() to check them.
    RootDatum(long p, MatZ pairing, std::vector<VecQ> roots, std::vector<VecQ> coroots,
              int positive_count, std::string name = "");

    long p() const { return p_; }
    int rank_x() const { return pairing_.rows(); }
    int rank_y() const { return pairing_.cols(); }
    const MatZ& pairing() const { return pairing_; }
    const std::vector<VecZ>& roots() const { return roots_; }
    const std::vector<VecQ>& coroots() const { return coroots_; }
    int root_count() const { return static_cast<int>(roots_.size()); }
    int positive_count() const { return positive_count_; }
    const std::string& name() const { return name_; }

    const VecZ& root(int i) const;
    const VecQ& coroot(int i) const;

    // <x, y> = x^T P y, exact.
    LocalizedRational pair(const VecQ& x, const VecQ& y) const;

  private:
    long p_;
    MatZ pairing_;
    std::vector<VecZ> roots_;
    std::vector<VecQ> coroots_;
    int positive_count_;
    std::string name_;
};

// --- validation --------------------------------------------------------------

struct ValidationItem {
    std::string axiom;          // stable identifier, e.g. "pairing_unimodular"
    bool pass = true;
    std::vector<int> offenders; // indices of roots (or root pairs) that fail
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationItem> items;
};

// Checks, without throwing: the pairing is square and unimodular; every
// aligned pair satisfies <alpha, alpha^vee> = 2; the root list is closed under
// negation (with negated aligned coroot) and under every reflection, up to
// p-power scaling; and no listed root is a p-power multiple of another one or
// of its negative.  Failures are report entries with offending indices.
ValidationReport validate(const RootDatum& rd);

// --- builtin data --------------------------------------------------------------

// Recognized names: SL<n>, PGL<n>, GL<n> (n >= 2), Sp<2n>, SO<2n+1>, SO<2n>,
// T<k> (split torus), and Cartan types A1..A8, B2..B8, C2..C8, D3..D8, E6, E7,
// E8, F4, G2 with an optional "sc" (simply connected, default) or "ad"
// (adjoint) suffix.  Throws Errc::UnknownName otherwise.  Lattice conventions
// are documented in the README.
RootDatum builtin(const std::string& name, long p);

// All names exercised by the test and acceptance suites, in a fixed order.
std::vector<std::string> builtin_names();

// --- reflections and the Weyl group -------------------------------------------

enum class Side { OnX, OnY };

// Matrix of s_alpha acting on X (lambda -> lambda - <lambda, alpha^vee> alpha)
// or on Y (the adjoint action).  Involutive; permutes the root (resp. coroot)
// scaling orbits.  Throws Errc::IndexOutOfRange.
MatQ reflection(const RootDatum& rd, int root_index, Side side);

// A Weyl-group element as the permutation it induces on the stored root list
// (faithful: roots span the reflection representation).
using RootPermutation = std::vector<int>;

struct WeylGroup {
    long order = 1;
    std::vector<RootPermutation> elements; // empty when only the order is known
    std::string cartan_type;               // "" when classification failed
    std::optional<RootPermutation> longest; // maps positives onto negatives
};

// Closure of the root-list permutations induced by all reflections.  If the
// closure would exceed enumeration_cap elements, falls back to the classified
// type for the order alone; if classification also fails, throws
// Errc::CapExceededWithoutClassification.
WeylGroup weyl_group(const RootDatum& rd, long enumeration_cap = 1000000);

// Decomposition into irreducible Dynkin types plus the central torus rank,
// rendered like "B2", "A2 + T1", "A1 + A1 + T2", "T2".  Components are sorted
// by descending rank, then alphabetically.  Throws Errc::NotCrystallographic
// when the pairing integers of the simple roots do not form a Cartan matrix
// of finite type.
std::string dynkin_classify(const RootDatum& rd);

// The simple positive system underlying the classification: root-list indices
// of the simples (positives that are not sums of two positives), their Cartan
// pairings, and the connected components of the bond graph.  Throws
// Errc::NotCrystallographic when the pairings are not Cartan integers or the
// simples fail to span the root space.
struct SimpleSystem {
    std::vector<int> simples;              // indices into rd.roots()
    std::vector<std::vector<long>> cartan; // cartan[i][j] = <alpha_{s_j}, alpha_{s_i}^vee>
    std::vector<int> component;            // component id per simple, dense from 0
    int component_count = 0;
};
SimpleSystem simple_system(const RootDatum& rd);

// --- duality -------------------------------------------------------------------

// Swaps (X, roots) with (Y, coroots) and transposes the pairing; an involution
// on every builtin.
RootDatum dual(const RootDatum& rd);

// --- reflection-group presentation ----------------------------------------------

struct ReflectionEntry {
    MatQ sigma;   // order-2 automorphism of V = Y
    VecQ line;    // generator b of the distinguished rank-1 submodule P_sigma
    long image_index = 1; // [P_sigma : im(1 - sigma)], 1 or 2 for integral data
};

struct ReflectionDatum {
    int rank = 0;
    long p = 2;
    std::vector<ReflectionEntry> reflections; // one per positive root
};

// Presents the datum as reflections on the cocharacter side, P_sigma the line
// spanned by the matching coroot.  For integral data the image of 1 - sigma is
// either all of P_sigma or its double (recorded in image_index).
ReflectionDatum to_reflection_form(const RootDatum& rd);

// Rebuilds a root datum (with pairing = identity on V^* x V) from reflections
// and their distinguished lines: the root is the unique functional beta with
// (1 - sigma) = b * beta^T.  Throws Errc::OrderNotTwo unless every sigma is a
// nontrivial involution, and Errc::InvalidArgument when im(1 - sigma) does not
// lie in the given line.
RootDatum from_reflection_form(const ReflectionDatum& rf);

// --- dominance and blocks --------------------------------------------------------

// <lambda, alpha^vee> >= 0 (strict: > 0) against every positive coroot; the
// positive system is the first half of the stored root order.
bool is_dominant(const RootDatum& rd, const VecQ& lambda, bool strict = false);

// lambda - mu lies in the Z[1/p]-span of the roots.
bool block_equivalent(const RootDatum& rd, const VecQ& lambda, const VecQ& mu);

// Half-sum of the positive roots, as plain rationals (it may be half-integral,
// hence not p-local for odd p); a convenience accessor only.
std::vector<mpq_class> rho(const RootDatum& rd);

// --- small helpers shared with the equivalence search ----------------------------

// v scaled by the p-power making it integral with p-free content; zero stays
// zero.  Returns the applied exponent e (result = v * p^e).
VecZ p_primitive(const VecQ& v, long p, long* applied_exponent = nullptr);

// Index of v in the list of pairwise distinct p-primitive representatives, or
// -1; *scale receives the exponent k with v = p^k * rep.
int find_orbit(const std::vector<VecZ>& reps, const VecQ& v, long p, long* scale = nullptr);

} // namespace perfrd
