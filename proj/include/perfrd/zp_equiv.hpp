#pragma once

// Deciding isomorphism and isogeny of root data with the prime p inverted.
//
// A rational matrix phi : X_1 -> X_2 is an isomorphism of the p-localized
// data when its determinant is +-p^k, every root of the source lands in the
// p-power scaling orbit of exactly one root of the target, and the dual map
// carries each matched coroot back with the reciprocal scaling.  Isogenies
// keep the root/coroot conditions but only require injectivity.
//
// decide_isomorphism is three-valued: definite answers are always certified
// (a verified witness matrix, or a mismatching invariant the caller can
// recompute); Unknown only ever means the bounded witness search ran out of
// room, never that a difference was detected.

#include <optional>
#include <string>
#include <vector>

#include "perfrd/lattice.hpp"
#include "perfrd/rootdata.hpp"

namespace perfrd {

struct SearchBudget {
    long coeff_bound = 8;       // |a| for torus-completion entries a * p^e
    long exp_bound = 2;         // |e| for torus-completion entries a * p^e
    long node_budget = 1000000; // candidate matrices examined before giving up
};

struct BudgetCounters {
    long nodes = 0;         // candidate matrices examined
    bool exhausted = false; // search ended (fully or by budget) without a witness
};

enum class IsoStatus { Isomorphic, NotIsomorphic, Unknown };

std::string to_string(IsoStatus s);

// Names an invariant whose values on the two data differ, with both values
// rendered as strings so the caller can recompute and compare.
struct IsoCertificate {
    std::string invariant;
    std::string lhs;
    std::string rhs;
};

struct IsoVerdict {
    IsoStatus status = IsoStatus::Unknown;
    std::optional<MatQ> witness;               // X_1 -> X_2; iff Isomorphic
    std::optional<IsoCertificate> certificate; // iff NotIsomorphic
    BudgetCounters budget_spent;
};

// theta = p^shift * phi is integral with at least one entry prime to p.
// shift can be negative (phi integral but divisible by p).  The zero map
// normalizes to (0, 0).
struct SteinbergForm {
    MatZ theta;
    long shift = 0;
};

struct IsogenyWitness {
    MatQ phi;                        // X_1 -> X_2
    std::vector<int> root_bijection; // root i of rd1 -> root_bijection[i] of rd2
    long steinberg_shift = 0;        // shift of steinberg_normalize(phi)
};

struct IsogenyCheck {
    bool ok = false;
    std::vector<std::string> reasons;      // empty iff ok
    std::optional<IsogenyWitness> witness; // present iff ok
};

// Exact verification that phi : X_1 -> X_2 is an isomorphism of the
// p-localized data.  phi must be rank_x(rd2) x rank_x(rd1); the data must
// share the same p.  Entries outside Z[1/p] make the answer false, they are
// not an error.
bool check_isomorphism(const RootDatum& rd1, const RootDatum& rd2, const MatQ& phi);

// Exact verification of the three isogeny conditions: phi and its dual are
// injective, roots map bijectively onto root scaling orbits, and coroots
// match under the dual map with reciprocal scalings.  Failures are reported
// as human-readable reasons rather than a bare false.
IsogenyCheck check_isogeny(const RootDatum& rd1, const RootDatum& rd2, const MatQ& phi);

// Scale phi by the power of p that makes it integral and primitive (not
// divisible by p).  Throws Errc::NotPLocal if entries have other primes in
// their denominators.
SteinbergForm steinberg_normalize(const MatQ& phi, long p);

// Three-valued decision procedure.  First compares a battery of invariants
// (rank, root count, torus rank, Weyl group order, Dynkin type multiset up
// to the p-special type identifications, prime-to-p invariant factors of
// X/ZR and of Y/ZR^vee); any mismatch certifies NotIsomorphic.  Otherwise
// searches for a witness: the identity first, then maps assembled from
// Dynkin diagram matchings (with scaling offsets forced by the Cartan
// pairings) and, for data with central torus directions, a bounded
// enumeration of the undetermined block.  Unknown only on exhaustion.
// Throws Errc::PrimeMismatch when the data disagree on p.
IsoVerdict decide_isomorphism(const RootDatum& rd1, const RootDatum& rd2,
                              const SearchBudget& budget = {});

// Reflection-level comparison on V = Y: psi must be unimodular over Z[1/p],
// conjugate the reflections attached to the positive roots of rd1 bijectively
// onto those of rd2, and map each reflection line span onto its partner.  The
// line matching factor may carry any power of p; its p-free part must be +-1.
// (For p = 2 that admits factors like 2 or 1/2, which is exactly where the
// reflection-level notion is as fine as the root-datum one.)
bool check_reflection_iso(const RootDatum& rd1, const RootDatum& rd2, const MatQ& psi);

// Same search as decide_isomorphism but candidates are verified at the
// reflection level; the witness is the Y-side map psi : Y_1 -> Y_2.
IsoVerdict decide_reflection_iso(const RootDatum& rd1, const RootDatum& rd2,
                                 const SearchBudget& budget = {});

// For phi passing check_isomorphism: the spread max(k) - min(k) of the
// exponents in phi(alpha) = p^k * beta, per connected component of rd1's
// root system (components of the non-orthogonality graph on roots).  The
// spread is at most 1 for p <= 3 and 0 for p >= 5; decide_isomorphism
// asserts this on every witness it returns.  Throws Errc::InvalidArgument
// if phi does not map roots to root orbits bijectively.
std::vector<long> witness_exponent_spreads(const RootDatum& rd1, const RootDatum& rd2,
                                           const MatQ& phi);

} // namespace perfrd
