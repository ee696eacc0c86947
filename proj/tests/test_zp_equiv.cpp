#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "perfrd/errors.hpp"
#include "perfrd/rootdata.hpp"
#include "perfrd/zp_equiv.hpp"

using namespace perfrd;

namespace {

MatQ mq(int rows, int cols, std::initializer_list<const char*> xs) {
    MatQ m(rows, cols);
    auto it = xs.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = LocalizedRational::parse(*it++);
    return m;
}

MatQ scalar1x1(const char* x) { return mq(1, 1, {x}); }

bool is_power_of(long n, long p) {
    if (n < 1) return false;
    while (n % p == 0) n /= p;
    return n == 1;
}

// GL2-shaped datum whose roots sit on the anti-diagonal line +-(e1+e2); it is
// isomorphic to GL2 by a quarter turn but not by the identity.
RootDatum skew_gl2(long p) {
    VecQ r{LocalizedRational(1), LocalizedRational(1)};
    VecQ n{LocalizedRational(-1), LocalizedRational(-1)};
    return RootDatum(p, MatZ::identity(2), {r, n}, {r, n}, 1, "skewGL2");
}

} // namespace

TEST_CASE("check_isomorphism accepts the classical rank one scalings and rejects foreign denominators") {
    RootDatum sl2_2 = builtin("SL2", 2), pgl2_2 = builtin("PGL2", 2);
    CHECK(check_isomorphism(sl2_2, pgl2_2, scalar1x1("1/2")));
    CHECK(check_isomorphism(sl2_2, pgl2_2, scalar1x1("1")));
    CHECK(check_isomorphism(sl2_2, pgl2_2, scalar1x1("2")));

    for (long p : {2L, 3L, 5L}) {
        RootDatum sl2 = builtin("SL2", p);
        CHECK(check_isomorphism(sl2, sl2, scalar1x1("1")));
    }

    // 1/2 is not p-local at p = 3: the verdict is false, not an error.
    RootDatum sl2_3 = builtin("SL2", 3), pgl2_3 = builtin("PGL2", 3);
    CHECK_FALSE(check_isomorphism(sl2_3, pgl2_3, scalar1x1("1/2")));

    // p itself is a unit, so [3] is as good a self-map as [1] at p = 3.
    CHECK(check_isomorphism(sl2_3, sl2_3, scalar1x1("3")));
    // ... but [2] has non-unit determinant there.
    CHECK_FALSE(check_isomorphism(sl2_3, sl2_3, scalar1x1("2")));
    CHECK_FALSE(check_isomorphism(sl2_3, sl2_3, scalar1x1("0")));

    CHECK_THROWS_AS(check_isomorphism(sl2_3, sl2_3, MatQ(2, 2)), Error);
    CHECK_THROWS_AS(check_isomorphism(sl2_2, sl2_3, scalar1x1("1")), Error);
}

TEST_CASE("check_isomorphism sees the symplectic/orthogonal coincidence only at two") {
    CHECK(check_isomorphism(builtin("Sp4", 2), builtin("SO5", 2), MatQ::identity(2)));
    CHECK(check_isomorphism(builtin("SO5", 2), builtin("Sp4", 2), MatQ::identity(2)));
    CHECK_FALSE(check_isomorphism(builtin("Sp4", 3), builtin("SO5", 3), MatQ::identity(2)));
    CHECK(check_isomorphism(builtin("Sp6", 2), builtin("SO7", 2), MatQ::identity(3)));
}

TEST_CASE("check_isogeny distinguishes isogenies, isomorphisms, and junk") {
    RootDatum sl2 = builtin("SL2", 3), pgl2 = builtin("PGL2", 3);

    IsogenyCheck id = check_isogeny(sl2, sl2, scalar1x1("1"));
    CHECK(id.ok);
    REQUIRE(id.witness.has_value());
    CHECK(id.witness->root_bijection == std::vector<int>{0, 1});
    CHECK(id.witness->steinberg_shift == 0);

    // Scaling by p: valid, with a negative normalization shift.
    IsogenyCheck frob = check_isogeny(sl2, sl2, scalar1x1("3"));
    CHECK(frob.ok);
    REQUIRE(frob.witness.has_value());
    CHECK(frob.witness->steinberg_shift == -1);

    // The central quotient direction: injective but non-unit determinant.
    IsogenyCheck central = check_isogeny(pgl2, sl2, scalar1x1("2"));
    CHECK(central.ok);
    CHECK_FALSE(check_isomorphism(pgl2, sl2, scalar1x1("2")));

    IsogenyCheck foreign = check_isogeny(sl2, pgl2, scalar1x1("1/2"));
    CHECK_FALSE(foreign.ok);
    REQUIRE(foreign.reasons.size() == 1);
    CHECK(foreign.reasons[0] == "entry not in Z[1/3]");

    // [2] as a self-map of SL2 at p=3 throws roots out of their orbits.
    IsogenyCheck off_orbit = check_isogeny(sl2, sl2, scalar1x1("2"));
    CHECK_FALSE(off_orbit.ok);
    CHECK_FALSE(off_orbit.reasons.empty());

    IsogenyCheck squash = check_isogeny(builtin("T2", 3), builtin("T2", 3),
                                        mq(2, 2, {"1", "0", "0", "0"}));
    CHECK_FALSE(squash.ok);

    IsogenyCheck torus_scale = check_isogeny(builtin("T2", 3), builtin("T2", 3),
                                             mq(2, 2, {"2", "0", "0", "2"}));
    CHECK(torus_scale.ok);

    CHECK_THROWS_AS(check_isogeny(sl2, sl2, MatQ(1, 2)), Error);
}

TEST_CASE("steinberg_normalize strips the p-content into the shift") {
    SteinbergForm a = steinberg_normalize(scalar1x1("1/2"), 2);
    CHECK(a.theta(0, 0) == 1);
    CHECK(a.shift == 1);

    SteinbergForm b = steinberg_normalize(scalar1x1("3"), 3);
    CHECK(b.theta(0, 0) == 1);
    CHECK(b.shift == -1);

    SteinbergForm c = steinberg_normalize(MatQ::identity(3), 5);
    CHECK(c.shift == 0);
    CHECK(c.theta == MatZ::identity(3));

    SteinbergForm z = steinberg_normalize(MatQ(2, 2), 5);
    CHECK(z.shift == 0);
    CHECK(z.theta == MatZ(2, 2));

    SteinbergForm mixed = steinberg_normalize(mq(2, 2, {"2", "4", "6", "2"}), 2);
    CHECK(mixed.shift == -1);
    CHECK(mixed.theta(0, 0) == 1);
    CHECK(mixed.theta(0, 1) == 2);
    CHECK(mixed.theta(1, 0) == 3);
    CHECK(mixed.theta(1, 1) == 1);

    SteinbergForm frac = steinberg_normalize(mq(1, 2, {"9", "1/3"}), 3);
    CHECK(frac.shift == 1);
    CHECK(frac.theta(0, 0) == 27);
    CHECK(frac.theta(0, 1) == 1);

    CHECK_THROWS_AS(steinberg_normalize(scalar1x1("1/3"), 2), Error);
    CHECK_THROWS_AS(steinberg_normalize(scalar1x1("1"), 6), Error);
}

TEST_CASE("decide_isomorphism settles the special linear / projective grid by p-power rank") {
    for (long p : {2L, 3L, 5L})
        for (int n = 2; n <= 8; ++n) {
            RootDatum sl = builtin("SL" + std::to_string(n), p);
            RootDatum pgl = builtin("PGL" + std::to_string(n), p);
            IsoVerdict v = decide_isomorphism(sl, pgl);
            CAPTURE(p);
            CAPTURE(n);
            if (is_power_of(n, p)) {
                REQUIRE(v.status == IsoStatus::Isomorphic);
                REQUIRE(v.witness.has_value());
                CHECK(check_isomorphism(sl, pgl, *v.witness));
            } else {
                REQUIRE(v.status == IsoStatus::NotIsomorphic);
                REQUIRE(v.certificate.has_value());
                CHECK(v.certificate->invariant == "invariant_factors_X_mod_R");
                CHECK_FALSE(v.certificate->lhs == v.certificate->rhs);
            }
        }
}

TEST_CASE("decide_isomorphism matches the B/C pairs exactly at two") {
    for (auto [so, sp] : {std::pair<const char*, const char*>{"SO5", "Sp4"}, {"SO7", "Sp6"}}) {
        for (long p : {2L, 3L, 5L}) {
            IsoVerdict v = decide_isomorphism(builtin(so, p), builtin(sp, p));
            CAPTURE(so);
            CAPTURE(p);
            if (p == 2) {
                REQUIRE(v.status == IsoStatus::Isomorphic);
                REQUIRE(v.witness.has_value());
                CHECK(check_isomorphism(builtin(so, p), builtin(sp, p), *v.witness));
            } else {
                CHECK(v.status == IsoStatus::NotIsomorphic);
            }
        }
    }

    // The simply connected forms need a genuinely fractional witness at 2.
    IsoVerdict sc = decide_isomorphism(builtin("B3", 2), builtin("C3", 2));
    REQUIRE(sc.status == IsoStatus::Isomorphic);
    REQUIRE(sc.witness.has_value());
    CHECK(check_isomorphism(builtin("B3", 2), builtin("C3", 2), *sc.witness));
    CHECK(decide_isomorphism(builtin("B3ad", 2), builtin("C3ad", 2)).status ==
          IsoStatus::Isomorphic);
    CHECK(decide_isomorphism(builtin("B3", 3), builtin("C3", 3)).status ==
          IsoStatus::NotIsomorphic);
}

TEST_CASE("decide_isomorphism certificates are recomputable from public operations") {
    // Prime-to-p torsion of X modulo the root span.
    IsoVerdict v = decide_isomorphism(builtin("SL6", 5), builtin("PGL6", 5));
    REQUIRE(v.status == IsoStatus::NotIsomorphic);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->invariant == "invariant_factors_X_mod_R");
    CHECK(v.certificate->lhs == "6");
    CHECK(v.certificate->rhs == "1");
    {
        RootDatum sl6 = builtin("SL6", 5);
        MatZ roots(sl6.rank_x(), sl6.root_count());
        for (int j = 0; j < sl6.root_count(); ++j)
            for (int i = 0; i < sl6.rank_x(); ++i) roots(i, j) = sl6.root(j)[(size_t)i];
        SmithDecomposition snf = smith_normal_form(roots);
        mpz_class torsion = 1;
        for (const mpz_class& d : snf.diag)
            if (d != 0) torsion *= d;
        while (torsion % 5 == 0) torsion /= 5;
        CHECK(torsion == 6);
    }

    IsoVerdict w = decide_isomorphism(builtin("SO7", 3), builtin("Sp6", 3));
    REQUIRE(w.status == IsoStatus::NotIsomorphic);
    REQUIRE(w.certificate.has_value());
    CHECK(w.certificate->invariant == "dynkin_multiset");
    CHECK(w.certificate->lhs == dynkin_classify(builtin("SO7", 3)));
    CHECK(w.certificate->rhs == dynkin_classify(builtin("Sp6", 3)));

    IsoVerdict u = decide_isomorphism(builtin("SL3", 3), builtin("SO5", 3));
    REQUIRE(u.status == IsoStatus::NotIsomorphic);
    REQUIRE(u.certificate.has_value());
    CHECK(u.certificate->invariant == "root_count");
    CHECK(u.certificate->lhs == std::to_string(builtin("SL3", 3).root_count()));
    CHECK(u.certificate->rhs == std::to_string(builtin("SO5", 3).root_count()));

    CHECK(decide_isomorphism(builtin("SL2", 2), builtin("T1", 2)).certificate->invariant ==
          "root_count");
    CHECK(decide_isomorphism(builtin("GL2", 2), builtin("T2", 2)).certificate->invariant ==
          "root_count");
    CHECK(decide_isomorphism(builtin("GL2", 2), builtin("SL2", 2)).certificate->invariant ==
          "rank_X");
}

TEST_CASE("decide_isomorphism finds witnesses beyond the identity") {
    // Self-duality of the two exceptional symmetric-diagram types: integral
    // witnesses exist at every p, and the search must produce verified ones.
    for (long p : {2L, 3L, 5L}) {
        RootDatum g2 = builtin("G2", p);
        RootDatum g2d = dual(builtin("G2", p));
        IsoVerdict v = decide_isomorphism(g2, g2d);
        CAPTURE(p);
        REQUIRE(v.status == IsoStatus::Isomorphic);
        REQUIRE(v.witness.has_value());
        CHECK(check_isomorphism(g2, g2d, *v.witness));
    }
    {
        RootDatum f4 = builtin("F4", 2);
        RootDatum f4d = dual(builtin("F4", 2));
        IsoVerdict v = decide_isomorphism(f4, f4d);
        REQUIRE(v.status == IsoStatus::Isomorphic);
        CHECK(check_isomorphism(f4, f4d, *v.witness));
    }

    // At p = 3 the first witness in search order rescales the long roots: its
    // exponent spread over the single G2 component is exactly 1.
    {
        RootDatum g2 = builtin("G2", 3);
        RootDatum g2d = dual(builtin("G2", 3));
        IsoVerdict v = decide_isomorphism(g2, g2d);
        REQUIRE(v.witness.has_value());
        std::vector<long> spreads = witness_exponent_spreads(g2, g2d, *v.witness);
        REQUIRE(spreads.size() == 1);
        CHECK(spreads[0] == 1);
    }

    // A pair that defeats the identity and the pure semisimple solve: the
    // undetermined torus-block entries must be enumerated.
    for (long p : {2L, 5L}) {
        RootDatum gl2 = builtin("GL2", p);
        RootDatum skew = skew_gl2(p);
        IsoVerdict v = decide_isomorphism(gl2, skew);
        CAPTURE(p);
        REQUIRE(v.status == IsoStatus::Isomorphic);
        REQUIRE(v.witness.has_value());
        CHECK(check_isomorphism(gl2, skew, *v.witness));
        CHECK(*v.witness == mq(2, 2, {"0", "-1", "1", "0"}));
        CHECK(v.budget_spent.nodes > 1); // identity was tried and failed
    }
}

TEST_CASE("decide_isomorphism reports identity witnesses for equal data") {
    for (const char* name : {"SL4", "Sp6", "GL3", "T2", "D4", "F4"}) {
        RootDatum rd = builtin(name, 3);
        IsoVerdict v = decide_isomorphism(rd, rd);
        CAPTURE(name);
        REQUIRE(v.status == IsoStatus::Isomorphic);
        REQUIRE(v.witness.has_value());
        CHECK(*v.witness == MatQ::identity(rd.rank_x()));
        CHECK(v.budget_spent.nodes == 1);
    }
}

TEST_CASE("decide_isomorphism respects budgets and reports Unknown honestly") {
    RootDatum gl2 = builtin("GL2", 2);
    RootDatum skew = skew_gl2(2);

    SearchBudget tiny;
    tiny.node_budget = 1;
    IsoVerdict v = decide_isomorphism(gl2, skew, tiny);
    CHECK(v.status == IsoStatus::Unknown);
    CHECK(v.budget_spent.nodes == 1);
    CHECK(v.budget_spent.exhausted);

    // Zero coefficient range: the kernel block only ever holds zeros, so the
    // enumeration completes without finding the quarter turn.
    SearchBudget flat;
    flat.coeff_bound = 0;
    flat.exp_bound = 0;
    IsoVerdict w = decide_isomorphism(gl2, skew, flat);
    CHECK(w.status == IsoStatus::Unknown);
    CHECK(w.budget_spent.exhausted);

    CHECK_THROWS_AS(decide_isomorphism(builtin("SL2", 2), builtin("SL2", 3)), Error);
}

TEST_CASE("definite verdicts are symmetric across a builtin sample") {
    const std::vector<std::string> names{"SL2", "SL3", "SL4", "PGL2", "PGL3", "PGL4",
                                         "Sp4", "SO5",  "Sp6", "SO7",  "GL2",  "G2",
                                         "B3",  "C3",   "T1"};
    for (long p : {2L, 3L}) {
        std::vector<RootDatum> data;
        for (const std::string& n : names) data.push_back(builtin(n, p));
        for (size_t i = 0; i < data.size(); ++i)
            for (size_t j = 0; j < data.size(); ++j) {
                IsoVerdict ij = decide_isomorphism(data[i], data[j]);
                IsoVerdict ji = decide_isomorphism(data[j], data[i]);
                CAPTURE(names[i]);
                CAPTURE(names[j]);
                CAPTURE(p);
                bool contradictory = (ij.status == IsoStatus::Isomorphic &&
                                      ji.status == IsoStatus::NotIsomorphic) ||
                                     (ij.status == IsoStatus::NotIsomorphic &&
                                      ji.status == IsoStatus::Isomorphic);
                CHECK_FALSE(contradictory);
                if (ij.status == IsoStatus::Isomorphic)
                    CHECK(check_isomorphism(data[i], data[j], *ij.witness));
            }
    }
}

TEST_CASE("check_reflection_iso applies the unit clause to line scalings") {
    // Sp4 and SO5 share their reflection matrices on Y, so the identity
    // conjugates reflections to reflections at any p; but the coroot lines
    // differ by a factor of 2, which is a unit only at p = 2.
    CHECK(check_reflection_iso(builtin("Sp4", 2), builtin("SO5", 2), MatQ::identity(2)));
    CHECK_FALSE(check_reflection_iso(builtin("Sp4", 3), builtin("SO5", 3), MatQ::identity(2)));
    CHECK_FALSE(check_reflection_iso(builtin("Sp4", 5), builtin("SO5", 5), MatQ::identity(2)));

    CHECK(check_reflection_iso(builtin("SL3", 3), builtin("SL3", 3), MatQ::identity(2)));
    CHECK_FALSE(check_reflection_iso(builtin("SL3", 3), builtin("SL3", 3), mq(2, 2, {"1", "0", "0", "0"})));
    CHECK_THROWS_AS(check_reflection_iso(builtin("SL3", 3), builtin("SL3", 3), MatQ(3, 3)), Error);
}

TEST_CASE("reflection-level decisions agree with the full search on semisimple builtins at two") {
    const std::vector<std::string> names{"SL2", "SL3", "SL4", "PGL2", "PGL3", "PGL4", "Sp4",
                                         "SO5", "Sp6", "SO7", "SO4",  "SO6",  "A2ad", "B2",
                                         "B3",  "C3",  "D4",  "G2"};
    std::vector<RootDatum> data;
    for (const std::string& n : names) data.push_back(builtin(n, 2));
    for (size_t i = 0; i < data.size(); ++i)
        for (size_t j = 0; j < data.size(); ++j) {
            IsoVerdict full = decide_isomorphism(data[i], data[j]);
            IsoVerdict refl = decide_reflection_iso(data[i], data[j]);
            CAPTURE(names[i]);
            CAPTURE(names[j]);
            CHECK(full.status == refl.status);
            if (refl.status == IsoStatus::Isomorphic)
                CHECK(check_reflection_iso(data[i], data[j], *refl.witness));
        }
}

TEST_CASE("witness exponent spreads respect the localization bound") {
    struct Case {
        const char* a;
        const char* b;
        long p;
        bool dual_b;
    };
    for (const Case& c : {Case{"SL4", "PGL4", 2, false}, Case{"SO7", "Sp6", 2, false},
                          Case{"B3", "C3", 2, false}, Case{"G2", "G2", 3, true},
                          Case{"SL5", "PGL5", 5, false}}) {
        RootDatum a = builtin(c.a, c.p);
        RootDatum b = c.dual_b ? dual(builtin(c.b, c.p)) : builtin(c.b, c.p);
        IsoVerdict v = decide_isomorphism(a, b);
        CAPTURE(c.a);
        CAPTURE(c.p);
        REQUIRE(v.status == IsoStatus::Isomorphic);
        std::vector<long> spreads = witness_exponent_spreads(a, b, *v.witness);
        long bound = c.p <= 3 ? 1 : 0;
        for (long s : spreads) CHECK(s <= bound);
    }

    // Maps that fail to match the orbits are rejected rather than measured.
    CHECK_THROWS_AS(witness_exponent_spreads(builtin("SL2", 3), builtin("SL2", 3), scalar1x1("0")),
                    Error);
}

TEST_CASE("status strings render for serialization") {
    CHECK(to_string(IsoStatus::Isomorphic) == "Isomorphic");
    CHECK(to_string(IsoStatus::NotIsomorphic) == "NotIsomorphic");
    CHECK(to_string(IsoStatus::Unknown) == "Unknown");
}
