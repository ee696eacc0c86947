#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "perfrd/rootdata.hpp"

using namespace perfrd;

namespace {

VecQ vq(std::initializer_list<const char*> xs) {
    VecQ v;
    for (const char* x : xs) v.push_back(LocalizedRational::parse(x));
    return v;
}

VecZ vz(std::initializer_list<long> xs) {
    VecZ v;
    for (long x : xs) v.push_back(mpz_class(x));
    return v;
}

RootDatum sl2_like(long p, const char* root, const char* coroot) {
    MatZ pairing = MatZ::identity(1);
    return RootDatum(p, pairing,
                     {vq({root}), vq({(std::string("-") + root).c_str()})},
                     {vq({coroot}), vq({(std::string("-") + coroot).c_str()})}, 1);
}

bool same_structure(const RootDatum& a, const RootDatum& b) {
    return a.p() == b.p() && a.pairing() == b.pairing() && a.roots() == b.roots() &&
           a.coroots() == b.coroots() && a.positive_count() == b.positive_count();
}

const ValidationItem& item(const ValidationReport& r, const std::string& axiom) {
    for (const auto& it : r.items)
        if (it.axiom == axiom) return it;
    static ValidationItem missing{"<missing>", false, {}, ""};
    return missing;
}

MatQ matq2(const char* a, const char* b, const char* c, const char* d) {
    MatQ m(2, 2);
    m(0, 0) = LocalizedRational::parse(a);
    m(0, 1) = LocalizedRational::parse(b);
    m(1, 0) = LocalizedRational::parse(c);
    m(1, 1) = LocalizedRational::parse(d);
    return m;
}

} // namespace

TEST_CASE("primitive representatives and orbit lookup") {
    long e = 0;
    CHECK(p_primitive(vq({"4", "6"}), 2, &e) == vz({2, 3}));
    CHECK(e == -1); // scaled by 2^{-1}
    CHECK(p_primitive(vq({"1/3", "2"}), 3, &e) == vz({1, 6}));
    CHECK(e == 1);
    CHECK(p_primitive(vq({"0", "0"}), 5, &e) == vz({0, 0}));
    CHECK(e == 0);
    // Non-p content is preserved: only powers of p are stripped.
    CHECK(p_primitive(vq({"6", "0"}), 3, &e) == vz({2, 0}));
    CHECK(e == -1);

    std::vector<VecZ> reps = {vz({1, 0}), vz({1, -1})};
    long k = 0;
    CHECK(find_orbit(reps, vq({"4", "0"}), 2, &k) == 0);
    CHECK(k == 2);
    CHECK(find_orbit(reps, vq({"1/2", "-1/2"}), 2, &k) == 1);
    CHECK(k == -1);
    CHECK(find_orbit(reps, vq({"0", "1"}), 2, &k) == -1);
    CHECK(find_orbit(reps, vq({"0", "0"}), 2, &k) == -1);
}

TEST_CASE("construction normalizes roots to p-primitive vectors") {
    // A root with p-power content is rescaled, and the coroot absorbs the
    // reciprocal factor.
    RootDatum rd = sl2_like(2, "2", "1");
    CHECK(rd.root(0) == vz({1}));
    CHECK(rd.coroot(0) == vq({"2"}));
    CHECK(validate(rd).ok);

    RootDatum rd3 = sl2_like(3, "2", "1"); // content 2 is 3-free, unchanged
    CHECK(rd3.root(0) == vz({2}));
    CHECK(rd3.coroot(0) == vq({"1"}));

    RootDatum frac = sl2_like(3, "2/3", "3"); // fractional input scales up
    CHECK(frac.root(0) == vz({2}));
    CHECK(frac.coroot(0) == vq({"1"}));
    CHECK(same_structure(frac, rd3));

    CHECK_THROWS_AS(sl2_like(3, "1/2", "4"), Error); // 1/2 outside Z[1/3]
}

TEST_CASE("builtin SL2 and PGL2 conventions") {
    RootDatum sl2 = builtin("SL2", 3);
    CHECK(sl2.rank_x() == 1);
    CHECK(sl2.root(0) == vz({2}));
    CHECK(sl2.coroot(0) == vq({"1"}));
    CHECK(sl2.root(1) == vz({-2}));
    CHECK(sl2.positive_count() == 1);
    CHECK(validate(sl2).ok);

    RootDatum pgl2 = builtin("PGL2", 3);
    CHECK(pgl2.root(0) == vz({1}));
    CHECK(pgl2.coroot(0) == vq({"2"}));
    CHECK(validate(pgl2).ok);

    // At p = 2 the SL2 root 2 is scaled primitive, landing on PGL2's shape.
    CHECK(same_structure(builtin("SL2", 2), builtin("PGL2", 2)));
    CHECK_FALSE(same_structure(builtin("SL2", 3), builtin("PGL2", 3)));
}

TEST_CASE("builtin names and validation across primes") {
    for (const std::string& name : builtin_names()) {
        for (long p : {2L, 3L, 5L}) {
            RootDatum rd = builtin(name, p);
            ValidationReport rep = validate(rd);
            INFO(name, " at p=", p);
            CHECK(rep.ok);
        }
    }
    CHECK_THROWS_AS(builtin("SL1", 2), Error);
    CHECK_THROWS_AS(builtin("Sp5", 2), Error);
    CHECK_THROWS_AS(builtin("H3", 2), Error);
    CHECK_THROWS_AS(builtin("frobnicate", 2), Error);
}

TEST_CASE("builtin root counts") {
    CHECK(builtin("SL2", 3).root_count() == 2);
    CHECK(builtin("SL3", 3).root_count() == 6);
    CHECK(builtin("SL4", 3).root_count() == 12);
    CHECK(builtin("Sp4", 3).root_count() == 8);
    CHECK(builtin("SO5", 3).root_count() == 8);
    CHECK(builtin("SO7", 3).root_count() == 18);
    CHECK(builtin("Sp6", 3).root_count() == 18);
    CHECK(builtin("G2", 3).root_count() == 12);
    CHECK(builtin("F4", 3).root_count() == 48);
    CHECK(builtin("D4", 3).root_count() == 24);
    CHECK(builtin("E6", 3).root_count() == 72);
    CHECK(builtin("GL3", 3).root_count() == 6);
    CHECK(builtin("T2", 3).root_count() == 0);
}

TEST_CASE("validation failures carry offending indices") {
    // <alpha, alpha^vee> = 4: axiom failure, not an exception.
    RootDatum bad = sl2_like(3, "2", "2");
    ValidationReport rep = validate(bad);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(item(rep, "pairing_two").pass);
    CHECK(item(rep, "pairing_two").offenders == std::vector<int>{0, 1});
    CHECK(item(rep, "pairing_unimodular").pass);

    // A non-unit rescaling of a root cannot carry a Z[1/p]-legal coroot that
    // pairs to 2; with the original coroot kept, the pairing axiom trips.
    {
        MatZ pairing = MatZ::identity(1);
        RootDatum scaled(3, pairing,
                         {vq({"2"}), vq({"-2"}), vq({"4"}), vq({"-4"})},
                         {vq({"1"}), vq({"-1"}), vq({"1"}), vq({"-1"})}, 2);
        ValidationReport r = validate(scaled);
        CHECK_FALSE(r.ok);
        CHECK_FALSE(item(r, "pairing_two").pass);
        CHECK(item(r, "pairing_two").offenders == std::vector<int>{2, 3});
    }

    // A p-power rescaling is a unit: the representative collapses onto the
    // original orbit and the list now contains a duplicate.
    {
        MatZ pairing = MatZ::identity(1);
        RootDatum dup(2, pairing,
                      {vq({"1"}), vq({"-1"}), vq({"4"}), vq({"-4"})},
                      {vq({"2"}), vq({"-2"}), vq({"1/2"}), vq({"-1/2"})}, 2);
        ValidationReport r = validate(dup);
        CHECK_FALSE(r.ok);
        CHECK(item(r, "pairing_two").pass); // the scaled pair still pairs to 2
        CHECK_FALSE(item(r, "no_unit_multiples").pass);
    }

    // Two root pairs of A2 without their sum: reflection closure fails.
    {
        MatZ pairing = MatZ::identity(2);
        RootDatum partial(3, pairing,
                          {vq({"2", "-1"}), vq({"-1", "2"}), vq({"-2", "1"}), vq({"1", "-2"})},
                          {vq({"1", "0"}), vq({"0", "1"}), vq({"-1", "0"}), vq({"0", "-1"})}, 2);
        ValidationReport r = validate(partial);
        CHECK_FALSE(r.ok);
        CHECK_FALSE(item(r, "reflection_closed").pass);
        CHECK_FALSE(item(r, "reflection_closed").offenders.empty());
        CHECK(item(r, "pairing_two").pass);
    }

    // Missing negatives.
    {
        MatZ pairing = MatZ::identity(1);
        RootDatum lopsided(3, pairing, {vq({"2"})}, {vq({"1"})}, 1);
        ValidationReport r = validate(lopsided);
        CHECK_FALSE(r.ok);
        CHECK_FALSE(item(r, "negation_closed").pass);
    }
}

TEST_CASE("reflections are involutive and act as expected") {
    RootDatum sl2 = builtin("SL2", 3);
    MatQ s = reflection(sl2, 0, Side::OnX);
    CHECK(s(0, 0) == LocalizedRational(-1)); // rank-1 reflection is -id
    CHECK(s * s == MatQ::identity(1));

    RootDatum sl3 = builtin("SL3", 5);
    // s_alpha(beta) = alpha + beta for the two adjacent simple roots of A2.
    MatQ sa = reflection(sl3, 0, Side::OnX);
    VecQ beta(2);
    for (int i = 0; i < 2; ++i) beta[static_cast<size_t>(i)] = LocalizedRational(sl3.root(1)[static_cast<size_t>(i)]);
    VecQ image = sa * beta;
    VecQ expect(2);
    for (int i = 0; i < 2; ++i)
        expect[static_cast<size_t>(i)] = LocalizedRational(
            mpz_class(sl3.root(0)[static_cast<size_t>(i)] + sl3.root(1)[static_cast<size_t>(i)]));
    CHECK(image == expect);

    for (const char* name : {"Sp4", "SO5", "G2", "SL4"}) {
        RootDatum rd = builtin(name, 3);
        for (int i = 0; i < rd.root_count(); ++i) {
            MatQ sx = reflection(rd, i, Side::OnX);
            MatQ sy = reflection(rd, i, Side::OnY);
            CHECK(sx * sx == MatQ::identity(rd.rank_x()));
            CHECK(sy * sy == MatQ::identity(rd.rank_y()));
            // s_alpha(alpha) = -alpha
            VecQ a(static_cast<size_t>(rd.rank_x()));
            for (int k = 0; k < rd.rank_x(); ++k)
                a[static_cast<size_t>(k)] = LocalizedRational(rd.root(i)[static_cast<size_t>(k)]);
            VecQ na = sx * a;
            for (int k = 0; k < rd.rank_x(); ++k)
                CHECK(na[static_cast<size_t>(k)] == -a[static_cast<size_t>(k)]);
        }
        CHECK_THROWS_AS(reflection(rd, rd.root_count(), Side::OnX), Error);
    }
}

TEST_CASE("reflection pair identity on random instances") {
    // For any functional phi and vectors k1, k2 with phi(k1) = phi(k2) = 2, the
    // reflections v -> v - phi(v) k_i satisfy (s1 s2)^j (k1) = k1 + 2j(k1-k2).
    std::mt19937_64 rng(0xb01dface5eedULL);
    std::uniform_int_distribution<int> rank_dist(1, 4);
    std::uniform_int_distribution<long> coeff(-4, 4);
    for (int trial = 0; trial < 60; ++trial) {
        int n = rank_dist(rng);
        std::vector<long> phi(static_cast<size_t>(n));
        phi[0] = 1; // guarantees solvability of phi(k) = 2 over Z
        for (int i = 1; i < n; ++i) phi[static_cast<size_t>(i)] = coeff(rng);
        auto random_kappa = [&]() {
            std::vector<long> k(static_cast<size_t>(n));
            for (int i = 1; i < n; ++i) k[static_cast<size_t>(i)] = coeff(rng);
            long rest = 0;
            for (int i = 1; i < n; ++i) rest += phi[static_cast<size_t>(i)] * k[static_cast<size_t>(i)];
            k[0] = 2 - rest;
            return k;
        };
        std::vector<long> k1 = random_kappa(), k2 = random_kappa();
        auto apply_s = [&](const std::vector<long>& kappa, std::vector<long> v) {
            long val = 0;
            for (int i = 0; i < n; ++i) val += phi[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
            for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] -= val * kappa[static_cast<size_t>(i)];
            return v;
        };
        std::vector<long> v = k1;
        for (long j = 1; j <= 10; ++j) {
            v = apply_s(k1, apply_s(k2, v)); // (s1 s2) applied once more
            for (int i = 0; i < n; ++i) {
                long expect = k1[static_cast<size_t>(i)] +
                              2 * j * (k1[static_cast<size_t>(i)] - k2[static_cast<size_t>(i)]);
                CHECK(v[static_cast<size_t>(i)] == expect);
            }
        }
    }
}

TEST_CASE("weyl groups by enumeration") {
    CHECK(weyl_group(builtin("SL2", 3)).order == 2);
    CHECK(weyl_group(builtin("SL3", 3)).order == 6);
    CHECK(weyl_group(builtin("Sp4", 3)).order == 8);
    CHECK(weyl_group(builtin("SO5", 3)).order == 8);
    CHECK(weyl_group(builtin("B2", 3)).order == 8);
    CHECK(weyl_group(builtin("G2", 3)).order == 12);
    CHECK(weyl_group(builtin("SL4", 3)).order == 24);
    CHECK(weyl_group(builtin("SO6", 3)).order == 24);
    CHECK(weyl_group(builtin("SO7", 3)).order == 48);
    CHECK(weyl_group(builtin("Sp6", 3)).order == 48);
    CHECK(weyl_group(builtin("GL3", 3)).order == 6);
    CHECK(weyl_group(builtin("D4", 3)).order == 192);
    CHECK(weyl_group(builtin("T2", 3)).order == 1);

    WeylGroup w = weyl_group(builtin("Sp4", 5));
    CHECK(w.elements.size() == 8);
    CHECK(w.cartan_type == "B2");
    REQUIRE(w.longest.has_value());
    for (int i = 0; i < 4; ++i) CHECK((*w.longest)[static_cast<size_t>(i)] >= 4);

    // Same order on both sides of duality.
    for (const char* name : {"SL3", "Sp4", "SO7", "G2", "GL3"}) {
        RootDatum rd = builtin(name, 3);
        CHECK(weyl_group(rd).order == weyl_group(dual(rd)).order);
    }
}

TEST_CASE("weyl enumeration cap falls back to the classified order") {
    WeylGroup w = weyl_group(builtin("E6", 3), 100);
    CHECK(w.order == 51840);
    CHECK(w.elements.empty());
    CHECK(w.cartan_type == "E6");

    WeylGroup full = weyl_group(builtin("F4", 3));
    CHECK(full.order == 1152);
    CHECK(full.elements.size() == 1152);
}

TEST_CASE("weyl elements permute roots compatibly with conjugation") {
    // w s_a w^{-1} = s_{w(a)} holds in the faithful permutation action.
    for (const char* name : {"SL3", "Sp4", "SL4"}) {
        RootDatum rd = builtin(name, 3);
        WeylGroup w = weyl_group(rd);
        int m = rd.root_count();
        std::vector<RootPermutation> refl(static_cast<size_t>(m));
        for (int a = 0; a < m; ++a) {
            RootPermutation perm(static_cast<size_t>(m));
            for (int b = 0; b < m; ++b) {
                LocalizedRational c = rd.pair(to_rational(rd.root(b)), rd.coroot(a));
                VecQ image = sub(to_rational(rd.root(b)), scale(to_rational(rd.root(a)), c));
                int j = find_orbit(rd.roots(), image, rd.p());
                REQUIRE(j >= 0);
                perm[static_cast<size_t>(b)] = j;
            }
            refl[static_cast<size_t>(a)] = perm;
        }
        for (const auto& elem : w.elements) {
            RootPermutation inv(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) inv[static_cast<size_t>(elem[static_cast<size_t>(i)])] = i;
            for (int a = 0; a < m; ++a) {
                const RootPermutation& sa = refl[static_cast<size_t>(a)];
                const RootPermutation& swa = refl[static_cast<size_t>(elem[static_cast<size_t>(a)])];
                for (int i = 0; i < m; ++i) {
                    int conj = elem[static_cast<size_t>(sa[static_cast<size_t>(inv[static_cast<size_t>(i)])])];
                    CHECK(conj == swa[static_cast<size_t>(i)]);
                }
            }
        }
    }
}

TEST_CASE("dynkin classification") {
    CHECK(dynkin_classify(builtin("GL3", 3)) == "A2 + T1");
    CHECK(dynkin_classify(builtin("SO5", 3)) == "B2");
    CHECK(dynkin_classify(builtin("Sp4", 3)) == "B2"); // rank-2 canonical name
    CHECK(dynkin_classify(builtin("T2", 3)) == "T2");
    CHECK(dynkin_classify(builtin("SL4", 3)) == "A3");
    CHECK(dynkin_classify(builtin("SO6", 3)) == "A3"); // D3 = A3
    CHECK(dynkin_classify(builtin("SO7", 3)) == "B3");
    CHECK(dynkin_classify(builtin("Sp6", 3)) == "C3");
    CHECK(dynkin_classify(builtin("Sp6", 2)) == "B3"); // normalization rescales the long roots
    CHECK(dynkin_classify(builtin("SO4", 3)) == "A1 + A1");
    CHECK(dynkin_classify(builtin("SO3", 3)) == "A1");
    CHECK(dynkin_classify(builtin("D4", 3)) == "D4");
    CHECK(dynkin_classify(builtin("E6", 3)) == "E6");
    CHECK(dynkin_classify(builtin("F4", 3)) == "F4");
    CHECK(dynkin_classify(builtin("G2", 3)) == "G2");
    CHECK(dynkin_classify(builtin("GL2", 3)) == "A1 + T1");
    CHECK(dynkin_classify(builtin("B2ad", 3)) == "B2");
    CHECK(dynkin_classify(builtin("B3ad", 5)) == "B3");
    CHECK(dynkin_classify(builtin("C3ad", 5)) == "C3");
}

TEST_CASE("duality is an involution and swaps the classical pairs") {
    for (const std::string& name : builtin_names()) {
        for (long p : {2L, 3L}) {
            RootDatum rd = builtin(name, p);
            CHECK(same_structure(dual(dual(rd)), rd));
        }
    }
    CHECK(same_structure(dual(builtin("SL2", 3)), builtin("PGL2", 3)));
    CHECK(same_structure(dual(builtin("PGL2", 3)), builtin("SL2", 3)));
    CHECK(same_structure(dual(builtin("Sp4", 3)), builtin("SO5", 3)));
    CHECK(same_structure(dual(builtin("SO5", 3)), builtin("Sp4", 3)));
    CHECK(same_structure(dual(builtin("Sp6", 5)), builtin("SO7", 5)));
    CHECK(same_structure(dual(builtin("SL4", 3)), builtin("PGL4", 3)));
}

TEST_CASE("reflection form round trip and the index-2 dichotomy") {
    for (const std::string& name : builtin_names()) {
        RootDatum rd = builtin(name, 3);
        ReflectionDatum rf = to_reflection_form(rd);
        CHECK(static_cast<int>(rf.reflections.size()) == rd.positive_count());
        for (const auto& entry : rf.reflections) {
            CHECK(entry.sigma * entry.sigma == MatQ::identity(rf.rank));
            // (2P) dichotomy for integral data: index 1 or 2.
            CHECK((entry.image_index == 1 || entry.image_index == 2));
        }
        if (rd.root_count() > 0) {
            RootDatum back = from_reflection_form(rf);
            CHECK(same_structure(back, rd));
        }
    }

    // Index 2 occurs exactly at the long roots of the simply connected B2
    // (they are 2-divisible in the weight lattice) and at the long roots of
    // Sp4 at odd p; SO5's roots are all primitive, so its indices are all 1.
    auto count_index2 = [](const RootDatum& rd) {
        int c = 0;
        for (const auto& e : to_reflection_form(rd).reflections)
            if (e.image_index == 2) ++c;
        return c;
    };
    CHECK(count_index2(builtin("B2", 3)) == 2);
    CHECK(count_index2(builtin("Sp4", 3)) == 2);
    CHECK(count_index2(builtin("SO5", 3)) == 0);
    CHECK(count_index2(builtin("Sp4", 2)) == 0); // normalized away at p = 2

    // SL2: one reflection, -id on Y, line generated by the coroot.
    ReflectionDatum rf = to_reflection_form(builtin("SL2", 3));
    REQUIRE(rf.reflections.size() == 1);
    CHECK(rf.reflections[0].sigma(0, 0) == LocalizedRational(-1));
    CHECK(rf.reflections[0].line == vq({"1"}));
    CHECK(same_structure(from_reflection_form(rf), builtin("SL2", 3)));
}

TEST_CASE("from_reflection_form rejects non-involutions and escaped lines") {
    ReflectionDatum rf;
    rf.rank = 2;
    rf.p = 3;

    ReflectionEntry identity_entry;
    identity_entry.sigma = MatQ::identity(2);
    identity_entry.line = vq({"1", "0"});
    rf.reflections = {identity_entry};
    CHECK_THROWS_AS(from_reflection_form(rf), Error);

    ReflectionEntry rotation; // order 4
    rotation.sigma = matq2("0", "-1", "1", "0");
    rotation.line = vq({"1", "0"});
    rf.reflections = {rotation};
    CHECK_THROWS_AS(from_reflection_form(rf), Error);

    ReflectionEntry escaped; // swap is an involution, but 1 - sigma has rank 2... no:
    escaped.sigma = matq2("0", "1", "1", "0");
    escaped.line = vq({"1", "0"}); // true image line is (1,-1)
    rf.reflections = {escaped};
    CHECK_THROWS_AS(from_reflection_form(rf), Error);

    ReflectionEntry good; // the swap with the correct line round-trips to A1-like data
    good.sigma = matq2("0", "1", "1", "0");
    good.line = vq({"1", "-1"});
    rf.reflections = {good};
    RootDatum rd = from_reflection_form(rf);
    CHECK(validate(rd).ok);
    CHECK(rd.root(0) == vz({1, -1}));
    CHECK(rd.coroot(0) == vq({"1", "-1"}));
}

TEST_CASE("dominance") {
    RootDatum sl2 = builtin("SL2", 3);
    CHECK(is_dominant(sl2, vq({"5/3"})));
    CHECK_FALSE(is_dominant(sl2, vq({"-1"})));
    CHECK(is_dominant(sl2, vq({"0"})));
    CHECK_FALSE(is_dominant(sl2, vq({"0"}), /*strict=*/true));
    CHECK(is_dominant(sl2, vq({"1/9"}), /*strict=*/true));
    CHECK_THROWS_AS(is_dominant(sl2, vq({"1", "2"})), Error);

    RootDatum gl3 = builtin("GL3", 3);
    CHECK(is_dominant(gl3, vq({"1", "0", "-1"})));
    CHECK(is_dominant(gl3, vq({"1", "0", "-1"}), /*strict=*/true));
    CHECK_FALSE(is_dominant(gl3, vq({"0", "1", "0"})));
    CHECK(is_dominant(gl3, vq({"2", "2", "1"})));
    CHECK_FALSE(is_dominant(gl3, vq({"2", "2", "1"}), /*strict=*/true));
}

TEST_CASE("block equivalence is the root-span test") {
    RootDatum sl2_3 = builtin("SL2", 3);
    CHECK(block_equivalent(sl2_3, vq({"1"}), vq({"1/3"})));
    CHECK_FALSE(block_equivalent(sl2_3, vq({"1"}), vq({"2"})));
    RootDatum sl2_2 = builtin("SL2", 2);
    CHECK(block_equivalent(sl2_2, vq({"1"}), vq({"2"})));

    // GL3: difference must lie in the span of e_i - e_j, i.e. coordinates sum to 0.
    RootDatum gl3 = builtin("GL3", 3);
    CHECK(block_equivalent(gl3, vq({"1", "0", "0"}), vq({"0", "0", "1"})));
    CHECK(block_equivalent(gl3, vq({"1/3", "0", "-1/3"}), vq({"0", "0", "0"})));
    CHECK_FALSE(block_equivalent(gl3, vq({"1", "0", "0"}), vq({"0", "0", "0"})));
    CHECK_THROWS_AS(block_equivalent(gl3, vq({"1"}), vq({"0"})), Error);
}

TEST_CASE("rho half-sums") {
    auto r1 = rho(builtin("SL2", 3));
    REQUIRE(r1.size() == 1);
    CHECK(r1[0] == mpq_class(1));

    auto r2 = rho(builtin("GL3", 3));
    CHECK(r2 == std::vector<mpq_class>{mpq_class(1), mpq_class(0), mpq_class(-1)});

    auto r3 = rho(builtin("SO5", 3));
    CHECK(r3 == std::vector<mpq_class>{mpq_class(3, 2), mpq_class(1, 2)});
}
