#include "perfrd/zp_equiv.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "perfrd/errors.hpp"

namespace perfrd {

std::string to_string(IsoStatus s) {
    switch (s) {
        case IsoStatus::Isomorphic: return "Isomorphic";
        case IsoStatus::NotIsomorphic: return "NotIsomorphic";
        case IsoStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

namespace {

void require_same_prime(const RootDatum& a, const RootDatum& b) {
    if (a.p() != b.p())
        fail(Errc::PrimeMismatch, "root data are localized at different primes");
}

void require_phi_shape(const RootDatum& a, const RootDatum& b, const MatQ& phi) {
    if (phi.rows() != b.rank_x() || phi.cols() != a.rank_x())
        fail(Errc::DimensionMismatch, "map must be rank_x(rd2) x rank_x(rd1)");
}

// |q| with all powers of p divided out of numerator and denominator.
mpq_class p_free_abs(const mpq_class& q, long p) {
    mpz_class num = abs(q.get_num());
    mpz_class den = q.get_den();
    while (num != 0 && num % p == 0) num /= p;
    while (den % p == 0) den /= p;
    mpq_class out(num, den);
    out.canonicalize();
    return out;
}

// How each root of `a` lands in the scaling orbits of `b`'s roots:
// phi(root_i(a)) = p^scalepow[i] * root_{image[i]}(b), with image a bijection.
struct RootMatch {
    std::vector<int> image;
    std::vector<long> scalepow;
};

std::optional<RootMatch> match_roots(const RootDatum& a, const RootDatum& b, const MatQ& phi) {
    if (a.root_count() != b.root_count()) return std::nullopt;
    RootMatch m;
    m.image.resize(static_cast<size_t>(a.root_count()));
    m.scalepow.resize(static_cast<size_t>(a.root_count()));
    std::vector<char> used(static_cast<size_t>(b.root_count()), 0);
    for (int i = 0; i < a.root_count(); ++i) {
        VecQ v = phi * to_rational(a.root(i));
        long k = 0;
        int j = find_orbit(b.roots(), v, a.p(), &k);
        if (j < 0 || used[static_cast<size_t>(j)]) return std::nullopt;
        used[static_cast<size_t>(j)] = 1;
        m.image[static_cast<size_t>(i)] = j;
        m.scalepow[static_cast<size_t>(i)] = k;
    }
    return m;
}

// phi(alpha) = p^k * beta forces the coroot condition phiv(beta^vee) = p^k * alpha^vee,
// i.e. p^{-k} * phiv(beta^vee) = alpha^vee.
bool coroots_match(const RootDatum& a, const RootDatum& b, const MatQ& phi, const RootMatch& m) {
    MatQ phiv = dual_map(phi, a.pairing(), b.pairing()); // Y_2 -> Y_1
    for (int i = 0; i < a.root_count(); ++i) {
        VecQ w = phiv * b.coroot(m.image[static_cast<size_t>(i)]);
        LocalizedRational s = pow_p(a.p(), -m.scalepow[static_cast<size_t>(i)]);
        const VecQ& target = a.coroot(i);
        for (size_t t = 0; t < w.size(); ++t)
            if (s * w[t] != target[t]) return false;
    }
    return true;
}

} // namespace

bool check_isomorphism(const RootDatum& rd1, const RootDatum& rd2, const MatQ& phi) {
    require_same_prime(rd1, rd2);
    require_phi_shape(rd1, rd2, phi);
    if (rd1.rank_x() != rd2.rank_x()) return false;
    long p = rd1.p();
    if (!entries_p_local(phi, p)) return false;
    if (rd1.rank_x() == 0) return rd1.root_count() == 0 && rd2.root_count() == 0;
    if (!is_unit_determinant(phi, p)) return false;
    std::optional<RootMatch> m = match_roots(rd1, rd2, phi);
    if (!m) return false;
    return coroots_match(rd1, rd2, phi, *m);
}

IsogenyCheck check_isogeny(const RootDatum& rd1, const RootDatum& rd2, const MatQ& phi) {
    require_same_prime(rd1, rd2);
    require_phi_shape(rd1, rd2, phi);
    long p = rd1.p();
    IsogenyCheck out;
    if (!entries_p_local(phi, p)) {
        out.reasons.push_back("entry not in Z[1/" + std::to_string(p) + "]");
        return out;
    }
    if (rank(phi) != rd1.rank_x()) out.reasons.push_back("the map is not injective");
    MatQ phiv = dual_map(phi, rd1.pairing(), rd2.pairing());
    if (rank(phiv) != rd2.rank_y()) out.reasons.push_back("the dual map is not injective");
    std::optional<RootMatch> m = match_roots(rd1, rd2, phi);
    if (!m) {
        out.reasons.push_back("roots do not map bijectively onto the target root orbits");
    } else if (!coroots_match(rd1, rd2, phi, *m)) {
        out.reasons.push_back("coroot images do not match with reciprocal scalings");
    }
    if (!out.reasons.empty()) return out;
    out.ok = true;
    out.witness = IsogenyWitness{phi, m->image, steinberg_normalize(phi, p).shift};
    return out;
}

SteinbergForm steinberg_normalize(const MatQ& phi, long p) {
    require_prime(p);
    if (!entries_p_local(phi, p))
        fail(Errc::NotPLocal, "map has entries outside Z[1/p]");
    bool any = false;
    long minv = 0;
    for (int i = 0; i < phi.rows(); ++i)
        for (int j = 0; j < phi.cols(); ++j) {
            const LocalizedRational& e = phi(i, j);
            if (e.is_zero()) continue;
            long v = p_valuation(e, p);
            if (!any || v < minv) minv = v;
            any = true;
        }
    SteinbergForm out;
    out.theta = MatZ(phi.rows(), phi.cols());
    if (!any) return out;
    out.shift = -minv;
    LocalizedRational scale = pow_p(p, out.shift);
    for (int i = 0; i < phi.rows(); ++i)
        for (int j = 0; j < phi.cols(); ++j)
            out.theta(i, j) = (scale * phi(i, j)).to_integer();
    return out;
}

// --- invariant battery ---------------------------------------------------------------

namespace {

int torus_rank_of(const RootDatum& rd) {
    if (rd.root_count() == 0) return rd.rank_x();
    MatQ all(rd.rank_x(), rd.root_count());
    for (int j = 0; j < rd.root_count(); ++j)
        for (int i = 0; i < rd.rank_x(); ++i)
            all(i, j) = LocalizedRational(rd.root(j)[static_cast<size_t>(i)]);
    return rd.rank_x() - rank(all);
}

std::optional<long> weyl_order_of(const RootDatum& rd) {
    try {
        // Cap 1 forces the classification path immediately; the order is exact
        // whenever the datum classifies.
        return weyl_group(rd, 1).order;
    } catch (const Error& e) {
        if (e.code == Errc::CapExceededWithoutClassification ||
            e.code == Errc::NotCrystallographic)
            return std::nullopt;
        throw;
    }
}

// Dynkin type tokens with the identifications that hold after inverting p:
// at p = 2 the two rank-n double-bond chains coincide, so C tokens are
// renamed to B.  (The rank-2 chain and the arrow-reversed F4/G2 already
// share a token with their flips.)
std::optional<std::string> canonical_dynkin(const RootDatum& rd, long p) {
    std::string s;
    try {
        s = dynkin_classify(rd);
    } catch (const Error& e) {
        if (e.code == Errc::NotCrystallographic) return std::nullopt;
        throw;
    }
    std::vector<std::string> tokens;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find(" + ", pos);
        if (next == std::string::npos) {
            tokens.push_back(s.substr(pos));
            break;
        }
        tokens.push_back(s.substr(pos, next - pos));
        pos = next + 3;
    }
    if (p == 2)
        for (std::string& t : tokens)
            if (!t.empty() && t[0] == 'C') t[0] = 'B';
    std::sort(tokens.begin(), tokens.end());
    std::string out;
    for (const std::string& t : tokens) {
        if (!out.empty()) out += " + ";
        out += t;
    }
    return out;
}

// Invariant factors of X / (Z-span of the stored roots), with all powers of p
// removed; "1" when nothing but p-torsion (or nothing at all) remains.  The
// coroot variant uses the p-primitive integer representatives.
std::string prime_to_p_factors(const RootDatum& rd, bool coroot_side, long p) {
    int n = coroot_side ? rd.rank_y() : rd.rank_x();
    int m = rd.root_count();
    if (m == 0) return "1";
    MatZ mat(n, m);
    for (int j = 0; j < m; ++j) {
        VecZ col = coroot_side ? p_primitive(rd.coroot(j), p) : rd.root(j);
        for (int i = 0; i < n; ++i) mat(i, j) = col[static_cast<size_t>(i)];
    }
    SmithDecomposition snf = smith_normal_form(mat);
    std::vector<std::string> kept;
    for (const mpz_class& d0 : snf.diag) {
        if (d0 == 0) continue;
        mpz_class d = abs(d0);
        while (d % p == 0) d /= p;
        if (d != 1) kept.push_back(d.get_str());
    }
    if (kept.empty()) return "1";
    std::string out;
    for (const std::string& k : kept) {
        if (!out.empty()) out += ",";
        out += k;
    }
    return out;
}

std::optional<IsoCertificate> battery(const RootDatum& a, const RootDatum& b, long p) {
    auto mk = [](const char* name, const std::string& l, const std::string& r) {
        return IsoCertificate{name, l, r};
    };
    if (a.rank_x() != b.rank_x())
        return mk("rank_X", std::to_string(a.rank_x()), std::to_string(b.rank_x()));
    if (a.root_count() != b.root_count())
        return mk("root_count", std::to_string(a.root_count()), std::to_string(b.root_count()));
    int ta = torus_rank_of(a), tb = torus_rank_of(b);
    if (ta != tb) return mk("torus_rank", std::to_string(ta), std::to_string(tb));
    std::optional<long> wa = weyl_order_of(a), wb = weyl_order_of(b);
    if (wa && wb && *wa != *wb)
        return mk("weyl_order", std::to_string(*wa), std::to_string(*wb));
    std::optional<std::string> da = canonical_dynkin(a, p), db = canonical_dynkin(b, p);
    if (da && db && *da != *db) return mk("dynkin_multiset", *da, *db);
    std::string fa = prime_to_p_factors(a, false, p), fb = prime_to_p_factors(b, false, p);
    if (fa != fb) return mk("invariant_factors_X_mod_R", fa, fb);
    std::string ga = prime_to_p_factors(a, true, p), gb = prime_to_p_factors(b, true, p);
    if (ga != gb) return mk("invariant_factors_Y_mod_Rv", ga, gb);
    return std::nullopt;
}

// --- witness search -------------------------------------------------------------------

// delta with c2 == p^delta * c1, for nonzero integers of the same sign.
std::optional<long> p_power_ratio(long c1, long c2, long p) {
    if (c1 == 0 || c2 == 0 || (c1 < 0) != (c2 < 0)) return std::nullopt;
    long x = std::abs(c1), y = std::abs(c2);
    auto logp = [p](long q) -> std::optional<long> {
        long e = 0;
        while (q % p == 0) {
            q /= p;
            ++e;
        }
        if (q != 1) return std::nullopt;
        return e;
    };
    if (y % x == 0) {
        if (auto e = logp(y / x)) return *e;
    }
    if (x % y == 0) {
        if (auto e = logp(x / y)) return -*e;
    }
    return std::nullopt;
}

// A matched pair of Dynkin components: img[t] is the target simple position
// for source simple position nodes_a[t], and off[t] the exponent of the
// p-power scaling of its root image relative to the component anchor.
struct ComponentMatching {
    std::vector<int> img;
    std::vector<long> off;
};

// All structure-compatible bijections nodes_a -> nodes_b.  Edge ratios must be
// p-powers, which pins the relative exponents; the anchor (first BFS node) sits
// at exponent 0.
std::vector<ComponentMatching> component_matchings(const SimpleSystem& sa, const SimpleSystem& sb,
                                                   const std::vector<int>& nodes_a,
                                                   const std::vector<int>& nodes_b, long p) {
    std::vector<ComponentMatching> out;
    size_t r = nodes_a.size();
    if (r != nodes_b.size()) return out;
    if (r == 0) return out;

    // BFS order over the source component so each node after the first has an
    // already-assigned neighbor (components are connected).
    std::vector<int> order;
    {
        std::set<int> pending(nodes_a.begin(), nodes_a.end());
        std::queue<int> q;
        q.push(nodes_a[0]);
        pending.erase(nodes_a[0]);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            order.push_back(u);
            for (int v : nodes_a)
                if (pending.count(v) && sa.cartan[static_cast<size_t>(u)][static_cast<size_t>(v)] != 0) {
                    pending.erase(v);
                    q.push(v);
                }
        }
        if (order.size() != r) return out; // disconnected: not a component
    }

    size_t total = sa.simples.size();
    std::vector<int> img_of(total, -1);
    std::vector<long> off_of(total, 0);
    std::vector<char> used(r, 0);

    auto consistent = [&](int u, int w, bool off_known, long* off_u) -> bool {
        // Validate against every already-assigned node; derive the offset of u
        // from the first bonded neighbor when it is not yet known.
        bool have = off_known;
        for (int v : order) {
            if (img_of[static_cast<size_t>(v)] < 0 || v == u) continue;
            int x = img_of[static_cast<size_t>(v)];
            long c1f = sa.cartan[static_cast<size_t>(v)][static_cast<size_t>(u)];
            long c2f = sb.cartan[static_cast<size_t>(x)][static_cast<size_t>(w)];
            long c1b = sa.cartan[static_cast<size_t>(u)][static_cast<size_t>(v)];
            long c2b = sb.cartan[static_cast<size_t>(w)][static_cast<size_t>(x)];
            if ((c1f == 0) != (c2f == 0) || (c1b == 0) != (c2b == 0)) return false;
            if (c1f == 0) continue;
            // Pairing preservation forces c2[m(v)][m(u)] = p^{k_v - k_u} c1[v][u].
            std::optional<long> d = p_power_ratio(c1f, c2f, p);
            if (!d) return false;
            long ku = off_of[static_cast<size_t>(v)] - *d;
            if (!have) {
                *off_u = ku;
                have = true;
            } else if (*off_u != ku) {
                return false;
            }
            std::optional<long> dback = p_power_ratio(c1b, c2b, p);
            if (!dback || *dback != *off_u - off_of[static_cast<size_t>(v)]) return false;
        }
        return have;
    };

    std::function<void(size_t)> recurse = [&](size_t t) {
        if (t == r) {
            ComponentMatching m;
            m.img.reserve(r);
            m.off.reserve(r);
            for (int u : nodes_a) {
                m.img.push_back(img_of[static_cast<size_t>(u)]);
                m.off.push_back(off_of[static_cast<size_t>(u)]);
            }
            out.push_back(std::move(m));
            return;
        }
        int u = order[t];
        for (size_t wi = 0; wi < r; ++wi) {
            if (used[wi]) continue;
            int w = nodes_b[wi];
            long off_u = 0;
            bool known = (t == 0); // the anchor node sits at exponent 0
            if (!consistent(u, w, known, &off_u)) continue;
            img_of[static_cast<size_t>(u)] = w;
            off_of[static_cast<size_t>(u)] = off_u;
            used[wi] = 1;
            recurse(t + 1);
            img_of[static_cast<size_t>(u)] = -1;
            used[wi] = 0;
        }
    };
    recurse(0);
    return out;
}

// Values tried for undetermined entries, graded so that sparse candidates come
// first: 0, then +-a * p^e by increasing |a|, then |e|.
std::vector<LocalizedRational> value_ladder(long p, const SearchBudget& budget) {
    std::vector<LocalizedRational> out;
    std::set<mpq_class> seen;
    auto push = [&](const LocalizedRational& v) {
        if (seen.insert(v.value()).second) out.push_back(v);
    };
    push(LocalizedRational(0));
    for (long a = 1; a <= budget.coeff_bound; ++a)
        for (long estep = 0; estep <= budget.exp_bound; ++estep)
            for (int esign = 0; esign < (estep == 0 ? 1 : 2); ++esign) {
                LocalizedRational base = pow_p(p, esign == 0 ? estep : -estep) * LocalizedRational(a);
                push(base);
                push(-base);
            }
    return out;
}

struct SearchContext {
    const RootDatum& a;
    const RootDatum& b;
    const SearchBudget& budget;
    bool reflection_level = false;
    BudgetCounters counters;
    bool budget_hit = false;
    std::optional<MatQ> found;

    // True when a verified witness was recorded (or the budget ran out and the
    // caller should unwind).
    bool try_candidate(const MatQ& phi) {
        if (counters.nodes >= budget.node_budget) {
            budget_hit = true;
            return false;
        }
        ++counters.nodes;
        if (!reflection_level) {
            if (!check_isomorphism(a, b, phi)) return false;
            std::vector<long> spreads = witness_exponent_spreads(a, b, phi);
            long bound = a.p() <= 3 ? 1 : 0;
            for (long s : spreads)
                if (s > bound)
                    fail(Errc::InvalidArgument,
                         "internal: verified witness violates the exponent spread bound");
            found = phi;
            return true;
        }
        if (det(phi).is_zero()) return false;
        MatQ psi = inverse(dual_map(phi, a.pairing(), b.pairing()));
        if (!check_reflection_iso(a, b, psi)) return false;
        found = psi;
        return true;
    }
};

// Candidates for one global simple matching: solve phi on the span of the
// simple roots and, when torus directions remain, enumerate the kernel block.
bool emit_candidates(SearchContext& ctx, const SimpleSystem& sa, const SimpleSystem& sb,
                     const std::vector<int>& to_b, const std::vector<long>& off,
                     const std::vector<LocalizedRational>& ladder) {
    const RootDatum& a = ctx.a;
    const RootDatum& b = ctx.b;
    long p = a.p();
    int n = a.rank_x();
    int s = static_cast<int>(sa.simples.size());

    // Per-component anchor exponents.  A global p-power rescaling of the image
    // is invisible to the checks, so a lone component that spans X needs no
    // anchor sweep; otherwise the relative scale between blocks matters.
    std::vector<long> anchor_vals{0};
    if (!(sa.component_count == 1 && s == n))
        for (long e = 1; e <= ctx.budget.exp_bound; ++e) {
            anchor_vals.push_back(e);
            anchor_vals.push_back(-e);
        }
    int ncomp = std::max(sa.component_count, 1);
    std::vector<size_t> anchor_idx(static_cast<size_t>(ncomp), 0);
    if (sa.component_count == 0) anchor_idx.clear();

    MatQ A(n, s);
    for (int t = 0; t < s; ++t) {
        const VecZ& col = a.root(sa.simples[static_cast<size_t>(t)]);
        for (int i = 0; i < n; ++i) A(i, t) = LocalizedRational(col[static_cast<size_t>(i)]);
    }

    while (true) {
        MatQ B(n, s);
        for (int t = 0; t < s; ++t) {
            long anchor = sa.component_count == 0
                              ? 0
                              : anchor_vals[anchor_idx[static_cast<size_t>(
                                    sa.component[static_cast<size_t>(t)])]];
            LocalizedRational sc = pow_p(p, off[static_cast<size_t>(t)] + anchor);
            const VecZ& col = b.root(sb.simples[static_cast<size_t>(to_b[static_cast<size_t>(t)])]);
            for (int i = 0; i < n; ++i)
                B(i, t) = sc * LocalizedRational(col[static_cast<size_t>(i)]);
        }

        if (s == n) {
            if (ctx.try_candidate(B * inverse(A)) || ctx.budget_hit) return ctx.found.has_value();
        } else {
            // Row r of phi solves A^T x = (row r of B)^T; the kernel of A^T is
            // shared across rows.
            MatQ AT = A.transpose();
            std::vector<VecQ> particular(static_cast<size_t>(n));
            std::vector<VecQ> kernel;
            bool solvable = true;
            if (s == 0) {
                for (int r = 0; r < n; ++r)
                    particular[static_cast<size_t>(r)].assign(static_cast<size_t>(n),
                                                              LocalizedRational(0));
                for (int t = 0; t < n; ++t) {
                    VecQ e(static_cast<size_t>(n), LocalizedRational(0));
                    e[static_cast<size_t>(t)] = LocalizedRational(1);
                    kernel.push_back(std::move(e));
                }
            } else {
                for (int r = 0; r < n && solvable; ++r) {
                    VecQ rhs(static_cast<size_t>(s));
                    for (int t = 0; t < s; ++t) rhs[static_cast<size_t>(t)] = B(r, t);
                    std::optional<AffineSolution> sol = solve_affine(AT, rhs);
                    if (!sol) {
                        solvable = false;
                        break;
                    }
                    particular[static_cast<size_t>(r)] = sol->particular;
                    if (r == 0) kernel = sol->kernel_basis;
                }
            }
            if (solvable) {
                size_t d = kernel.size();
                size_t slots = static_cast<size_t>(n) * d;
                std::vector<size_t> idx(slots, 0);
                while (true) {
                    MatQ phi(n, n);
                    for (int r = 0; r < n; ++r) {
                        VecQ row = particular[static_cast<size_t>(r)];
                        for (size_t t = 0; t < d; ++t) {
                            const LocalizedRational& c =
                                ladder[idx[static_cast<size_t>(r) * d + t]];
                            if (c.is_zero()) continue;
                            for (size_t col = 0; col < row.size(); ++col)
                                row[col] += c * kernel[t][col];
                        }
                        for (int col = 0; col < n; ++col)
                            phi(r, col) = row[static_cast<size_t>(col)];
                    }
                    if (ctx.try_candidate(phi) || ctx.budget_hit) return ctx.found.has_value();
                    // odometer over the ladder
                    size_t carry = 0;
                    while (carry < slots) {
                        if (++idx[carry] < ladder.size()) break;
                        idx[carry] = 0;
                        ++carry;
                    }
                    if (carry == slots) break;
                }
            }
        }

        // advance the anchor odometer
        if (anchor_idx.empty()) return false;
        size_t carry = 0;
        while (carry < anchor_idx.size()) {
            if (++anchor_idx[carry] < anchor_vals.size()) break;
            anchor_idx[carry] = 0;
            ++carry;
        }
        if (carry == anchor_idx.size()) return false;
    }
}

bool run_search(SearchContext& ctx) {
    SimpleSystem sa, sb;
    try {
        sa = simple_system(ctx.a);
        sb = simple_system(ctx.b);
    } catch (const Error& e) {
        if (e.code == Errc::NotCrystallographic) return false;
        throw;
    }
    if (sa.simples.size() != sb.simples.size()) return false;
    if (sa.component_count != sb.component_count) return false;
    int ncomp = sa.component_count;
    size_t s = sa.simples.size();

    std::vector<std::vector<int>> groups_a(static_cast<size_t>(ncomp)),
        groups_b(static_cast<size_t>(ncomp));
    for (size_t t = 0; t < s; ++t) {
        groups_a[static_cast<size_t>(sa.component[t])].push_back(static_cast<int>(t));
        groups_b[static_cast<size_t>(sb.component[t])].push_back(static_cast<int>(t));
    }

    // All structure-compatible matchings for every component pair.
    std::vector<std::vector<std::vector<ComponentMatching>>> table(static_cast<size_t>(ncomp));
    for (int ca = 0; ca < ncomp; ++ca) {
        table[static_cast<size_t>(ca)].resize(static_cast<size_t>(ncomp));
        for (int cb = 0; cb < ncomp; ++cb)
            if (groups_a[static_cast<size_t>(ca)].size() == groups_b[static_cast<size_t>(cb)].size())
                table[static_cast<size_t>(ca)][static_cast<size_t>(cb)] = component_matchings(
                    sa, sb, groups_a[static_cast<size_t>(ca)], groups_b[static_cast<size_t>(cb)],
                    ctx.a.p());
    }

    std::vector<LocalizedRational> ladder = value_ladder(ctx.a.p(), ctx.budget);
    std::vector<int> to_b(s, -1);
    std::vector<long> off(s, 0);
    std::vector<char> used_b(static_cast<size_t>(ncomp), 0);

    std::function<bool(int)> assign = [&](int ca) -> bool {
        if (ca == ncomp) return emit_candidates(ctx, sa, sb, to_b, off, ladder);
        for (int cb = 0; cb < ncomp; ++cb) {
            if (used_b[static_cast<size_t>(cb)]) continue;
            const std::vector<ComponentMatching>& options =
                table[static_cast<size_t>(ca)][static_cast<size_t>(cb)];
            if (options.empty()) continue;
            used_b[static_cast<size_t>(cb)] = 1;
            for (const ComponentMatching& cm : options) {
                const std::vector<int>& na = groups_a[static_cast<size_t>(ca)];
                for (size_t t = 0; t < na.size(); ++t) {
                    to_b[static_cast<size_t>(na[t])] = cm.img[t];
                    off[static_cast<size_t>(na[t])] = cm.off[t];
                }
                if (assign(ca + 1)) return true;
                if (ctx.budget_hit) break;
            }
            used_b[static_cast<size_t>(cb)] = 0;
            if (ctx.budget_hit) return false;
        }
        return false;
    };
    return assign(0);
}

IsoVerdict decide_core(const RootDatum& a, const RootDatum& b, const SearchBudget& budget,
                       bool reflection_level) {
    require_same_prime(a, b);
    IsoVerdict v;
    if (std::optional<IsoCertificate> cert = battery(a, b, a.p())) {
        v.status = IsoStatus::NotIsomorphic;
        v.certificate = std::move(cert);
        return v;
    }
    SearchContext ctx{a, b, budget, reflection_level, {}, false, std::nullopt};
    if (a.rank_x() == b.rank_x()) ctx.try_candidate(MatQ::identity(a.rank_x()));
    if (!ctx.found) run_search(ctx);
    if (ctx.found) {
        v.status = IsoStatus::Isomorphic;
        v.witness = ctx.found;
    } else {
        v.status = IsoStatus::Unknown;
        v.budget_spent.exhausted = true;
    }
    v.budget_spent.nodes = ctx.counters.nodes;
    return v;
}

} // namespace

IsoVerdict decide_isomorphism(const RootDatum& rd1, const RootDatum& rd2,
                              const SearchBudget& budget) {
    return decide_core(rd1, rd2, budget, false);
}

IsoVerdict decide_reflection_iso(const RootDatum& rd1, const RootDatum& rd2,
                                 const SearchBudget& budget) {
    return decide_core(rd1, rd2, budget, true);
}

bool check_reflection_iso(const RootDatum& rd1, const RootDatum& rd2, const MatQ& psi) {
    require_same_prime(rd1, rd2);
    if (psi.rows() != rd2.rank_y() || psi.cols() != rd1.rank_y())
        fail(Errc::DimensionMismatch, "map must be rank_y(rd2) x rank_y(rd1)");
    if (rd1.rank_y() != rd2.rank_y()) return false;
    if (rd1.positive_count() != rd2.positive_count()) return false;
    long p = rd1.p();
    if (!entries_p_local(psi, p)) return false;
    if (rd1.rank_y() == 0) return true;
    if (!is_unit_determinant(psi, p)) return false;
    MatQ psi_inv = inverse(psi);

    int pc = rd1.positive_count();
    std::vector<MatQ> targets;
    targets.reserve(static_cast<size_t>(pc));
    for (int j = 0; j < pc; ++j) targets.push_back(reflection(rd2, j, Side::OnY));
    std::vector<char> used(static_cast<size_t>(pc), 0);

    for (int i = 0; i < pc; ++i) {
        MatQ tau = psi * reflection(rd1, i, Side::OnY) * psi_inv;
        int match = -1;
        for (int j = 0; j < pc; ++j)
            if (!used[static_cast<size_t>(j)] && tau == targets[static_cast<size_t>(j)]) {
                match = j;
                break;
            }
        if (match < 0) return false;
        used[static_cast<size_t>(match)] = 1;

        // The line through the coroot must map onto its partner's line:
        // psi(b_i) = c * b'_j with the p-free part of |c| equal to 1.
        VecQ img = psi * rd1.coroot(i);
        const VecQ& tgt = rd2.coroot(match);
        size_t t0 = 0;
        while (t0 < tgt.size() && tgt[t0].is_zero()) ++t0;
        if (t0 == tgt.size()) return false;
        LocalizedRational c = img[t0] / tgt[t0];
        if (c.is_zero()) return false;
        for (size_t t = 0; t < tgt.size(); ++t)
            if (img[t] != c * tgt[t]) return false;
        if (p_free_abs(c.value(), p) != 1) return false;
    }
    return true;
}

std::vector<long> witness_exponent_spreads(const RootDatum& rd1, const RootDatum& rd2,
                                           const MatQ& phi) {
    require_same_prime(rd1, rd2);
    require_phi_shape(rd1, rd2, phi);
    std::optional<RootMatch> m = match_roots(rd1, rd2, phi);
    if (!m) fail(Errc::InvalidArgument, "map does not induce a bijection of root orbits");

    int R = rd1.root_count();
    std::vector<int> comp(static_cast<size_t>(R), -1);
    std::vector<long> spreads;
    for (int i = 0; i < R; ++i) {
        if (comp[static_cast<size_t>(i)] >= 0) continue;
        int id = static_cast<int>(spreads.size());
        long lo = m->scalepow[static_cast<size_t>(i)], hi = lo;
        std::queue<int> q;
        q.push(i);
        comp[static_cast<size_t>(i)] = id;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            lo = std::min(lo, m->scalepow[static_cast<size_t>(u)]);
            hi = std::max(hi, m->scalepow[static_cast<size_t>(u)]);
            for (int v = 0; v < R; ++v) {
                if (comp[static_cast<size_t>(v)] >= 0) continue;
                if (!rd1.pair(to_rational(rd1.root(u)), rd1.coroot(v)).is_zero()) {
                    comp[static_cast<size_t>(v)] = id;
                    q.push(v);
                }
            }
        }
        spreads.push_back(hi - lo);
    }
    return spreads;
}

} // namespace perfrd
