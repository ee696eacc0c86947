#include "perfrd/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <utility>

namespace perfrd {

namespace {

VecQ to_vecq(const VecZ& v) { return to_rational(v); }

std::vector<VecQ> to_vecq_list(const std::vector<VecZ>& vs) {
    std::vector<VecQ> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(to_vecq(v));
    return out;
}

bool is_zero(const VecQ& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace

VecZ p_primitive(const VecQ& v, long p, long* applied_exponent) {
    require_prime(p);
    bool all_zero = true;
    long minval = 0;
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        long val = p_valuation(x, p); // throws NotPLocal on foreign denominators
        if (all_zero || val < minval) minval = val;
        all_zero = false;
    }
    if (applied_exponent) *applied_exponent = all_zero ? 0 : -minval;
    VecZ out(v.size(), 0);
    if (all_zero) return out;
    LocalizedRational s = pow_p(p, -minval);
    for (size_t i = 0; i < v.size(); ++i) out[i] = (v[i] * s).to_integer();
    return out;
}

int find_orbit(const std::vector<VecZ>& reps, const VecQ& v, long p, long* scale) {
    if (is_zero(v)) return -1;
    long e = 0;
    VecZ v0 = p_primitive(v, p, &e); // v = p^{-e} * v0
    for (size_t j = 0; j < reps.size(); ++j) {
        if (reps[j].size() == v0.size() && reps[j] == v0) {
            if (scale) *scale = -e;
            return static_cast<int>(j);
        }
    }
    return -1;
}

// --- RootDatum -----------------------------------------------------------------

RootDatum::RootDatum(long p, MatZ pairing, std::vector<VecQ> roots, std::vector<VecQ> coroots,
                     int positive_count, std::string name)
    : p_(p), pairing_(std::move(pairing)), positive_count_(positive_count), name_(std::move(name)) {
    require_prime(p_);
    if (roots.size() != coroots.size())
        fail(Errc::DimensionMismatch, "root and coroot lists must be aligned");
    if (positive_count_ < 0 || positive_count_ > static_cast<int>(roots.size()))
        fail(Errc::InvalidArgument, "positive_count out of range");
    roots_.reserve(roots.size());
    coroots_.reserve(coroots.size());
    for (size_t i = 0; i < roots.size(); ++i) {
        if (static_cast<int>(roots[i].size()) != rank_x() ||
            static_cast<int>(coroots[i].size()) != rank_y())
            fail(Errc::DimensionMismatch, "root/coroot vector length does not match the lattices");
        for (const auto& x : coroots[i])
            if (!is_p_local(x, p_)) fail(Errc::NotPLocal, "coroot entry outside Z[1/p]");
        long e = 0;
        roots_.push_back(p_primitive(roots[i], p_, &e)); // checks p-locality of the root
        coroots_.push_back(scale(coroots[i], pow_p(p_, -e)));
    }
}

const VecZ& RootDatum::root(int i) const {
    if (i < 0 || i >= root_count()) fail(Errc::IndexOutOfRange, "root index out of range");
    return roots_[static_cast<size_t>(i)];
}

const VecQ& RootDatum::coroot(int i) const {
    if (i < 0 || i >= root_count()) fail(Errc::IndexOutOfRange, "coroot index out of range");
    return coroots_[static_cast<size_t>(i)];
}

LocalizedRational RootDatum::pair(const VecQ& x, const VecQ& y) const {
    if (static_cast<int>(x.size()) != rank_x() || static_cast<int>(y.size()) != rank_y())
        fail(Errc::DimensionMismatch, "pairing argument length mismatch");
    LocalizedRational acc(0);
    for (int i = 0; i < rank_x(); ++i) {
        if (x[static_cast<size_t>(i)].is_zero()) continue;
        LocalizedRational row(0);
        for (int j = 0; j < rank_y(); ++j)
            row += LocalizedRational(pairing_(i, j)) * y[static_cast<size_t>(j)];
        acc += x[static_cast<size_t>(i)] * row;
    }
    return acc;
}

// --- validation -----------------------------------------------------------------

ValidationReport validate(const RootDatum& rd) {
    ValidationReport report;
    auto add = [&report](ValidationItem item) {
        report.ok = report.ok && item.pass;
        report.items.push_back(std::move(item));
    };

    {
        ValidationItem item{"pairing_unimodular", true, {}, ""};
        if (rd.rank_x() != rd.rank_y()) {
            item.pass = false;
            item.detail = "pairing matrix is not square";
        } else {
            mpz_class d = det(rd.pairing());
            if (d != 1 && d != -1) {
                item.pass = false;
                item.detail = "det = " + d.get_str();
            }
        }
        add(std::move(item));
    }

    {
        ValidationItem item{"pairing_two", true, {}, ""};
        for (int i = 0; i < rd.root_count(); ++i) {
            LocalizedRational v = rd.pair(to_vecq(rd.root(i)), rd.coroot(i));
            if (v != LocalizedRational(2)) {
                item.pass = false;
                item.offenders.push_back(i);
                if (item.detail.empty())
                    item.detail = "<alpha, alpha^vee> = " + v.str() + " at index " +
                                  std::to_string(i);
            }
        }
        add(std::move(item));
    }

    {
        ValidationItem item{"negation_closed", true, {}, ""};
        for (int i = 0; i < rd.root_count(); ++i) {
            VecZ neg = negate(rd.root(i));
            bool found = false;
            for (int j = 0; j < rd.root_count(); ++j) {
                if (rd.root(j) != neg) continue;
                VecQ negc = scale(rd.coroot(i), LocalizedRational(-1));
                if (rd.coroot(j) == negc) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                item.pass = false;
                item.offenders.push_back(i);
            }
        }
        if (!item.pass) item.detail = "negative (with negated coroot) missing from the list";
        add(std::move(item));
    }

    {
        ValidationItem item{"reflection_closed", true, {}, ""};
        std::set<int> bad;
        for (int a = 0; a < rd.root_count(); ++a) {
            for (int b = 0; b < rd.root_count(); ++b) {
                LocalizedRational c = rd.pair(to_vecq(rd.root(b)), rd.coroot(a));
                VecQ image = sub(to_vecq(rd.root(b)), scale(to_vecq(rd.root(a)), c));
                if (find_orbit(rd.roots(), image, rd.p()) < 0) {
                    bad.insert(b);
                    if (item.detail.empty())
                        item.detail = "s_" + std::to_string(a) + " maps root " +
                                      std::to_string(b) + " outside the list";
                }
            }
        }
        if (!bad.empty()) {
            item.pass = false;
            item.offenders.assign(bad.begin(), bad.end());
        }
        add(std::move(item));
    }

    {
        ValidationItem item{"no_unit_multiples", true, {}, ""};
        // Roots are stored as p-primitive representatives, so a unit-multiple
        // collision (a +/- p^k rescaling of a listed root) lands exactly on a
        // listed representative: it suffices to look for literal duplicates.
        // The +/- pair itself is legitimate (negation closure demands it).
        for (int i = 0; i < rd.root_count(); ++i) {
            for (int j = i + 1; j < rd.root_count(); ++j) {
                if (rd.root(i) == rd.root(j)) {
                    item.pass = false;
                    item.offenders.push_back(i);
                    item.offenders.push_back(j);
                }
            }
        }
        if (!item.pass) item.detail = "duplicate unit orbit among listed roots";
        add(std::move(item));
    }

    return report;
}

// --- builtins --------------------------------------------------------------------

namespace {

// Cartan matrix convention: entry (i, j) holds <alpha_j, alpha_i^vee>.
MatZ cartan_matrix(char type, int rank) {
    MatZ a(rank, rank);
    for (int i = 0; i < rank; ++i) a(i, i) = 2;
    auto bond = [&a](int i, int j) { a(i, j) = -1; a(j, i) = -1; };
    switch (type) {
        case 'A':
            for (int i = 0; i + 1 < rank; ++i) bond(i, i + 1);
            break;
        case 'B': // short simple root at the end of the chain
            for (int i = 0; i + 1 < rank; ++i) bond(i, i + 1);
            a(rank - 1, rank - 2) = -2;
            break;
        case 'C': // long simple root at the end of the chain
            for (int i = 0; i + 1 < rank; ++i) bond(i, i + 1);
            a(rank - 2, rank - 1) = -2;
            break;
        case 'D':
            for (int i = 0; i + 1 < rank - 1; ++i) bond(i, i + 1);
            bond(rank - 3, rank - 1);
            break;
        case 'E':
            bond(0, 2);
            bond(1, 3);
            for (int i = 2; i + 1 < rank; ++i) bond(i, i + 1);
            break;
        case 'F':
            bond(0, 1);
            bond(1, 2);
            bond(2, 3);
            a(1, 2) = -2;
            break;
        case 'G':
            bond(0, 1);
            a(1, 0) = -3;
            break;
        default:
            fail(Errc::UnknownName, "unknown Cartan type");
    }
    return a;
}

struct RootInBasis {
    std::vector<long> root;   // coordinates in the simple-root basis
    std::vector<long> coroot; // coordinates in the simple-coroot basis
};

// All roots of the system by reflection closure from the simples, tracking the
// aligned coroot.  Positives (all coordinates >= 0) come first, sorted by
// height then lexicographically, then the aligned negatives.
std::vector<RootInBasis> roots_from_cartan(const MatZ& a) {
    int rank = a.rows();
    std::set<std::vector<long>> seen;
    std::map<std::vector<long>, std::vector<long>> coroot_of;
    std::queue<RootInBasis> work;
    for (int i = 0; i < rank; ++i) {
        RootInBasis r{std::vector<long>(rank, 0), std::vector<long>(rank, 0)};
        r.root[static_cast<size_t>(i)] = 1;
        r.coroot[static_cast<size_t>(i)] = 1;
        seen.insert(r.root);
        coroot_of[r.root] = r.coroot;
        work.push(std::move(r));
    }
    while (!work.empty()) {
        RootInBasis r = work.front();
        work.pop();
        for (int i = 0; i < rank; ++i) {
            RootInBasis s = r;
            long pair_root = 0, pair_coroot = 0;
            for (int j = 0; j < rank; ++j) {
                pair_root += a(i, j).get_si() * r.root[static_cast<size_t>(j)];
                pair_coroot += a(j, i).get_si() * r.coroot[static_cast<size_t>(j)];
            }
            s.root[static_cast<size_t>(i)] -= pair_root;
            s.coroot[static_cast<size_t>(i)] -= pair_coroot;
            if (seen.insert(s.root).second) {
                coroot_of[s.root] = s.coroot;
                work.push(s);
            }
        }
    }
    std::vector<RootInBasis> positives;
    for (const auto& v : seen) {
        bool nonneg = std::all_of(v.begin(), v.end(), [](long x) { return x >= 0; });
        if (nonneg) positives.push_back({v, coroot_of[v]});
    }
    std::sort(positives.begin(), positives.end(), [](const RootInBasis& x, const RootInBasis& y) {
        long hx = std::accumulate(x.root.begin(), x.root.end(), 0L);
        long hy = std::accumulate(y.root.begin(), y.root.end(), 0L);
        if (hx != hy) return hx < hy;
        return x.root < y.root;
    });
    std::vector<RootInBasis> out = positives;
    for (const auto& r : positives) {
        RootInBasis neg = r;
        for (auto& x : neg.root) x = -x;
        for (auto& x : neg.coroot) x = -x;
        out.push_back(std::move(neg));
    }
    return out;
}

// Simply connected form: X is the weight lattice in the fundamental-weight
// basis (roots are the Cartan-matrix columns), Y the coroot lattice in the
// simple-coroot basis, pairing the identity.  Adjoint form is the dual
// arrangement.
RootDatum cartan_builtin(char type, int rank, bool simply_connected, long p,
                         const std::string& name) {
    MatZ a = cartan_matrix(type, rank);
    std::vector<RootInBasis> rb = roots_from_cartan(a);
    std::vector<VecQ> roots, coroots;
    roots.reserve(rb.size());
    coroots.reserve(rb.size());
    for (const auto& r : rb) {
        VecQ root(static_cast<size_t>(rank), LocalizedRational(0));
        VecQ coroot(static_cast<size_t>(rank), LocalizedRational(0));
        for (int i = 0; i < rank; ++i) {
            LocalizedRational rx(0), cy(0);
            for (int j = 0; j < rank; ++j) {
                if (simply_connected)
                    rx += LocalizedRational(a(i, j)) * LocalizedRational(r.root[static_cast<size_t>(j)]);
                else
                    cy += LocalizedRational(a(j, i)) * LocalizedRational(r.coroot[static_cast<size_t>(j)]);
            }
            if (simply_connected) {
                root[static_cast<size_t>(i)] = rx;
                coroot[static_cast<size_t>(i)] = LocalizedRational(r.coroot[static_cast<size_t>(i)]);
            } else {
                root[static_cast<size_t>(i)] = LocalizedRational(r.root[static_cast<size_t>(i)]);
                coroot[static_cast<size_t>(i)] = cy;
            }
        }
        roots.push_back(std::move(root));
        coroots.push_back(std::move(coroot));
    }
    return RootDatum(p, MatZ::identity(rank), roots, coroots,
                     static_cast<int>(rb.size() / 2), name);
}

VecQ unit_vec(int rank, int i, long value = 1) {
    VecQ v(static_cast<size_t>(rank), LocalizedRational(0));
    v[static_cast<size_t>(i)] = LocalizedRational(value);
    return v;
}

VecQ unit_diff(int rank, int i, int j) { // e_i - e_j
    VecQ v(static_cast<size_t>(rank), LocalizedRational(0));
    v[static_cast<size_t>(i)] = LocalizedRational(1);
    v[static_cast<size_t>(j)] = LocalizedRational(-1);
    return v;
}

VecQ unit_sum(int rank, int i, int j) { // e_i + e_j
    VecQ v(static_cast<size_t>(rank), LocalizedRational(0));
    v[static_cast<size_t>(i)] = LocalizedRational(1);
    v[static_cast<size_t>(j)] = LocalizedRational(1);
    return v;
}

// Classical coordinates on X = Y = Z^n with the identity pairing.
RootDatum classical_builtin(const std::string& kind, int n, long p, const std::string& name) {
    std::vector<VecQ> roots, coroots;
    auto push = [&roots, &coroots](VecQ r, VecQ c) {
        roots.push_back(std::move(r));
        coroots.push_back(std::move(c));
    };
    if (kind == "GL") {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) push(unit_diff(n, i, j), unit_diff(n, i, j));
    } else if (kind == "Sp") { // rank n datum of Sp_{2n}
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) push(unit_diff(n, i, j), unit_diff(n, i, j));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) push(unit_sum(n, i, j), unit_sum(n, i, j));
        for (int i = 0; i < n; ++i) push(unit_vec(n, i, 2), unit_vec(n, i, 1));
    } else if (kind == "SOodd") { // rank n datum of SO_{2n+1}
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) push(unit_diff(n, i, j), unit_diff(n, i, j));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) push(unit_sum(n, i, j), unit_sum(n, i, j));
        for (int i = 0; i < n; ++i) push(unit_vec(n, i, 1), unit_vec(n, i, 2));
    } else { // "SOeven": rank n datum of SO_{2n}
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) push(unit_diff(n, i, j), unit_diff(n, i, j));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) push(unit_sum(n, i, j), unit_sum(n, i, j));
    }
    int pc = static_cast<int>(roots.size());
    std::vector<VecQ> all_roots = roots, all_coroots = coroots;
    for (int i = 0; i < pc; ++i) {
        all_roots.push_back(scale(roots[static_cast<size_t>(i)], LocalizedRational(-1)));
        all_coroots.push_back(scale(coroots[static_cast<size_t>(i)], LocalizedRational(-1)));
    }
    return RootDatum(p, MatZ::identity(n), all_roots, all_coroots, pc, name);
}

bool parse_suffixed(const std::string& name, const std::string& prefix, std::string* tail) {
    if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return false;
    *tail = name.substr(prefix.size());
    return true;
}

bool parse_int(const std::string& s, int* out) {
    if (s.empty() || s.size() > 2) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    *out = std::stoi(s);
    return true;
}

} // namespace

RootDatum builtin(const std::string& name, long p) {
    require_prime(p);
    std::string tail;
    int n = 0;
    if (parse_suffixed(name, "SL", &tail) && parse_int(tail, &n)) {
        if (n < 2 || n > 9) fail(Errc::UnknownName, "SL<n> supported for 2 <= n <= 9");
        return cartan_builtin('A', n - 1, true, p, name);
    }
    if (parse_suffixed(name, "PGL", &tail) && parse_int(tail, &n)) {
        if (n < 2 || n > 9) fail(Errc::UnknownName, "PGL<n> supported for 2 <= n <= 9");
        return cartan_builtin('A', n - 1, false, p, name);
    }
    if (parse_suffixed(name, "GL", &tail) && parse_int(tail, &n)) {
        if (n < 1 || n > 9) fail(Errc::UnknownName, "GL<n> supported for 1 <= n <= 9");
        return classical_builtin("GL", n, p, name);
    }
    if (parse_suffixed(name, "Sp", &tail) && parse_int(tail, &n)) {
        if (n < 2 || n > 16 || n % 2 != 0)
            fail(Errc::UnknownName, "Sp<2n> supported for even 2 <= 2n <= 16");
        return classical_builtin("Sp", n / 2, p, name);
    }
    if (parse_suffixed(name, "SO", &tail) && parse_int(tail, &n)) {
        if (n < 2 || n > 17) fail(Errc::UnknownName, "SO<n> supported for 2 <= n <= 17");
        if (n % 2 == 1) return classical_builtin("SOodd", (n - 1) / 2, p, name);
        return classical_builtin("SOeven", n / 2, p, name);
    }
    if (parse_suffixed(name, "T", &tail) && parse_int(tail, &n)) {
        if (n < 0 || n > 9) fail(Errc::UnknownName, "T<k> supported for 0 <= k <= 9");
        return RootDatum(p, MatZ::identity(n), {}, {}, 0, name);
    }
    if (name.size() >= 2 && name[0] >= 'A' && name[0] <= 'G') {
        char type = name[0];
        std::string rest = name.substr(1);
        bool simply_connected = true;
        if (rest.size() > 2 && rest.compare(rest.size() - 2, 2, "sc") == 0) {
            rest = rest.substr(0, rest.size() - 2);
        } else if (rest.size() > 2 && rest.compare(rest.size() - 2, 2, "ad") == 0) {
            simply_connected = false;
            rest = rest.substr(0, rest.size() - 2);
        }
        int rank = 0;
        if (parse_int(rest, &rank)) {
            bool ok = (type == 'A' && rank >= 1 && rank <= 8) ||
                      (type == 'B' && rank >= 2 && rank <= 8) ||
                      (type == 'C' && rank >= 2 && rank <= 8) ||
                      (type == 'D' && rank >= 3 && rank <= 8) ||
                      (type == 'E' && rank >= 6 && rank <= 8) ||
                      (type == 'F' && rank == 4) || (type == 'G' && rank == 2);
            if (!ok) fail(Errc::UnknownName, "unsupported Cartan type/rank: " + name);
            return cartan_builtin(type, rank, simply_connected, p, name);
        }
    }
    fail(Errc::UnknownName, "unknown builtin root datum: " + name);
}

std::vector<std::string> builtin_names() {
    std::vector<std::string> names;
    for (int n = 2; n <= 8; ++n) names.push_back("SL" + std::to_string(n));
    for (int n = 2; n <= 8; ++n) names.push_back("PGL" + std::to_string(n));
    for (int n = 2; n <= 4; ++n) names.push_back("GL" + std::to_string(n));
    for (int n = 4; n <= 8; n += 2) names.push_back("Sp" + std::to_string(n));
    for (int n = 3; n <= 9; n += 2) names.push_back("SO" + std::to_string(n));
    for (int n = 4; n <= 8; n += 2) names.push_back("SO" + std::to_string(n));
    for (const char* s : {"A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "F4", "G2",
                          "A2ad", "B2ad", "B3ad", "C3ad", "G2ad", "T1", "T2"})
        names.push_back(s);
    return names;
}

// --- reflections ------------------------------------------------------------------

MatQ reflection(const RootDatum& rd, int root_index, Side side) {
    if (root_index < 0 || root_index >= rd.root_count())
        fail(Errc::IndexOutOfRange, "reflection index out of range");
    const VecQ alpha = to_vecq(rd.root(root_index));
    const VecQ& covec = rd.coroot(root_index);
    if (side == Side::OnX) {
        // lambda -> lambda - <lambda, alpha^vee> alpha = (I - alpha (P c)^T) lambda
        int n = rd.rank_x();
        MatQ s = MatQ::identity(n);
        VecQ pc(static_cast<size_t>(n), LocalizedRational(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < rd.rank_y(); ++j)
                pc[static_cast<size_t>(i)] +=
                    LocalizedRational(rd.pairing()(i, j)) * covec[static_cast<size_t>(j)];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                s(i, j) -= alpha[static_cast<size_t>(i)] * pc[static_cast<size_t>(j)];
        return s;
    }
    // y -> y - <alpha, y> alpha^vee = (I - c (P^T alpha)^T) y
    int n = rd.rank_y();
    MatQ s = MatQ::identity(n);
    VecQ pa(static_cast<size_t>(n), LocalizedRational(0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < rd.rank_x(); ++i)
            pa[static_cast<size_t>(j)] +=
                LocalizedRational(rd.pairing()(i, j)) * alpha[static_cast<size_t>(i)];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s(i, j) -= covec[static_cast<size_t>(i)] * pa[static_cast<size_t>(j)];
    return s;
}

// --- Dynkin classification ---------------------------------------------------------

namespace {

struct Component {
    char type = 'A';
    int rank = 0;
};

struct Classification {
    std::vector<Component> components;
    int torus_rank = 0;
};

long component_weyl_order(const Component& c) {
    auto factorial = [](int n) {
        long f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    switch (c.type) {
        case 'A': return factorial(c.rank + 1);
        case 'B':
        case 'C': return (1L << c.rank) * factorial(c.rank);
        case 'D': return (1L << (c.rank - 1)) * factorial(c.rank);
        case 'E': return c.rank == 6 ? 51840L : (c.rank == 7 ? 2903040L : 696729600L);
        case 'F': return 1152L;
        case 'G': return 12L;
        default: fail(Errc::NotCrystallographic, "unclassified component");
    }
}

// Positive roots that are not the sum of two positive roots.
std::vector<int> simple_indices(const RootDatum& rd) {
    std::set<VecZ> positives;
    for (int i = 0; i < rd.positive_count(); ++i) positives.insert(rd.root(i));
    std::vector<int> simples;
    for (int i = 0; i < rd.positive_count(); ++i) {
        bool decomposable = false;
        for (int j = 0; j < rd.positive_count() && !decomposable; ++j) {
            if (j == i) continue;
            VecZ rest = sub(rd.root(i), rd.root(j));
            if (positives.count(rest)) decomposable = true;
        }
        if (!decomposable) simples.push_back(i);
    }
    return simples;
}

} // namespace

SimpleSystem simple_system(const RootDatum& rd) {
    SimpleSystem ss;
    ss.simples = simple_indices(rd);
    int m = static_cast<int>(ss.simples.size());

    // The simple roots must span the same space as all roots.
    {
        MatQ all(rd.rank_x(), rd.root_count());
        for (int j = 0; j < rd.root_count(); ++j)
            for (int i = 0; i < rd.rank_x(); ++i)
                all(i, j) = LocalizedRational(rd.root(j)[static_cast<size_t>(i)]);
        int span = rank(all);
        if (span != m)
            fail(Errc::NotCrystallographic, "simple roots do not span the root space");
    }

    // Cartan integers c[i][j] = <alpha_j, alpha_i^vee> over the simples.
    std::vector<std::vector<long>>& c = ss.cartan;
    c.assign(static_cast<size_t>(m), std::vector<long>(static_cast<size_t>(m), 0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            LocalizedRational v = rd.pair(to_vecq(rd.root(ss.simples[static_cast<size_t>(j)])),
                                          rd.coroot(ss.simples[static_cast<size_t>(i)]));
            if (!v.is_integer()) fail(Errc::NotCrystallographic, "non-integral Cartan pairing");
            mpz_class z = v.to_integer();
            if (!z.fits_slong_p()) fail(Errc::NotCrystallographic, "Cartan pairing overflow");
            long val = z.get_si();
            if (i == j) {
                if (val != 2) fail(Errc::NotCrystallographic, "diagonal Cartan entry != 2");
            } else if (val > 0 || val < -3) {
                fail(Errc::NotCrystallographic, "off-diagonal Cartan entry outside {0,-1,-2,-3}");
            }
            c[static_cast<size_t>(i)][static_cast<size_t>(j)] = val;
        }
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            long prod = c[static_cast<size_t>(i)][static_cast<size_t>(j)] * c[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if ((c[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0) != (c[static_cast<size_t>(j)][static_cast<size_t>(i)] == 0) ||
                prod > 3)
                fail(Errc::NotCrystallographic, "invalid Cartan bond");
        }

    // Connected components of the bond graph.
    ss.component.assign(static_cast<size_t>(m), -1);
    ss.component_count = 0;
    for (int i = 0; i < m; ++i) {
        if (ss.component[static_cast<size_t>(i)] >= 0) continue;
        std::queue<int> q;
        q.push(i);
        ss.component[static_cast<size_t>(i)] = ss.component_count;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < m; ++v)
                if (ss.component[static_cast<size_t>(v)] < 0 && c[static_cast<size_t>(u)][static_cast<size_t>(v)] != 0) {
                    ss.component[static_cast<size_t>(v)] = ss.component_count;
                    q.push(v);
                }
        }
        ++ss.component_count;
    }
    return ss;
}

namespace {

Classification classify_components(const RootDatum& rd) {
    SimpleSystem ss = simple_system(rd);
    int m = static_cast<int>(ss.simples.size());
    const std::vector<std::vector<long>>& c = ss.cartan;

    Classification out;
    for (int k = 0; k < ss.component_count; ++k) {
        std::vector<int> nodes;
        for (int i = 0; i < m; ++i)
            if (ss.component[static_cast<size_t>(i)] == k) nodes.push_back(i);
        int sz = static_cast<int>(nodes.size());
        auto centry = [&](int x, int y) {
            return c[static_cast<size_t>(nodes[static_cast<size_t>(x)])][static_cast<size_t>(nodes[static_cast<size_t>(y)])];
        };
        auto bond = [&](int x, int y) { return centry(x, y) * centry(y, x); };

        std::vector<int> degree(static_cast<size_t>(sz), 0);
        int triple = 0, doubles = 0;
        std::pair<int, int> double_edge{-1, -1};
        for (int x = 0; x < sz; ++x)
            for (int y = x + 1; y < sz; ++y) {
                long b = bond(x, y);
                if (b == 0) continue;
                ++degree[static_cast<size_t>(x)];
                ++degree[static_cast<size_t>(y)];
                if (b == 2) {
                    ++doubles;
                    double_edge = {x, y};
                } else if (b == 3) {
                    ++triple;
                    double_edge = {x, y};
                }
            }
        int max_degree = sz == 0 ? 0 : *std::max_element(degree.begin(), degree.end());
        int forks = static_cast<int>(std::count(degree.begin(), degree.end(), 3));

        Component component{'A', sz};
        if (triple > 0) {
            if (sz != 2 || doubles != 0) fail(Errc::NotCrystallographic, "triple bond outside G2");
            component.type = 'G';
        } else if (doubles > 1 || max_degree > 3 || forks > 1) {
            fail(Errc::NotCrystallographic, "bond graph is not a finite Dynkin diagram");
        } else if (doubles == 1) {
            if (forks > 0) fail(Errc::NotCrystallographic, "double bond on a forked diagram");
            auto [x, y] = double_edge;
            bool x_leaf = degree[static_cast<size_t>(x)] == 1;
            bool y_leaf = degree[static_cast<size_t>(y)] == 1;
            if (sz == 2) {
                component.type = 'B'; // rank-2 double bond: canonical name B2
            } else if (!x_leaf && !y_leaf) {
                if (sz != 4) fail(Errc::NotCrystallographic, "interior double bond outside F4");
                component.type = 'F';
            } else {
                // <alpha_j, alpha_i^vee> = -2 marks alpha_j as the long root of
                // the bond; B has the short simple root at the chain's end.
                int leaf = x_leaf ? x : y;
                int other = x_leaf ? y : x;
                bool leaf_long = centry(other, leaf) == -2;
                component.type = leaf_long ? 'C' : 'B';
            }
        } else if (forks == 1) {
            int hub = static_cast<int>(std::find(degree.begin(), degree.end(), 3) - degree.begin());
            std::vector<int> arms;
            for (int y = 0; y < sz; ++y) {
                if (y == hub || bond(hub, y) == 0) continue;
                int len = 1, prev = hub, cur = y;
                while (true) {
                    int next = -1;
                    for (int z = 0; z < sz; ++z)
                        if (z != prev && z != cur && bond(cur, z) != 0) next = z;
                    if (next < 0) break;
                    prev = cur;
                    cur = next;
                    ++len;
                }
                arms.push_back(len);
            }
            std::sort(arms.begin(), arms.end());
            if (arms == std::vector<int>{1, 1, sz - 3} || arms == std::vector<int>{1, 1, 1}) {
                component.type = 'D';
            } else if (arms == std::vector<int>{1, 2, 2} && sz == 6) {
                component.type = 'E';
            } else if (arms == std::vector<int>{1, 2, 3} && sz == 7) {
                component.type = 'E';
            } else if (arms == std::vector<int>{1, 2, 4} && sz == 8) {
                component.type = 'E';
            } else {
                fail(Errc::NotCrystallographic, "fork shape is not D or E");
            }
        } // else: plain chain, type A
        if (component.type == 'D' && component.rank == 3) component = {'A', 3};
        out.components.push_back(component);
    }

    out.torus_rank = rd.rank_x() - m;
    std::sort(out.components.begin(), out.components.end(), [](const Component& a, const Component& b) {
        if (a.rank != b.rank) return a.rank > b.rank;
        return a.type < b.type;
    });
    return out;
}

} // namespace

std::string dynkin_classify(const RootDatum& rd) {
    Classification cls = classify_components(rd);
    std::string out;
    for (const Component& c : cls.components) {
        if (!out.empty()) out += " + ";
        out += c.type;
        out += std::to_string(c.rank);
    }
    if (cls.torus_rank > 0 || cls.components.empty()) {
        if (!out.empty()) out += " + ";
        out += "T" + std::to_string(cls.torus_rank);
    }
    return out;
}

// --- Weyl group ---------------------------------------------------------------------

WeylGroup weyl_group(const RootDatum& rd, long enumeration_cap) {
    int m = rd.root_count();

    // Permutation induced on the stored roots by each reflection.
    std::set<RootPermutation> generators;
    int gen_count = (rd.positive_count() > 0 && 2 * rd.positive_count() == m)
                        ? rd.positive_count()
                        : m;
    for (int a = 0; a < gen_count; ++a) {
        RootPermutation perm(static_cast<size_t>(m));
        for (int b = 0; b < m; ++b) {
            LocalizedRational cval = rd.pair(to_vecq(rd.root(b)), rd.coroot(a));
            VecQ image = sub(to_vecq(rd.root(b)), scale(to_vecq(rd.root(a)), cval));
            int j = find_orbit(rd.roots(), image, rd.p());
            if (j < 0)
                fail(Errc::InvalidArgument, "reflections do not permute the roots; datum invalid");
            perm[static_cast<size_t>(b)] = j;
        }
        generators.insert(std::move(perm));
    }

    RootPermutation identity(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) identity[static_cast<size_t>(i)] = i;

    std::set<RootPermutation> seen{identity};
    std::queue<RootPermutation> work;
    work.push(identity);
    bool capped = false;
    while (!work.empty() && !capped) {
        RootPermutation w = work.front();
        work.pop();
        for (const auto& g : generators) {
            RootPermutation h(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i)
                h[static_cast<size_t>(i)] = g[static_cast<size_t>(w[static_cast<size_t>(i)])];
            if (static_cast<long>(seen.size()) >= enumeration_cap && !seen.count(h)) {
                capped = true;
                break;
            }
            if (seen.insert(h).second) work.push(h);
        }
    }

    WeylGroup out;
    if (capped) {
        try {
            Classification cls = classify_components(rd);
            out.order = 1;
            for (const Component& c : cls.components) out.order *= component_weyl_order(c);
            out.cartan_type = dynkin_classify(rd);
        } catch (const Error& e) {
            if (e.code == Errc::NotCrystallographic)
                fail(Errc::CapExceededWithoutClassification,
                     "Weyl closure exceeds the cap and the datum resists classification");
            throw;
        }
        return out;
    }

    out.order = static_cast<long>(seen.size());
    out.elements.assign(seen.begin(), seen.end());
    try {
        out.cartan_type = dynkin_classify(rd);
    } catch (const Error& e) {
        if (e.code != Errc::NotCrystallographic) throw;
        out.cartan_type.clear();
    }
    if (2 * rd.positive_count() == m) {
        for (const auto& w : out.elements) {
            bool flips_all = true;
            for (int i = 0; i < rd.positive_count() && flips_all; ++i)
                flips_all = w[static_cast<size_t>(i)] >= rd.positive_count();
            if (flips_all) {
                out.longest = w;
                break;
            }
        }
    }
    return out;
}

// --- duality -------------------------------------------------------------------------

RootDatum dual(const RootDatum& rd) {
    std::vector<VecQ> roots = rd.coroots();
    std::vector<VecQ> coroots = to_vecq_list(rd.roots());
    std::string name = rd.name().empty() ? std::string() : "dual(" + rd.name() + ")";
    return RootDatum(rd.p(), rd.pairing().transpose(), std::move(roots), std::move(coroots),
                     rd.positive_count(), std::move(name));
}

// --- reflection-group presentation ----------------------------------------------------

ReflectionDatum to_reflection_form(const RootDatum& rd) {
    ReflectionDatum rf;
    rf.rank = rd.rank_y();
    rf.p = rd.p();
    for (int i = 0; i < rd.positive_count(); ++i) {
        ReflectionEntry entry;
        entry.sigma = reflection(rd, i, Side::OnY);
        entry.line = rd.coroot(i);
        // im(1 - sigma) = {<alpha, y> : y in Y} alpha^vee; over Z the functional
        // values form content(P^T alpha) Z.
        VecQ pa(static_cast<size_t>(rd.rank_y()), LocalizedRational(0));
        for (int j = 0; j < rd.rank_y(); ++j)
            for (int k = 0; k < rd.rank_x(); ++k)
                pa[static_cast<size_t>(j)] += LocalizedRational(rd.pairing()(k, j)) *
                                              LocalizedRational(rd.root(i)[static_cast<size_t>(k)]);
        mpz_class content = 0;
        bool integral = true;
        for (const auto& x : pa) {
            if (!x.is_integer()) {
                integral = false;
                break;
            }
            content = gcd(content, x.to_integer());
        }
        entry.image_index = (integral && content.fits_slong_p()) ? content.get_si() : 0;
        rf.reflections.push_back(std::move(entry));
    }
    return rf;
}

RootDatum from_reflection_form(const ReflectionDatum& rf) {
    int n = rf.rank;
    std::vector<VecQ> roots, coroots;
    MatQ id = MatQ::identity(n);
    for (const ReflectionEntry& entry : rf.reflections) {
        if (entry.sigma.rows() != n || entry.sigma.cols() != n)
            fail(Errc::DimensionMismatch, "reflection matrix has the wrong size");
        if (entry.sigma == id) fail(Errc::OrderNotTwo, "reflection must be nontrivial");
        if (!(entry.sigma * entry.sigma == id))
            fail(Errc::OrderNotTwo, "reflection must square to the identity");
        if (static_cast<int>(entry.line.size()) != n)
            fail(Errc::DimensionMismatch, "line generator has the wrong size");

        int k = -1;
        for (int i = 0; i < n; ++i)
            if (!entry.line[static_cast<size_t>(i)].is_zero()) {
                k = i;
                break;
            }
        if (k < 0) fail(Errc::InvalidArgument, "line generator is zero");

        // (1 - sigma) = b beta^T forces beta from any row with b_k != 0.
        VecQ beta(static_cast<size_t>(n), LocalizedRational(0));
        for (int j = 0; j < n; ++j) {
            LocalizedRational m = (k == j ? LocalizedRational(1) : LocalizedRational(0)) -
                                  entry.sigma(k, j);
            beta[static_cast<size_t>(j)] = m / entry.line[static_cast<size_t>(k)];
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                LocalizedRational m = (i == j ? LocalizedRational(1) : LocalizedRational(0)) -
                                      entry.sigma(i, j);
                if (m != entry.line[static_cast<size_t>(i)] * beta[static_cast<size_t>(j)])
                    fail(Errc::InvalidArgument, "image of 1 - sigma escapes the given line");
            }
        roots.push_back(beta);
        coroots.push_back(entry.line);
    }
    int pc = static_cast<int>(roots.size());
    std::vector<VecQ> all_roots = roots, all_coroots = coroots;
    for (int i = 0; i < pc; ++i) {
        all_roots.push_back(scale(roots[static_cast<size_t>(i)], LocalizedRational(-1)));
        all_coroots.push_back(scale(coroots[static_cast<size_t>(i)], LocalizedRational(-1)));
    }
    return RootDatum(rf.p, MatZ::identity(n), all_roots, all_coroots, pc);
}

// --- dominance and blocks ---------------------------------------------------------------

bool is_dominant(const RootDatum& rd, const VecQ& lambda, bool strict) {
    if (static_cast<int>(lambda.size()) != rd.rank_x())
        fail(Errc::DimensionMismatch, "weight length does not match the character lattice");
    for (int i = 0; i < rd.positive_count(); ++i) {
        LocalizedRational v = rd.pair(lambda, rd.coroot(i));
        if (v.sign() < 0 || (strict && v.sign() == 0)) return false;
    }
    return true;
}

bool block_equivalent(const RootDatum& rd, const VecQ& lambda, const VecQ& mu) {
    if (lambda.size() != mu.size() || static_cast<int>(lambda.size()) != rd.rank_x())
        fail(Errc::DimensionMismatch, "weight length does not match the character lattice");
    VecQ diff = sub(lambda, mu);
    std::vector<VecQ> span = to_vecq_list(rd.roots());
    return in_span_over_zp(diff, span, rd.p());
}

std::vector<mpq_class> rho(const RootDatum& rd) {
    std::vector<mpq_class> half(static_cast<size_t>(rd.rank_x()), mpq_class(0));
    for (int i = 0; i < rd.positive_count(); ++i)
        for (int j = 0; j < rd.rank_x(); ++j)
            half[static_cast<size_t>(j)] += mpq_class(rd.root(i)[static_cast<size_t>(j)]) / 2;
    return half;
}

} // namespace perfrd
