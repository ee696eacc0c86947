#include "perfrd/lattice.hpp"

#include <algorithm>

namespace perfrd {

MatQ to_rational(const MatZ& m) {
    MatQ out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out(r, c) = LocalizedRational(m(r, c));
    return out;
}

VecQ to_rational(const VecZ& v) {
    VecQ out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

VecZ add(const VecZ& a, const VecZ& b) {
    if (a.size() != b.size()) fail(Errc::DimensionMismatch, "vector add shape mismatch");
    VecZ out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

VecZ sub(const VecZ& a, const VecZ& b) {
    if (a.size() != b.size()) fail(Errc::DimensionMismatch, "vector sub shape mismatch");
    VecZ out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

VecZ negate(const VecZ& v) {
    VecZ out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

VecQ sub(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size()) fail(Errc::DimensionMismatch, "vector sub shape mismatch");
    VecQ out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

VecQ scale(const VecQ& v, const LocalizedRational& c) {
    VecQ out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
    return out;
}

mpz_class det(const MatZ& m) {
    if (m.rows() != m.cols()) fail(Errc::NotSquare, "determinant of non-square matrix");
    int n = m.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination; every division below is exact.
    MatZ w = m;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (w(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int c = k; c < n; ++c) std::swap(w(k, c), w(piv, c));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                w(i, j) = t;
            }
            w(i, k) = 0;
        }
        prev = w(k, k);
    }
    return sign > 0 ? w(n - 1, n - 1) : mpz_class(-w(n - 1, n - 1));
}

LocalizedRational det(const MatQ& m) {
    if (m.rows() != m.cols()) fail(Errc::NotSquare, "determinant of non-square matrix");
    int n = m.rows();
    if (n == 0) return LocalizedRational(1);
    MatQ w = m;
    LocalizedRational acc(1);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!w(i, k).is_zero()) { piv = i; break; }
        if (piv < 0) return LocalizedRational(0);
        if (piv != k) {
            for (int c = k; c < n; ++c) std::swap(w(k, c), w(piv, c));
            acc = -acc;
        }
        acc *= w(k, k);
        LocalizedRational inv = LocalizedRational(1) / w(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (w(i, k).is_zero()) continue;
            LocalizedRational f = w(i, k) * inv;
            for (int c = k; c < n; ++c) w(i, c) -= f * w(k, c);
        }
    }
    return acc;
}

namespace {

// Row-reduce [a | rhs...] in place; returns pivot columns.  Used for rank,
// inverse, and affine solving.
std::vector<int> rref(MatQ& w) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < w.cols() && r < w.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < w.rows(); ++i)
            if (!w(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < w.cols(); ++j) std::swap(w(r, j), w(piv, j));
        LocalizedRational inv = LocalizedRational(1) / w(r, c);
        for (int j = 0; j < w.cols(); ++j) w(r, j) *= inv;
        for (int i = 0; i < w.rows(); ++i) {
            if (i == r || w(i, c).is_zero()) continue;
            LocalizedRational f = w(i, c);
            for (int j = 0; j < w.cols(); ++j) w(i, j) -= f * w(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

int rank(const MatQ& m) {
    MatQ w = m;
    return static_cast<int>(rref(w).size());
}

MatQ inverse(const MatQ& m) {
    if (m.rows() != m.cols()) fail(Errc::NotSquare, "inverse of non-square matrix");
    int n = m.rows();
    MatQ w(n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) w(r, c) = m(r, c);
        w(r, n + r) = LocalizedRational(1);
    }
    auto pivots = rref(w);
    if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
        fail(Errc::SingularMatrix, "matrix is singular");
    // rref may have found pivots among the appended columns only if the left
    // block is singular; the check above rules that out.
    MatQ out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) = w(r, n + c);
    return out;
}

SmithDecomposition smith_normal_form(const MatZ& a) {
    int rows = a.rows(), cols = a.cols();
    MatZ w = a;
    MatZ u = MatZ::identity(rows);
    MatZ v = MatZ::identity(cols);
    int mn = std::min(rows, cols);

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols; ++c) std::swap(w(i, c), w(j, c));
        for (int c = 0; c < rows; ++c) std::swap(u(i, c), u(j, c));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < rows; ++r) std::swap(w(r, i), w(r, j));
        for (int r = 0; r < cols; ++r) std::swap(v(r, i), v(r, j));
    };
    auto add_row = [&](int dst, int src, const mpz_class& f) { // row dst += f * row src
        if (f == 0) return;
        for (int c = 0; c < cols; ++c) w(dst, c) += f * w(src, c);
        for (int c = 0; c < rows; ++c) u(dst, c) += f * u(src, c);
    };
    auto add_col = [&](int dst, int src, const mpz_class& f) {
        if (f == 0) return;
        for (int r = 0; r < rows; ++r) w(r, dst) += f * w(r, src);
        for (int r = 0; r < cols; ++r) v(r, dst) += f * v(r, src);
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < cols; ++c) w(i, c) = -w(i, c);
        for (int c = 0; c < rows; ++c) u(i, c) = -u(i, c);
    };

    for (int t = 0; t < mn; ++t) {
        // Pivot: the nonzero entry of least absolute value keeps coefficient
        // growth modest (entries are tiny in practice anyway).
        for (;;) {
            int pr = -1, pc = -1;
            mpz_class best;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j) {
                    if (w(i, j) == 0) continue;
                    mpz_class m = abs(w(i, j));
                    if (pr < 0 || m < best) { best = m; pr = i; pc = j; }
                }
            if (pr < 0) break; // submatrix is zero
            swap_rows(t, pr);
            swap_cols(t, pc);
            bool reduced = true;
            for (int i = t + 1; i < rows; ++i) {
                if (w(i, t) == 0) continue;
                mpz_class q = w(i, t) / w(t, t); // C++ truncating division
                add_row(i, t, -q);
                if (w(i, t) != 0) reduced = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (w(t, j) == 0) continue;
                mpz_class q = w(t, j) / w(t, t);
                add_col(j, t, -q);
                if (w(t, j) != 0) reduced = false;
            }
            if (!reduced) continue; // smaller remainders appeared; re-pivot
            // Row and column t are clear.  Enforce divisibility: the pivot
            // must divide everything below-right; if not, fold the offending
            // row in and restart this t.
            bool divides = true;
            for (int i = t + 1; i < rows && divides; ++i)
                for (int j = t + 1; j < cols && divides; ++j)
                    if (w(i, j) % w(t, t) != 0) {
                        add_row(t, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (w(t, t) < 0) negate_row(t);
    }

    SmithDecomposition out;
    out.left = std::move(u);
    out.right = std::move(v);
    out.diag.resize(mn);
    for (int t = 0; t < mn; ++t) out.diag[t] = w(t, t);
    return out;
}

bool entries_p_local(const MatQ& m, long p) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!is_p_local(m(r, c), p)) return false;
    return true;
}

bool in_span_over_zp(const VecQ& v, const std::vector<VecQ>& span, long p) {
    require_prime(p);
    size_t n = v.size();
    for (const auto& s : span)
        if (s.size() != n) fail(Errc::DimensionMismatch, "span vector dimension mismatch");
    auto clear_denominators = [&](const VecQ& x) {
        int e = 0;
        for (const auto& c : x) e = std::max(e, pexp(c, p));
        LocalizedRational f = pow_p(p, e);
        VecZ out(x.size());
        for (size_t i = 0; i < x.size(); ++i) out[i] = (x[i] * f).to_integer();
        return out;
    };
    VecZ vz = clear_denominators(v);
    if (span.empty()) {
        for (const auto& c : vz)
            if (c != 0) return false;
        return true;
    }
    // Scaling the spanning vectors by p-powers does not change their
    // Z[1/p]-span, and scaling v by a p-power does not change membership.
    MatZ m(static_cast<int>(n), static_cast<int>(span.size()));
    for (size_t j = 0; j < span.size(); ++j) {
        VecZ sz = clear_denominators(span[j]);
        for (size_t i = 0; i < n; ++i) m(static_cast<int>(i), static_cast<int>(j)) = sz[i];
    }
    // With U M V = D, solvability of M c = p^e v over Z for some e >= 0 is a
    // condition on u = U v: rows with zero invariant factor need u_i = 0, and
    // each nonzero d_i must divide u_i up to p-powers, i.e. the prime-to-p
    // part of d_i divides u_i.  The exponent e = max v_p(d_i) always works.
    SmithDecomposition snf = smith_normal_form(m);
    VecZ u = snf.left * vz;
    int mn = static_cast<int>(snf.diag.size());
    for (int i = 0; i < static_cast<int>(n); ++i) {
        mpz_class di = (i < mn) ? snf.diag[i] : mpz_class(0);
        if (di == 0) {
            if (u[i] != 0) return false;
            continue;
        }
        while (mpz_divisible_ui_p(di.get_mpz_t(), static_cast<unsigned long>(p)))
            mpz_divexact_ui(di.get_mpz_t(), di.get_mpz_t(), static_cast<unsigned long>(p));
        if (!mpz_divisible_p(u[i].get_mpz_t(), di.get_mpz_t())) return false;
    }
    return true;
}

bool is_unit_determinant(const MatQ& m, long p) {
    require_prime(p);
    LocalizedRational d = det(m);
    if (d.is_zero()) return false;
    mpz_class num = abs(d.num());
    mpz_class den = d.den();
    auto strip = [&](mpz_class& x) {
        while (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p)))
            mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
    };
    strip(num);
    strip(den);
    return num == 1 && den == 1;
}

MatQ dual_map(const MatQ& m, const MatZ& pairing_dom, const MatZ& pairing_cod) {
    if (pairing_dom.rows() != pairing_dom.cols() || pairing_cod.rows() != pairing_cod.cols())
        fail(Errc::NotSquare, "pairing matrices must be square");
    if (m.cols() != pairing_dom.rows() || m.rows() != pairing_cod.rows())
        fail(Errc::DimensionMismatch, "dual_map shape mismatch");
    mpz_class dd = det(pairing_dom), dc = det(pairing_cod);
    if (dd != 1 && dd != -1) fail(Errc::InvalidArgument, "domain pairing is not unimodular");
    if (dc != 1 && dc != -1) fail(Errc::InvalidArgument, "codomain pairing is not unimodular");
    return inverse(to_rational(pairing_dom)) * m.transpose() * to_rational(pairing_cod);
}

std::optional<AffineSolution> solve_affine(const MatQ& a, const VecQ& b) {
    if (a.rows() != static_cast<int>(b.size()))
        fail(Errc::DimensionMismatch, "solve_affine shape mismatch");
    int rows = a.rows(), cols = a.cols();
    MatQ w(rows, cols + 1);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) w(r, c) = a(r, c);
        w(r, cols) = b[static_cast<size_t>(r)];
    }
    auto pivots = rref(w);
    // Inconsistent iff some pivot landed in the rhs column.
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;

    std::vector<int> pivot_of_col(cols, -1);
    for (size_t i = 0; i < pivots.size(); ++i) pivot_of_col[pivots[i]] = static_cast<int>(i);

    AffineSolution out;
    out.particular.assign(cols, LocalizedRational(0));
    for (size_t i = 0; i < pivots.size(); ++i) out.particular[pivots[i]] = w(static_cast<int>(i), cols);

    for (int c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        VecQ k(cols, LocalizedRational(0));
        k[c] = LocalizedRational(1);
        for (size_t i = 0; i < pivots.size(); ++i) k[pivots[i]] = -w(static_cast<int>(i), c);
        // Scale to an integral, content-free vector so bounded searches over
        // coefficients behave predictably.
        mpz_class lcm_den = 1;
        for (const auto& x : k) lcm_den = lcm(lcm_den, x.den());
        mpz_class gcd_num = 0;
        for (auto& x : k) {
            x *= LocalizedRational(lcm_den);
            if (!x.is_zero()) gcd_num = gcd(gcd_num, x.num());
        }
        if (gcd_num > 1)
            for (auto& x : k) x /= LocalizedRational(gcd_num);
        out.kernel_basis.push_back(std::move(k));
    }
    return out;
}

} // namespace perfrd
