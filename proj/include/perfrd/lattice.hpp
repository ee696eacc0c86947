#pragma once

// Exact linear algebra over Z and over Z[1/p]: dense matrices with
// arbitrary-precision entries, Smith normal form, span membership over the
// localization, unit-determinant tests, and dual (adjoint) maps with respect
// to perfect pairings.  Everything is exact; sizes stay small (rank <= ~10).

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "perfrd/scalars.hpp"

namespace perfrd {

// A free module of finite rank over Z[1/p]; bookkeeping only, the interesting
// data always lives in explicit coordinate vectors and matrices.
struct Lattice {
    int rank = 0;
    long p = 2;
};

template <class T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) fail(Errc::InvalidArgument, "negative matrix dimension");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const T& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) fail(Errc::DimensionMismatch, "matrix product shape mismatch");
        Matrix out(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
        if (a.cols_ != static_cast<int>(v.size()))
            fail(Errc::DimensionMismatch, "matrix-vector shape mismatch");
        std::vector<T> out(a.rows_, T(0));
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

  private:
    int rows_, cols_;
    std::vector<T> a_;
};

using MatZ = Matrix<mpz_class>;
using MatQ = Matrix<LocalizedRational>;
using VecZ = std::vector<mpz_class>;
using VecQ = std::vector<LocalizedRational>;

MatQ to_rational(const MatZ& m);
VecQ to_rational(const VecZ& v);
VecZ add(const VecZ& a, const VecZ& b);
VecZ sub(const VecZ& a, const VecZ& b);
VecZ negate(const VecZ& v);
VecQ sub(const VecQ& a, const VecQ& b);
VecQ scale(const VecQ& v, const LocalizedRational& c);

// Exact determinant (Bareiss fraction-free for Z, fraction arithmetic for Q).
mpz_class det(const MatZ& m);
LocalizedRational det(const MatQ& m);

int rank(const MatQ& m);

// Inverse of a nonsingular rational matrix; throws Errc::SingularMatrix.
MatQ inverse(const MatQ& m);

// U * A * V = diag(d1, ..., dr, 0, ...) with d1 | d2 | ... | dr, di > 0, and
// U, V unimodular over Z.
struct SmithDecomposition {
    MatZ left;                // rows x rows
    MatZ right;               // cols x cols
    std::vector<mpz_class> diag; // length min(rows, cols), divisibility chain
};

SmithDecomposition smith_normal_form(const MatZ& a);

// Does v lie in the Z[1/p]-span of the columns-of-span vectors?  All entries
// must be in Z[1/p].  Denominators of p are cleared first; the bounded
// p-power needed on the integral side is read off the invariant factors.
bool in_span_over_zp(const VecQ& v, const std::vector<VecQ>& span, long p);

// det(m) = +/- p^k for some k in Z (the units of Z[1/p]).
bool is_unit_determinant(const MatQ& m, long p);

// Adjoint of m with respect to perfect pairings <x,y> = x^T P y on domain and
// codomain: the unique n with <m x, y>_cod = <x, n y>_dom, i.e.
// n = P_dom^{-1} m^T P_cod.  Pairing matrices must be unimodular over Z.
MatQ dual_map(const MatQ& m, const MatZ& pairing_dom, const MatZ& pairing_cod);

// Solutions of the inhomogeneous system A x = b over Q: one particular
// solution plus a basis of the kernel (each basis vector scaled integral and
// content-free).  Returns nullopt when the system is inconsistent.
struct AffineSolution {
    VecQ particular;
    std::vector<VecQ> kernel_basis;
};
std::optional<AffineSolution> solve_affine(const MatQ& a, const VecQ& b);

// True iff every entry lies in Z[1/p].
bool entries_p_local(const MatQ& m, long p);

} // namespace perfrd
