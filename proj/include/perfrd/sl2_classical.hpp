#pragma once

// Classical (finite-scale) rational representation data of SL2 in
// characteristic p: formal characters, decomposition numbers of the induced
// modules by unitriangular character inversion, and the standard digit-based
// recursions for Ext^1 between simples and induced modules.  This module is
// the independent oracle that the perfected-SL2 formulas are tested against.

#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "perfrd/errors.hpp"

namespace perfrd {

// Sparse Laurent polynomial in one variable with integer coefficients,
// exponents kept sorted ascending.  Characters of finite-dimensional modules.
class LaurentChar {
  public:
    LaurentChar() = default;
    explicit LaurentChar(std::vector<std::pair<long, long>> terms);

    static LaurentChar monomial(long exponent, long coeff = 1);

    long coeff(long exponent) const;
    long dim() const; // sum of coefficients
    bool is_zero() const { return terms_.empty(); }
    bool symmetric() const; // invariant under x -> 1/x

    const std::vector<std::pair<long, long>>& terms() const { return terms_; }

    LaurentChar& operator+=(const LaurentChar& o);
    LaurentChar& operator-=(const LaurentChar& o);
    friend LaurentChar operator+(LaurentChar a, const LaurentChar& b) { return a += b; }
    friend LaurentChar operator-(LaurentChar a, const LaurentChar& b) { return a -= b; }
    friend LaurentChar operator*(const LaurentChar& a, const LaurentChar& b);
    friend bool operator==(const LaurentChar& a, const LaurentChar& b) { return a.terms_ == b.terms_; }

    // x -> x^s on exponents (Frobenius-twist of a character by scale s).
    LaurentChar twist(long s) const;

  private:
    void normalize();
    std::vector<std::pair<long, long>> terms_;
};

// Character of the induced module with highest weight m >= 0:
// x^m + x^{m-2} + ... + x^{-m}.  By convention the character of the zero
// module is returned for m < 0.
LaurentChar char_costandard(long m);

// Character of the simple module L(m) in characteristic p, via the tensor
// factorization along base-p digits of m.
LaurentChar char_simple(long m, long p);

// All weights of L(m) (each has multiplicity one), ascending.
std::vector<long> simple_weights(long m, long p);

// Decomposition numbers [induced(lambda) : L(mu)] for 0 <= lambda <= lambda_max.
struct DecompTable {
    long p = 0;
    long lambda_max = -1;
    std::vector<std::map<long, long>> rows; // rows[lambda][mu] = multiplicity, nonzero entries only
};

// Per-prime oracle with memoized decomposition rows and Ext tables.  Safe for
// concurrent use (internally synchronized).
class ClassicalSl2 {
  public:
    explicit ClassicalSl2(long p);

    long p() const { return p_; }

    // Row of decomposition numbers [induced(lambda) : L(mu)] by peeling
    // simple characters off char_costandard(lambda) from the top weight down.
    const std::map<long, long>& decomposition_row(long lambda);

    DecompTable decomposition_numbers(long lambda_max);

    // E^0(lambda) = { mu : [induced(lambda) : L(mu)] != 0 }, ascending.
    std::vector<long> e0(long lambda);

    // E^inf(lambda) = { nu > 0 : [induced(lambda - 1) : L(nu - 1)] != 0 },
    // ascending; empty for lambda == 0.
    std::vector<long> einf(long lambda);

    // dim Ext^1(L(lambda), induced(mu)); requires p > 2 (the recursion rules
    // below are specific to odd characteristic) and lambda, mu >= 0.
    long ext1_simple_costandard(long lambda, long mu);

    // dim Ext^1(L(lambda), L(mu)); requires p > 2.
    long ext1_simple_simple(long lambda, long mu);

    // dim Hom(L(a), L(b) (x) L(1)); the digit table used by the simple-simple
    // recursion, exposed for tests.
    long hom_simple_tensor_l1(long a, long b) const;

  private:
    void require_odd() const;

    long p_;
    std::mutex mu_;
    std::unordered_map<long, std::map<long, long>> rows_;
    std::unordered_map<unsigned long long, long> ext_ln_, ext_ll_;
};

} // namespace perfrd
