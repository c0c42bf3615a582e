#pragma once

#include <gmpxx.h>

#include <vector>

#include "rungekit/label.hpp"

namespace rungekit {

// Exact scalar types.  mpq_class is kept canonical by GMP (reduced fraction,
// positive denominator), which is exactly the Rational contract we need.
using Integer = mpz_class;
using Rational = mpq_class;

// num/den as an exact reduced fraction; den must be nonzero.
Rational make_rational(const Integer& num, const Integer& den);

// Second Bernoulli polynomial B2(T) = T^2 - T + 1/6 on the fundamental
// domain [0, 1).  Inputs outside [0, 1) are rejected rather than wrapped so
// that callers stay explicit about which lift they mean.
Rational bernoulli2(const Rational& x);

// ell_a = B2(a1)/2 with a1 the lift of the label's first coordinate to
// [0, 1).  Governs every cuspidal order in the library; |ell_a| <= 1/12.
Rational ell(const UnitLabel& a);

// Sum of B2(k/N) over the nonzero residues k = 1..N-1; equals -(N-1)/(6N)
// exactly for every N >= 1 (the k = 0 term would add the constant B2(0) = 1/6
// and break the identity, so it is excluded by construction).
Rational bernoulli2_residue_sum(long N);

// Dense integer matrix, row-major, arbitrary-precision entries.
class IntMatrix {
public:
  IntMatrix(long rows, long cols);

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  Integer& at(long i, long j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const Integer& at(long i, long j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  // Largest |entry|; 0 for an empty or zero matrix.
  Integer max_abs() const;

  IntMatrix select_rows(const std::vector<long>& idx) const;
  IntMatrix select_cols(const std::vector<long>& idx) const;

private:
  long rows_, cols_;
  std::vector<Integer> e_;
};

// Exact determinant via fraction-free Bareiss elimination (one-step division
// scheme); pivoting by first nonzero entry, sign tracked across row swaps.
Integer bareiss_det(const IntMatrix& m);

// Rank over Q, computed fraction-free with row and column pivoting.
long rank(const IntMatrix& m);

// Exponent vector b_a with its l1 budget, indexed the same way as the matrix
// columns it was solved against.
struct ExponentVector {
  std::vector<Integer> entries;

  Integer l1_norm() const;
};

// Positive-combination solver: given an s x t integer matrix of full row
// rank s, returns b with (M b)_i = |d| > 0 for every row, where d is the
// determinant of the selected nonsingular s x s submatrix.  The submatrix is
// the lexicographically first independent column set; b is the Cramer vector
// (each selected column replaced in turn by all-ones), scaled by sign(d).
// Hadamard's inequality then gives ||b||_1 <= s^(s/2+1) * A^(s-1) for any
// entry bound A.  Throws InvariantError if rank(M) < s.
ExponentVector positive_combination(const IntMatrix& m);

// Exact test of ||b||_1 <= s^(s/2+1) * A^(s-1).  The right side is irrational
// for odd s, so both sides are squared: ||b||_1^2 <= s^(s+2) * A^(2s-2).
bool l1_budget_within(const Integer& l1, long s, const Integer& A);

} // namespace rungekit
