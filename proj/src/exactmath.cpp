#include "rungekit/exactmath.hpp"

#include <stdexcept>
#include <string>

#include "rungekit/errors.hpp"

namespace rungekit {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0)
    throw std::invalid_argument("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational bernoulli2(const Rational& x) {
  if (x < 0 || x >= 1)
    throw std::invalid_argument("bernoulli2: argument must lie in [0,1)");
  static const Rational sixth(1, 6);
  return x * x - x + sixth;
}

Rational ell(const UnitLabel& a) {
  Rational a1 = make_rational(a.k1, a.level); // already in [0,1)
  return bernoulli2(a1) / 2;
}

Rational bernoulli2_residue_sum(long N) {
  if (N < 1)
    throw std::invalid_argument("bernoulli2_residue_sum: N must be >= 1");
  Rational sum(0);
  for (long k = 1; k < N; ++k)
    sum += bernoulli2(make_rational(k, N));
  return sum;
}

IntMatrix::IntMatrix(long rows, long cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("IntMatrix: negative dimension");
  e_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), Integer(0));
}

Integer IntMatrix::max_abs() const {
  Integer m(0);
  for (const Integer& v : e_) {
    Integer a = abs(v);
    if (a > m)
      m = a;
  }
  return m;
}

IntMatrix IntMatrix::select_rows(const std::vector<long>& idx) const {
  IntMatrix out(static_cast<long>(idx.size()), cols_);
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= rows_)
      throw std::invalid_argument("select_rows: index out of range");
    for (long j = 0; j < cols_; ++j)
      out.at(static_cast<long>(i), j) = at(idx[i], j);
  }
  return out;
}

IntMatrix IntMatrix::select_cols(const std::vector<long>& idx) const {
  IntMatrix out(rows_, static_cast<long>(idx.size()));
  for (long i = 0; i < rows_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) {
      if (idx[j] < 0 || idx[j] >= cols_)
        throw std::invalid_argument("select_cols: index out of range");
      out.at(i, static_cast<long>(j)) = at(i, idx[j]);
    }
  return out;
}

Integer bareiss_det(const IntMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("bareiss_det: matrix must be square");
  const long n = m.rows();
  if (n == 0)
    return Integer(1);

  IntMatrix a = m; // working copy
  int sign = 1;
  Integer prev(1); // pivot of the previous step; divides exactly (Sylvester)

  for (long k = 0; k + 1 < n; ++k) {
    // First nonzero pivot at or below the diagonal keeps the choice
    // deterministic; exactness does not depend on pivot magnitude.
    long piv = -1;
    for (long i = k; i < n; ++i)
      if (a.at(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0)
      return Integer(0);
    if (piv != k) {
      for (long j = 0; j < n; ++j)
        swap(a.at(k, j), a.at(piv, j));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i) {
      for (long j = k + 1; j < n; ++j) {
        Integer t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  Integer d = a.at(n - 1, n - 1);
  return sign < 0 ? Integer(-d) : d;
}

namespace {

// Fraction-free elimination with column skipping.  Returns the pivot column
// indices (in increasing order); their count is the rank.  Skipped columns
// leave the Bareiss exactness intact: the computation coincides with Bareiss
// on the matrix with the pivot columns permuted to the front.
std::vector<long> pivot_columns(IntMatrix a) {
  const long rows = a.rows(), cols = a.cols();
  std::vector<long> pivots;
  Integer prev(1);
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (a.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0)
      continue;
    if (piv != r)
      for (long j = 0; j < cols; ++j)
        swap(a.at(r, j), a.at(piv, j));
    for (long i = r + 1; i < rows; ++i) {
      for (long j = c + 1; j < cols; ++j) {
        Integer t = a.at(i, j) * a.at(r, c) - a.at(i, c) * a.at(r, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a.at(i, c) = 0;
    }
    prev = a.at(r, c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

} // namespace

long rank(const IntMatrix& m) { return static_cast<long>(pivot_columns(m).size()); }

Integer ExponentVector::l1_norm() const {
  Integer s(0);
  for (const Integer& v : entries)
    s += abs(v);
  return s;
}

ExponentVector positive_combination(const IntMatrix& m) {
  const long s = m.rows(), t = m.cols();
  if (s == 0)
    throw std::invalid_argument("positive_combination: empty matrix");

  // Lexicographically first independent column set (greedy = lex-minimal
  // basis by the matroid exchange property).
  std::vector<long> cols = pivot_columns(m);
  if (static_cast<long>(cols.size()) < s)
    throw InvariantError(
        "positive_combination: rank deficiency (rank " +
            std::to_string(cols.size()) + " < rows " + std::to_string(s) + ")",
        "{\"rank\":" + std::to_string(cols.size()) + ",\"rows\":" + std::to_string(s) + "}");

  IntMatrix sq = m.select_cols(cols);
  Integer d = bareiss_det(sq);
  int dsign = sgn(d);

  // Cramer: b_k = sign(d) * det(sq with column k replaced by all-ones), so
  // that M b = (|d|, ..., |d|) entrywise.
  ExponentVector b;
  b.entries.assign(static_cast<size_t>(t), Integer(0));
  for (long k = 0; k < s; ++k) {
    IntMatrix rep = sq;
    for (long i = 0; i < s; ++i)
      rep.at(i, k) = 1;
    Integer bk = bareiss_det(rep);
    b.entries[static_cast<size_t>(cols[k])] = dsign < 0 ? Integer(-bk) : bk;
  }

  // Paranoia: replay the defining property before handing the vector out.
  for (long i = 0; i < s; ++i) {
    Integer acc(0);
    for (long j = 0; j < t; ++j)
      acc += m.at(i, j) * b.entries[static_cast<size_t>(j)];
    if (acc != abs(d))
      throw InvariantError("positive_combination: Cramer replay failed at row " +
                           std::to_string(i));
  }
  return b;
}

bool l1_budget_within(const Integer& l1, long s, const Integer& A) {
  if (s < 1 || A < 0)
    throw std::invalid_argument("l1_budget_within: need s >= 1, A >= 0");
  Integer lhs = l1 * l1;
  Integer rhs;
  mpz_pow_ui(rhs.get_mpz_t(), Integer(s).get_mpz_t(), static_cast<unsigned long>(s + 2));
  Integer apow;
  mpz_pow_ui(apow.get_mpz_t(), A.get_mpz_t(), static_cast<unsigned long>(2 * s - 2));
  rhs *= apow;
  return lhs <= rhs;
}

} // namespace rungekit
