#include <doctest.h>

#include <cstdint>

#include "rungekit/errors.hpp"
#include "rungekit/exactmath.hpp"

using namespace rungekit;

namespace {

// Deterministic 64-bit stream for the randomized matrix suite.
struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) { // inclusive
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

} // namespace

TEST_CASE("bernoulli2 on the fundamental domain") {
  CHECK(bernoulli2(Rational(0)) == Rational(1, 6));
  CHECK(bernoulli2(Rational(1, 2)) == Rational(-1, 12));
  // B2(1/5) = 1/25 - 1/5 + 1/6 = (6 - 30 + 25)/150 = 1/150
  CHECK(bernoulli2(Rational(1, 5)) == Rational(1, 150));
  CHECK_THROWS_AS(bernoulli2(Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(bernoulli2(Rational(-1, 2)), std::invalid_argument);
}

TEST_CASE("ell depends only on the first label coordinate") {
  UnitLabel a(5, 1, 0);
  UnitLabel b(5, 1, 3);
  CHECK(ell(a) == ell(b));
  // ell = B2(1/5)/2 = 1/300.
  CHECK(ell(a) == Rational(1, 300));
  // |ell| <= 1/12 with the maximum at a1 = 0.
  CHECK(ell(UnitLabel(5, 0, 1)) == Rational(1, 12));
}

TEST_CASE("bernoulli2 residue sum identity, spot values") {
  for (long n : {1L, 2L, 3L, 7L, 100L}) {
    CHECK(bernoulli2_residue_sum(n) == make_rational(Integer(-(n - 1)), Integer(6 * n)));
  }
}

TEST_CASE("bareiss determinant and rank") {
  IntMatrix m(3, 3);
  long vals[3][3] = {{2, 0, 1}, {1, 1, 0}, {0, 3, 4}};
  for (long i = 0; i < 3; ++i)
    for (long j = 0; j < 3; ++j) m.at(i, j) = vals[i][j];
  CHECK(bareiss_det(m) == 11); // 2(4-0) - 0 + 1(3-0)
  CHECK(rank(m) == 3);

  IntMatrix sing(2, 3);
  sing.at(0, 0) = 1; sing.at(0, 1) = 2; sing.at(0, 2) = 3;
  sing.at(1, 0) = 2; sing.at(1, 1) = 4; sing.at(1, 2) = 6;
  CHECK(rank(sing) == 1);
  CHECK(sing.max_abs() == 6);
}

TEST_CASE("positive_combination on a fixed matrix") {
  IntMatrix m(2, 2);
  m.at(0, 0) = 200; m.at(0, 1) = -40;
  m.at(1, 0) = -40; m.at(1, 1) = 200;
  ExponentVector b = positive_combination(m);
  REQUIRE(b.entries.size() == 2);
  // Cramer against the all-ones right side, scaled by sign(det).
  CHECK(b.entries[0] == 240);
  CHECK(b.entries[1] == 240);
  // (M b)_i = |det| = 38400 > 0 on both rows.
  for (long i = 0; i < 2; ++i) {
    Integer row = m.at(i, 0) * b.entries[0] + m.at(i, 1) * b.entries[1];
    CHECK(row == 38400);
  }
  CHECK(b.l1_norm() == 480);
  CHECK(l1_budget_within(b.l1_norm(), 2, m.max_abs()));
}

TEST_CASE("positive_combination rejects rank-deficient input") {
  IntMatrix m(2, 3);
  for (long j = 0; j < 3; ++j) {
    m.at(0, j) = j + 1;
    m.at(1, j) = 2 * (j + 1);
  }
  CHECK_THROWS_AS(positive_combination(m), InvariantError);
}

TEST_CASE("positive_combination randomized budget suite (fast slice)") {
  SplitMix rng{20260814ULL};
  int done = 0;
  while (done < 60) {
    long s = rng.range(1, 3);
    long t = rng.range(s, 6);
    IntMatrix m(s, t);
    for (long i = 0; i < s; ++i)
      for (long j = 0; j < t; ++j) m.at(i, j) = rng.range(-5, 5);
    if (rank(m) < s) continue;
    ExponentVector b = positive_combination(m);
    for (long i = 0; i < s; ++i) {
      Integer dot = 0;
      for (long j = 0; j < t; ++j) dot += m.at(i, j) * b.entries[j];
      CHECK(dot > 0);
    }
    CHECK(l1_budget_within(b.l1_norm(), s, m.max_abs()));
    ++done;
  }
}

TEST_CASE("l1_budget_within is exact at the boundary") {
  // s = 2, A = 3: budget is s^2 * A = 12 exactly.
  CHECK(l1_budget_within(Integer(12), 2, Integer(3)));
  CHECK_FALSE(l1_budget_within(Integer(13), 2, Integer(3)));
  // s = 1: budget is 1 (A^0 = 1, s^(3/2) squared = 1).
  CHECK(l1_budget_within(Integer(1), 1, Integer(1000)));
  CHECK_FALSE(l1_budget_within(Integer(2), 1, Integer(1000)));
}
