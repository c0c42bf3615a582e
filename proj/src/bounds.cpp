#include "rungekit/bounds.hpp"

#include <stdexcept>

#include "rungekit/rounding.hpp"

namespace rungekit {

namespace {

bool is_prime(long p) {
  if (p < 2)
    return false;
  if (p % 2 == 0)
    return p == 2;
  for (long f = 3; f * f <= p; f += 2)
    if (p % f == 0)
      return false;
  return true;
}

bool is_odd_prime(long p) { return p >= 3 && is_prime(p); }

void require_level(long n) {
  if (n < 2)
    throw std::invalid_argument("level must be >= 2");
}

void require_odd_prime(long p, const char* who) {
  if (!is_odd_prime(p))
    throw std::invalid_argument(std::string(who) + ": p must be an odd prime");
}

// up(scale * log(arg)) with everything nonnegative.
double scaled_log_up(const Integer& scale, long log_arg) {
  return mul_up(to_double_up(scale), log_up(static_cast<double>(log_arg)));
}

// Upper bound of s^(s/2+1) * (num/den)^(s-1) * extra, all factors >= 0;
// powers are taken exactly, only the final conversions round.
double budget_shape_up(long s, const Integer& num, const Integer& den,
                       const Integer& extra) {
  Integer s_pow, n_pow, d_pow;
  mpz_pow_ui(s_pow.get_mpz_t(), Integer(s).get_mpz_t(),
             static_cast<unsigned long>(s + 2));
  mpz_pow_ui(n_pow.get_mpz_t(), num.get_mpz_t(),
             static_cast<unsigned long>(s - 1));
  mpz_pow_ui(d_pow.get_mpz_t(), den.get_mpz_t(),
             static_cast<unsigned long>(s - 1));
  Rational r(n_pow * extra, d_pow);
  r.canonicalize();
  // mpq_get_d truncates toward zero, so one step up dominates.
  return mul_up(sqrt_up(to_double_up(s_pow)), step_up(r.get_d()));
}

// The P-independent Xi-coefficients of the section-5 chain, with
// b_gprime an upper bound of B * |G'|.
void attach_xi_breakdown(BoundReport& r, double b_gprime, long n,
                         bool infinite_only) {
  const double bn = mul_up(b_gprime, static_cast<double>(n));
  const double logn = log_up(static_cast<double>(n));
  r.breakdown.emplace_back(
      "Xi1_coeff",
      add_up(div_up(log_up(7000.0), static_cast<double>(n)),
             mul_up(mul_up(infinite_only ? 12.0 : 24.0, bn), logn)));
  r.breakdown.emplace_back(
      "Xi2_coeff",
      add_up(mul_up(bn, log_up(5900.0)), mul_up(mul_up(12.0, bn), logn)));
  r.breakdown.emplace_back("Xi3_coeff", mul_up(mul_up(12.0, bn), log_up(2.0)));
}

} // namespace

double rho(long n, PlaceKind kind, long p) {
  require_level(n);
  switch (kind) {
    case PlaceKind::kInfinite:
      return scaled_log_up(Integer(12) * n, n);
    case PlaceKind::kFiniteCoprime:
      return 0.0;
    case PlaceKind::kFiniteDividing:
      if (!is_prime(p) || n % p != 0)
        throw std::invalid_argument("rho: p must be a prime divisor of N");
      return div_up(scaled_log_up(Integer(12) * n, p),
                    static_cast<double>(p - 1));
  }
  throw std::invalid_argument("rho: invalid place kind");
}

double rho_aggregate_infinite(long n, long d) {
  require_level(n);
  if (d < 1)
    throw std::invalid_argument("rho_aggregate: degree must be >= 1");
  return scaled_log_up(Integer(12) * d * n, n);
}

double rho_aggregate_finite(long n, long d) {
  require_level(n);
  if (d < 1)
    throw std::invalid_argument("rho_aggregate: degree must be >= 1");
  double sum = 0.0;
  long m = n;
  for (long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      sum = add_up(sum, div_up(log_up(static_cast<double>(p)),
                               static_cast<double>(p - 1)));
      while (m % p == 0)
        m /= p;
    }
  if (m > 1)
    sum = add_up(sum, div_up(log_up(static_cast<double>(m)),
                             static_cast<double>(m - 1)));
  return mul_up(to_double_up(Integer(12) * d * n), sum);
}

double bound_theorem_1_1(long n, long g_order) {
  require_level(n);
  if (g_order < 2)
    throw std::invalid_argument("bound_theorem_1_1: |G| must be >= 2");
  return scaled_log_up(Integer(12) * g_order * n * n, 3 * n);
}

double bound_theorem_1_2(long n, long g_order, long s, bool infinite_only) {
  require_level(n);
  if (g_order < 1)
    throw std::invalid_argument("bound_theorem_1_2: |G| must be >= 1");
  if (s < 1)
    throw std::invalid_argument("bound_theorem_1_2: s must be >= 1");
  // 36 s^(s/2+1) (N^2 G / 2)^s log 2N  |  24 ... log 3N.
  const Integer base = Integer(n) * n * g_order;
  Integer base_pow, den_pow, s_pow;
  mpz_pow_ui(base_pow.get_mpz_t(), base.get_mpz_t(),
             static_cast<unsigned long>(s));
  mpz_pow_ui(den_pow.get_mpz_t(), Integer(2).get_mpz_t(),
             static_cast<unsigned long>(s));
  mpz_pow_ui(s_pow.get_mpz_t(), Integer(s).get_mpz_t(),
             static_cast<unsigned long>(s + 2));
  Rational core((infinite_only ? 24 : 36) * base_pow, den_pow);
  core.canonicalize();
  return mul_up(mul_up(sqrt_up(to_double_up(s_pow)), step_up(core.get_d())),
                log_up(static_cast<double>((infinite_only ? 3 : 2) * n)));
}

double bound_refined(long n, long gprime_order, const Integer& budget_b,
                     bool infinite_only) {
  require_level(n);
  if (gprime_order < 1 || budget_b < 1)
    throw std::invalid_argument("bound_refined: need |G'| >= 1 and B >= 1");
  const Integer scale =
      (infinite_only ? 24 : 36) * budget_b * gprime_order * n * n;
  return mul_up(to_double_up(scale),
                log_up(static_cast<double>((infinite_only ? 3 : 2) * n)));
}

bool refined_matches_theorem_1_2(long n, long g_order, long s) {
  require_level(n);
  if (g_order < 2 || g_order % 2 != 0)
    throw std::invalid_argument("refined_matches_theorem_1_2: |G| must be even");
  if (s < 1)
    throw std::invalid_argument("refined_matches_theorem_1_2: s must be >= 1");
  const Integer gpn2 = Integer(g_order / 2) * n * n; // |G'| N^2
  Integer lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), gpn2.get_mpz_t(),
             static_cast<unsigned long>(s - 1));
  lhs *= gpn2; // budget shape (G'N^2)^(s-1), times refined's G'N^2
  const Integer tbase = Integer(n) * n * g_order / 2; // N^2 G / 2
  mpz_pow_ui(rhs.get_mpz_t(), tbase.get_mpz_t(), static_cast<unsigned long>(s));
  return lhs == rhs;
}

SplitCartanClassification split_cartan_case(const std::vector<long>& sigma) {
  if (sigma.empty() || sigma.size() > 2)
    throw std::invalid_argument("split_cartan_case: need 1 <= |sigma| <= 2");
  bool has_inf = false, has_zero = false, has_mixed = false;
  for (long oi : sigma) {
    if (oi == 0)
      has_inf = true;
    else if (oi == 1)
      has_zero = true;
    else if (oi == 2)
      has_mixed = true;
    else
      throw std::invalid_argument("split_cartan_case: orbit index must be 0, 1 or 2");
  }
  (void)has_mixed;
  if (!has_zero)
    return {SplitCartanCase::k64, "w_(1/p,0)^-1", 1};
  if (!has_inf)
    return {SplitCartanCase::k65, "w_(0,1/p)^-1", 1};
  return {SplitCartanCase::k66, "w_(1/p,0)*w_(0,1/p)", 2};
}

double bound_split_cartan(long p, SplitCartanCase c) {
  require_odd_prime(p, "bound_split_cartan");
  if (c == SplitCartanCase::k66)
    return scaled_log_up(Integer(72), 3 * p);
  return scaled_log_up(Integer(24) * p, 3 * p);
}

double bound_x0_plus(long p) {
  if (p < 3)
    throw std::invalid_argument("bound_x0_plus: p must be >= 3");
  return scaled_log_up(Integer(110) * p, p);
}

double isogeny_height_gap(double h_prime, const Integer& delta) {
  if (!(h_prime >= 0.0))
    throw std::invalid_argument("isogeny_height_gap: h' must be >= 0");
  if (delta < 1)
    throw std::invalid_argument("isogeny_height_gap: delta must be >= 1");
  const double t1 = mul_up(13.0, log_up(add_up(1.0, h_prime)));
  const double t2 = mul_up(7.0, log_up(to_double_up(delta)));
  return add_up(add_up(t1, t2), 100.0);
}

bool x0_plus_chain_holds(long p) {
  require_odd_prime(p, "x0_plus_chain_holds");
  const double split = bound_split_cartan(p, SplitCartanCase::k64);
  const double left = add_up(split, isogeny_height_gap(split, Integer(p)));
  const double right = mul_down(to_double_down(Integer(110) * p),
                                log_down(static_cast<double>(p)));
  return left <= right;
}

BoundReport report_rho(long n, PlaceKind kind, long p) {
  BoundReport r;
  r.theorem_tag = "rho";
  r.inputs.emplace_back("N", static_cast<double>(n));
  double kind_code = 0.0;
  if (kind == PlaceKind::kFiniteCoprime)
    kind_code = 1.0;
  else if (kind == PlaceKind::kFiniteDividing)
    kind_code = 2.0;
  r.inputs.emplace_back("place_kind", kind_code);
  if (kind == PlaceKind::kFiniteDividing)
    r.inputs.emplace_back("p", static_cast<double>(p));
  r.value = rho(n, kind, p);
  r.breakdown.emplace_back("aggregate_infinite_d1", rho_aggregate_infinite(n, 1));
  r.breakdown.emplace_back("aggregate_finite_d1", rho_aggregate_finite(n, 1));
  return r;
}

BoundReport report_theorem_1_1(long n, long g_order) {
  BoundReport r;
  r.theorem_tag = "thm-1.1";
  r.inputs.emplace_back("N", static_cast<double>(n));
  r.inputs.emplace_back("G_order", static_cast<double>(g_order));
  r.value = bound_theorem_1_1(n, g_order);
  // Theorem 1.1 is the infinite-only chain at B = 1, |G'| = |G|/2.
  attach_xi_breakdown(r, step_up(static_cast<double>(g_order) / 2.0), n, true);
  return r;
}

BoundReport report_theorem_1_2(long n, long g_order, long s, bool infinite_only) {
  BoundReport r;
  r.theorem_tag = "thm-1.2";
  r.inputs.emplace_back("N", static_cast<double>(n));
  r.inputs.emplace_back("G_order", static_cast<double>(g_order));
  r.inputs.emplace_back("s", static_cast<double>(s));
  r.inputs.emplace_back("infinite_only", infinite_only ? 1.0 : 0.0);
  r.value = bound_theorem_1_2(n, g_order, s, infinite_only);
  // B|G'| at the Hadamard budget: s^(s/2+1) (N^2 G/2)^(s-1) * (G/2).
  const double b_gprime = budget_shape_up(s, Integer(n) * n * g_order,
                                          Integer(2), Integer(g_order));
  attach_xi_breakdown(r, div_up(b_gprime, 2.0), n, infinite_only);
  return r;
}

BoundReport report_refined(long n, long gprime_order, const Integer& budget_b,
                           bool infinite_only) {
  BoundReport r;
  r.theorem_tag = "refined";
  r.inputs.emplace_back("N", static_cast<double>(n));
  r.inputs.emplace_back("Gprime_order", static_cast<double>(gprime_order));
  r.inputs.emplace_back("B", to_double_up(budget_b));
  r.inputs.emplace_back("infinite_only", infinite_only ? 1.0 : 0.0);
  r.value = bound_refined(n, gprime_order, budget_b, infinite_only);
  attach_xi_breakdown(r, to_double_up(budget_b * gprime_order), n, infinite_only);
  return r;
}

BoundReport report_split_cartan(long p, SplitCartanCase c) {
  BoundReport r;
  r.theorem_tag = "thm-6.1";
  r.inputs.emplace_back("p", static_cast<double>(p));
  r.inputs.emplace_back("case",
                        c == SplitCartanCase::k64   ? 6.4
                        : c == SplitCartanCase::k65 ? 6.5
                                                    : 6.6);
  r.value = bound_split_cartan(p, c);
  return r;
}

BoundReport report_x0_plus(long p) {
  BoundReport r;
  r.theorem_tag = "thm-7.3";
  r.inputs.emplace_back("p", static_cast<double>(p));
  r.value = bound_x0_plus(p);
  return r;
}

BoundReport report_isogeny_gap(double h_prime, const Integer& delta) {
  BoundReport r;
  r.theorem_tag = "lemma-7.4";
  r.inputs.emplace_back("h_prime", h_prime);
  r.inputs.emplace_back("delta", to_double_up(delta));
  r.value = isogeny_height_gap(h_prime, delta);
  return r;
}

} // namespace rungekit
