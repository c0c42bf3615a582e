#include "rungekit/runge.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rungekit/errors.hpp"
#include "rungekit/rounding.hpp"

namespace rungekit {

double budget_bound_value(long s, const Integer& a_bound) {
  Integer s_pow, a_pow;
  mpz_pow_ui(s_pow.get_mpz_t(), Integer(s).get_mpz_t(),
             static_cast<unsigned long>(s + 2));
  mpz_pow_ui(a_pow.get_mpz_t(), a_bound.get_mpz_t(),
             static_cast<unsigned long>(s - 1));
  return mul_up(sqrt_up(to_double_up(s_pow)), to_double_up(a_pow));
}

Divisor combined_divisor(const UnitGaloisGroup& gp,
                         const std::vector<GeometricCusp>& geoms,
                         const std::vector<UnitLabel>& labels,
                         const ExponentVector& exponents) {
  if (labels.size() != exponents.entries.size())
    throw std::invalid_argument("combined_divisor: labels/exponents size mismatch");
  Divisor total;
  total.curve_tag = CurveTag::kXG;
  total.coefficients.assign(geoms.size(), Integer(0));
  for (size_t i = 0; i < labels.size(); ++i) {
    const Integer& b = exponents.entries[i];
    if (b == 0)
      continue;
    Divisor part = div_w(labels[i], gp, geoms);
    for (size_t j = 0; j < geoms.size(); ++j)
      total.coefficients[j] += b * part.coefficients[j];
  }
  return total;
}

namespace {

std::string sigma_witness(size_t orbit_count, size_t sigma_size) {
  return "{\"orbits\":" + std::to_string(orbit_count) +
         ",\"sigma\":" + std::to_string(sigma_size) + "}";
}

} // namespace

RungeUnit runge_unit(const UnitGaloisGroup& gp,
                     const std::vector<GeometricCusp>& geoms,
                     const std::vector<CuspOrbit>& orbits,
                     std::vector<long> sigma, long s) {
  const long n = gp.parent.level;
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
  if (sigma.empty())
    throw std::invalid_argument("runge_unit: sigma is empty");
  if (sigma.front() < 0 || sigma.back() >= static_cast<long>(orbits.size()))
    throw std::invalid_argument("runge_unit: orbit index out of range");
  if (sigma.size() >= orbits.size())
    throw InvariantError(
        "runge_unit: sigma must be a proper subset of the cusp orbits "
        "(Runge condition |C(G,K)| > |sigma| violated)",
        sigma_witness(orbits.size(), sigma.size()));
  if (s == 0)
    s = static_cast<long>(sigma.size());
  if (s < static_cast<long>(sigma.size()))
    throw std::invalid_argument("runge_unit: s must be >= |sigma|");

  DivisorMatrix dm = divisor_matrix(gp, geoms, orbits);

  RungeUnit u;
  u.exponents = positive_combination(dm.entries.select_rows(sigma));
  u.labels = std::move(dm.labels);
  u.budget_B = u.exponents.l1_norm();
  u.sigma = std::move(sigma);
  u.s = s;
  u.divisor = combined_divisor(gp, geoms, u.labels, u.exponents);

  for (long oi : u.sigma)
    for (long gi : orbits[oi].members)
      if (u.divisor.coefficients[gi] <= 0) {
        const Cusp& c = geoms[gi].representative();
        throw InvariantError(
            "runge_unit: constructed divisor not positive at geometric cusp (" +
                std::to_string(c.x) + "," + std::to_string(c.y) + ")",
            "{\"orbit\":" + std::to_string(oi) + ",\"cusp\":[" +
                std::to_string(c.x) + "," + std::to_string(c.y) + "],\"ord\":\"" +
                u.divisor.coefficients[gi].get_str() + "\"}");
      }

  const Integer a_bound = Integer(gp.order()) * n * n;
  if (!l1_budget_within(u.budget_B, static_cast<long>(u.sigma.size()), a_bound))
    throw InvariantError(
        "runge_unit: budget exceeds s^(s/2+1) A^(s-1) with A = |G'| N^2",
        "{\"B\":\"" + u.budget_B.get_str() + "\",\"s\":" +
            std::to_string(u.sigma.size()) + ",\"A\":\"" + a_bound.get_str() +
            "\"}");

  u.lambda_height = lambda_integrality(u.budget_B, gp.order(), n);
  u.budget_bound = budget_bound_value(u.s, a_bound);
  return u;
}

RungeUnit runge_unit(const Subgroup& g, const std::vector<long>& h_k,
                     std::vector<long> sigma, long s) {
  const UnitGaloisGroup gp = unit_galois_group(g, h_k);
  const std::vector<GeometricCusp> geoms = geometric_cusps(g);
  return runge_unit(gp, geoms, galois_orbits(g, h_k, geoms), std::move(sigma), s);
}

RungeVerification verify_runge_unit(const UnitGaloisGroup& gp,
                                    const std::vector<GeometricCusp>& geoms,
                                    const std::vector<CuspOrbit>& orbits,
                                    const RungeUnit& u) {
  RungeVerification v;
  auto fail = [&v](const std::string& why) {
    if (v.failure.empty())
      v.failure = why;
  };

  if (u.labels.size() != u.exponents.entries.size() || u.sigma.empty() ||
      u.sigma.front() < 0 ||
      u.sigma.back() >= static_cast<long>(orbits.size()) ||
      u.sigma.size() >= orbits.size()) {
    fail("malformed unit: bad exponent table or sigma");
    return v;
  }

  const Divisor recomputed = combined_divisor(gp, geoms, u.labels, u.exponents);

  v.positive_on_sigma = true;
  for (long oi : u.sigma)
    for (long gi : orbits[oi].members)
      if (recomputed.coefficients[gi] <= 0) {
        v.positive_on_sigma = false;
        const Cusp& c = geoms[gi].representative();
        fail("divisor not positive at geometric cusp (" + std::to_string(c.x) +
             "," + std::to_string(c.y) + "), ord = " +
             recomputed.coefficients[gi].get_str());
      }

  const long n = gp.parent.level;
  const Integer a_bound = Integer(gp.order()) * n * n;
  const Integer l1 = u.exponents.l1_norm();
  const long s = std::max<long>(u.s, static_cast<long>(u.sigma.size()));
  v.budget_ok = (u.s >= static_cast<long>(u.sigma.size())) &&
                l1_budget_within(l1, s, a_bound);
  if (!v.budget_ok)
    fail("budget ||b||_1 = " + l1.get_str() +
         " exceeds s^(s/2+1) A^(s-1) (s = " + std::to_string(u.s) +
         ", A = " + a_bound.get_str() + ")");

  Integer weighted = 0;
  for (size_t oi = 0; oi < orbits.size(); ++oi)
    weighted += Integer(orbits[oi].degree()) *
                recomputed.coefficients[orbits[oi].members.front()];
  v.degree_zero = (divisor_degree(recomputed) == 0) && (weighted == 0);
  if (!v.degree_zero)
    fail("degree relation violated: plain sum " +
         divisor_degree(recomputed).get_str() + ", weighted sum " +
         weighted.get_str());

  v.consistent = true;
  if (!u.divisor.coefficients.empty() &&
      u.divisor.coefficients != recomputed.coefficients) {
    v.consistent = false;
    fail("stored divisor differs from recomputation");
  }
  if (u.budget_B != 0 && u.budget_B != l1) {
    v.consistent = false;
    fail("stored budget differs from recomputed l1 norm");
  }

  v.pass = v.positive_on_sigma && v.budget_ok && v.degree_zero && v.consistent;
  return v;
}

} // namespace rungekit
