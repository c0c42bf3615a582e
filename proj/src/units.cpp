#include "rungekit/units.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "rungekit/errors.hpp"
#include "rungekit/rounding.hpp"

namespace rungekit {

Integer divisor_degree(const Divisor& d) {
  Integer total = 0;
  for (const Integer& c : d.coefficients) total += c;
  return total;
}

Integer ord_u_infinity(const UnitLabel& a) {
  const Integer k1(a.k1), n(a.level);
  return 6 * k1 * k1 - 6 * k1 * n + n * n;
}

Integer ord_u(const UnitLabel& a, const Cusp& c) {
  if (a.level != c.level)
    throw std::invalid_argument("ord_u: label level != cusp level");
  return ord_u_infinity(act_label(a, scaling_matrix(c).inverse()));
}

namespace {

Integer push_down(const Integer& sum, long width, long n, const Cusp& lift) {
  Integer scaled = sum * width;
  Integer quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(),
              Integer(n).get_mpz_t());
  if (rem != 0) {
    const std::string witness = "{\"cusp\":[" + std::to_string(lift.x) + "," +
                                std::to_string(lift.y) + "],\"width\":" +
                                std::to_string(width) + ",\"sum\":\"" +
                                sum.get_str() + "\"}";
    throw InvariantError("div_w: pushdown (e_c/N)*sum is not integral at cusp (" +
                             std::to_string(lift.x) + "," + std::to_string(lift.y) + ")",
                         witness);
  }
  return quot;
}

} // namespace

Divisor div_w(const UnitLabel& a, const UnitGaloisGroup& gp,
              const std::vector<GeometricCusp>& geoms) {
  const long n = gp.parent.level;
  if (a.level != n)
    throw std::invalid_argument("div_w: label level != group level");
  Divisor d;
  d.curve_tag = CurveTag::kXG;
  d.coefficients.reserve(geoms.size());
  for (const GeometricCusp& gc : geoms) {
    const Cusp& lift = gc.representative();
    const ResidueMatrix minv = scaling_matrix(lift).inverse();
    Integer sum = 0;
    for (const ResidueMatrix& sigma : gp.classes_pm)
      sum += ord_u_infinity(act_label(act_label(a, sigma), minv));
    d.coefficients.push_back(push_down(sum, gc.width, n, lift));
  }
  return d;
}

Divisor div_w(const UnitLabel& a, const Subgroup& g, const std::vector<long>& h_k) {
  return div_w(a, unit_galois_group(g, h_k), geometric_cusps(g));
}

DivisorMatrix divisor_matrix(const UnitGaloisGroup& gp,
                             const std::vector<GeometricCusp>& geoms,
                             const std::vector<CuspOrbit>& orbits) {
  const long n = gp.parent.level;
  std::vector<UnitLabel> labels = all_label_classes(n);
  DivisorMatrix dm{IntMatrix(static_cast<long>(orbits.size()),
                             static_cast<long>(labels.size())),
                   std::move(labels),
                   {}};
  dm.representative.reserve(orbits.size());
  for (long r = 0; r < static_cast<long>(orbits.size()); ++r) {
    const long rep = orbits[r].members.front();
    dm.representative.push_back(rep);
    const GeometricCusp& gc = geoms[rep];
    const Cusp& lift = gc.representative();
    const ResidueMatrix minv = scaling_matrix(lift).inverse();
    for (long col = 0; col < static_cast<long>(dm.labels.size()); ++col) {
      Integer sum = 0;
      for (const ResidueMatrix& sigma : gp.classes_pm)
        sum += ord_u_infinity(act_label(act_label(dm.labels[col], sigma), minv));
      dm.entries.at(r, col) = push_down(sum, gc.width, n, lift);
    }
  }
  return dm;
}

DivisorMatrix divisor_matrix(const Subgroup& g, const std::vector<long>& h_k) {
  const UnitGaloisGroup gp = unit_galois_group(g, h_k);
  const std::vector<GeometricCusp> geoms = geometric_cusps(g);
  return divisor_matrix(gp, geoms, galois_orbits(g, h_k, geoms));
}

LeadingOrderData siegel_leading_order(const UnitLabel& a) {
  if (a.k1 != 0)
    return {a, ell(a), CoefficientClass::kUnitRootOfUnity, 1};
  const long m = a.level / std::gcd(a.level, a.k2);
  return {a, ell(a), CoefficientClass::kRootOfUnityTimesOneMinusZeta, m};
}

double lambda_integrality(const Integer& budget_b, long g_prime_order, long level) {
  if (budget_b < 1)
    throw std::invalid_argument("lambda_integrality: B must be >= 1");
  if (g_prime_order < 1 || level < 2)
    throw std::invalid_argument("lambda_integrality: bad group data");
  const Integer scale = 12 * budget_b * g_prime_order * level;
  return mul_up(to_double_up(scale), log_up(2.0));
}

} // namespace rungekit
