#pragma once

#include <string>
#include <vector>

#include "rungekit/cusps.hpp"
#include "rungekit/exactmath.hpp"
#include "rungekit/gl2.hpp"
#include "rungekit/units.hpp"

namespace rungekit {

// A certified Runge unit w = prod_a w_a^{b_a} for a proper orbit subset
// sigma: its exponents, exact l1 budget B, divisor on X_G, and the two
// derived heights (both honest upper bounds in double precision).
struct RungeUnit {
  std::vector<UnitLabel> labels; // column order of the exponents
  ExponentVector exponents;
  Integer budget_B;
  std::vector<long> sigma;       // orbit indices, sorted, duplicates removed
  long s = 0;                    // budget parameter, >= |sigma|
  Divisor divisor;               // over every geometric cusp of X_G
  double lambda_height = 0.0;    // 12 B |G'| N log 2
  double budget_bound = 0.0;     // s^(s/2+1) (|G'| N^2)^(s-1)
};

// Upper bound on the Hadamard budget s^(s/2+1) A^(s-1) as a double
// (sqrt(s^(s+2)) * A^(s-1), both factors computed exactly first).
double budget_bound_value(long s, const Integer& a_bound);

// Divisor of prod_i u-label[i]^exponent[i] on X_G, one div_w per nonzero
// exponent, recomputed from scratch.
Divisor combined_divisor(const UnitGaloisGroup& gp,
                         const std::vector<GeometricCusp>& geoms,
                         const std::vector<UnitLabel>& labels,
                         const ExponentVector& exponents);

// Construct the Runge unit for sigma: selects the sigma rows of the divisor
// matrix, solves for a positive combination, recomputes the divisor, and
// asserts positivity on sigma plus the exact budget inequality.  s = 0 means
// s = |sigma|.  Throws InvariantError when sigma is not a proper subset of
// the orbits (Runge condition), on rank deficiency, and on any failed
// certificate; std::invalid_argument on malformed input.
RungeUnit runge_unit(const UnitGaloisGroup& gp,
                     const std::vector<GeometricCusp>& geoms,
                     const std::vector<CuspOrbit>& orbits,
                     std::vector<long> sigma, long s = 0);
RungeUnit runge_unit(const Subgroup& g, const std::vector<long>& h_k,
                     std::vector<long> sigma, long s = 0);

struct RungeVerification {
  bool positive_on_sigma = false;
  bool budget_ok = false;
  bool degree_zero = false;
  bool consistent = false; // stored divisor/budget match the recomputation
  bool pass = false;
  std::string failure;     // first failed condition, empty when pass
};

// Independent re-verification: rebuilds the divisor from the exponents
// alone, then re-checks positivity on sigma, the budget inequality with
// A = |G'| N^2, and the (weighted and plain) degree-zero relations.
// A RungeUnit with an empty stored divisor (hand-built exponents) skips the
// consistency comparison but is otherwise fully checked.
RungeVerification verify_runge_unit(const UnitGaloisGroup& gp,
                                    const std::vector<GeometricCusp>& geoms,
                                    const std::vector<CuspOrbit>& orbits,
                                    const RungeUnit& u);

} // namespace rungekit
