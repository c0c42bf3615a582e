#pragma once

#include <vector>

#include "rungekit/cusps.hpp"
#include "rungekit/exactmath.hpp"
#include "rungekit/gl2.hpp"
#include "rungekit/label.hpp"

namespace rungekit {

enum class CurveTag { kXN, kXG };

// A cuspidal divisor.  Coefficients are aligned with cusps_of_XN(N) for
// curve_tag kXN and with a subgroup's geometric-cusp list for kXG.
struct Divisor {
  CurveTag curve_tag = CurveTag::kXN;
  std::vector<Integer> coefficients;
};

// Plain coefficient sum.  Both divisor flavors are principal here, so this
// vanishes: on X(N) every cusp counts once, and on X_G constancy of ord
// along Galois orbits makes the plain sum equal the [K(c):K]-weighted one.
Integer divisor_degree(const Divisor& d);

enum class CoefficientClass {
  kUnitRootOfUnity,             // leading coefficient is a root of unity
  kRootOfUnityTimesOneMinusZeta // root of unity times (1 - zeta_M)
};

// Non-archimedean leading-order data of g_a at the infinity cusp: the
// fractional order ell(a) plus which of the two coefficient shapes occurs.
struct LeadingOrderData {
  UnitLabel label;
  Rational order;
  CoefficientClass coefficient_class;
  long zeta_order; // M, the multiplicative order of e^{2 pi i a2}; 1 when unused
};

// ord of u_a = g_a^{12N} at the infinity cusp in the parameter q^{1/N}:
// 12 N^2 ell(a) = 6 k1^2 - 6 k1 N + N^2, always an integer.
Integer ord_u_infinity(const UnitLabel& a);

// ord of u_a at an arbitrary cusp: ord_u_infinity(a . M_c^-1), where M_c is
// the scaling matrix taking the infinity cusp to c.  Right-translating by
// M_c^-1 is what is invariant under the allowed replacements +-U^k M_c.
Integer ord_u(const UnitLabel& a, const Cusp& c);

// Divisor of w_a = prod_{sigma in G'} u_{a sigma} on X_G: at each geometric
// cusp c with lift c~ and width e_c the coefficient is
// (e_c / N) * sum_{sigma in G'} ord_u(a sigma, c~), an exact-rational
// pushdown that must come out integral (InvariantError otherwise).
Divisor div_w(const UnitLabel& a, const UnitGaloisGroup& gp,
              const std::vector<GeometricCusp>& geoms);
Divisor div_w(const UnitLabel& a, const Subgroup& g, const std::vector<long>& h_k);

// The |C(G,K)| x |A| matrix (ord_c w_a): one row per Galois orbit, indexed
// by its lexicographically smallest geometric cusp, one column per +- label
// class in the order of all_label_classes(N).
struct DivisorMatrix {
  IntMatrix entries;
  std::vector<UnitLabel> labels;     // column labels
  std::vector<long> representative;  // geometric-cusp index behind each row
};

DivisorMatrix divisor_matrix(const UnitGaloisGroup& gp,
                             const std::vector<GeometricCusp>& geoms,
                             const std::vector<CuspOrbit>& orbits);
DivisorMatrix divisor_matrix(const Subgroup& g, const std::vector<long>& h_k);

// Leading-order dichotomy at a place away from the support of q: for
// 0 < a1 < 1 the coefficient is a unit root of unity, for a1 = 0 it is a
// root of unity times (1 - zeta_M) with M the order of a2.
LeadingOrderData siegel_leading_order(const UnitLabel& a);

// Height of the integrality scalar lambda: 12 B |G'| N log 2, rounded
// upward (lambda is a product of at most |G'| B factors (1 - zeta)^{12N}).
double lambda_integrality(const Integer& budget_b, long g_prime_order, long level);

} // namespace rungekit
