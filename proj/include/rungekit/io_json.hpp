#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rungekit/bounds.hpp"
#include "rungekit/cusps.hpp"
#include "rungekit/errors.hpp"
#include "rungekit/gl2.hpp"
#include "rungekit/hiprec.hpp"
#include "rungekit/runge.hpp"
#include "rungekit/units.hpp"

namespace rungekit {

enum class GaloisChoice { kFull, kDetG, kUnits };

// A CLI group specification, prior to closure.
struct GroupSpec {
  long level = 0;
  std::vector<ResidueMatrix> generators;
  GaloisChoice galois = GaloisChoice::kDetG;
  std::vector<long> units; // read when galois == kUnits
};

// Parses {"level": N, "generators": [[[a,b],[c,d]], ...],
//         "galois": "full" | "detG" | [units]}.
// "generators" may be omitted (G = {+-1}); "galois" defaults to "detG".
// Malformed input raises std::invalid_argument carrying the parser's
// position-annotated message.
GroupSpec parse_group_spec(const std::string& text);

// H_K for the spec against the closed group: all of (Z/NZ)^* for kFull,
// det(G) for kDetG, the subgroup generated by the listed units for kUnits.
std::vector<long> resolve_galois(const GroupSpec& spec, const Subgroup& g);

// Emitters.  Each returns one JSON document: top-level "schema": 1, keys
// sorted, two-space indentation.  Arbitrary-precision integers become JSON
// numbers when they fit in 64 bits and decimal strings otherwise, so every
// value round-trips exactly.
std::string cusps_json(const Subgroup& g,
                       const std::vector<GeometricCusp>& geoms);
std::string orbits_json(const Subgroup& g, const std::vector<long>& h_k,
                        const std::vector<GeometricCusp>& geoms,
                        const std::vector<CuspOrbit>& orbits);
std::string divisors_json(const Subgroup& g, long gprime_order,
                          const std::vector<GeometricCusp>& geoms,
                          const std::vector<UnitLabel>& labels,
                          const std::vector<Divisor>& divisors,
                          long matrix_rank);
std::string runge_unit_json(const RungeUnit& u, const RungeVerification& v);
std::string bound_json(const BoundReport& r);
std::string verification_json(
    const VerificationReport& r,
    const std::optional<HiPrecRefinement>& hi = std::nullopt);
std::string invariant_error_json(const InvariantError& e);

} // namespace rungekit
