#pragma once

#include <vector>

#include "rungekit/gl2.hpp"

namespace rungekit {

// A cusp of X(N): the +/- class of a primitive row vector (x, y) mod N,
// stored as the lexicographically smaller of (x, y) and (-x, -y).  The
// infinity cusp is +-(0, 1).  The group acts on the right, v -> v.g.
struct Cusp {
  long level;
  long x, y; // canonical representative, residues in [0, N)

  Cusp(long N, long vx, long vy);

  static Cusp infinity(long N) { return Cusp(N, 0, 1); }

  Cusp acted(const ResidueMatrix& g) const;

  friend auto operator<=>(const Cusp& a, const Cusp& b) = default;
};

// A cusp of X_G: an orbit of X(N)-cusps under G ∩ SL2, together with the
// ramification index e_c of X_G -> X(1) there (the width; always divides N).
struct GeometricCusp {
  std::vector<Cusp> members; // sorted; front() is the representative
  long width = 0;

  const Cusp& representative() const { return members.front(); }
};

// A Galois orbit of geometric cusps; degree [K(c):K] = member count.
struct CuspOrbit {
  std::vector<long> members; // indices into the geometric cusp list, sorted

  long degree() const { return static_cast<long>(members.size()); }
};

// All +/- classes of primitive vectors mod N, sorted; (p^2-1)/2 of them for
// prime p, and 3 for N = 2 (each class is its own negative there).
std::vector<Cusp> cusps_of_XN(long N);

// A deterministic M_c in SL2(Z/NZ) with (0,1).M_c = vector(c): bottom row is
// the canonical representative, top row completed by extended gcd.
ResidueMatrix scaling_matrix(const Cusp& c);

// Width e_c = min{e >= 1 : M_c^-1 U^e M_c in +-(G ∩ SL2)}, U = [[1,1],[0,1]].
// M_c^-1 U^e M_c is the parabolic stabilizer of c under the right action, so
// the value is independent of the scaling-matrix choice (+-U^k M_c) and of
// the representative; it always divides N.
long cusp_width(const Subgroup& g, const Cusp& c);

// Orbits of cusps_of_XN under right multiplication by G ∩ SL2, sorted by
// representative; widths filled in.
std::vector<GeometricCusp> geometric_cusps(const Subgroup& g);

// C(G, K): orbits of the geometric cusps under the group generated by
// G ∩ SL2 and {diag(d, 1) : d in H_K}; H_K must be a subgroup of det G.
std::vector<CuspOrbit> galois_orbits(const Subgroup& g, const std::vector<long>& h_k,
                                     const std::vector<GeometricCusp>& geoms);
std::vector<CuspOrbit> galois_orbits(const Subgroup& g, const std::vector<long>& h_k);

struct RungeConditionReport {
  long orbit_count = 0;
  long s = 0;
  bool satisfied = false; // orbit_count > s
};

RungeConditionReport runge_condition(const Subgroup& g, const std::vector<long>& h_k,
                                     long s);

} // namespace rungekit
