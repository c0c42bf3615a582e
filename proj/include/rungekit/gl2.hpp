#pragma once

#include <cstdint>
#include <vector>

#include "rungekit/label.hpp"

namespace rungekit {

// 2x2 matrix over Z/NZ, entries reduced to [0, N), invertible (an element of
// GL_2(Z/NZ)).  Ordering and equality go through key(), a base-N packing, so
// element sets have one canonical sorted form.
struct ResidueMatrix {
  long level;
  long n11, n12, n21, n22;

  ResidueMatrix(long N, long a, long b, long c, long d);

  static ResidueMatrix identity(long N);
  static ResidueMatrix minus_identity(long N);
  static ResidueMatrix diag(long N, long u, long v);
  // U^k for U = [[1,1],[0,1]].
  static ResidueMatrix unipotent_power(long N, long k);

  ResidueMatrix operator*(const ResidueMatrix& o) const;
  ResidueMatrix inverse() const;
  ResidueMatrix negated() const;

  long det() const;

  std::uint64_t key() const;
  friend bool operator==(const ResidueMatrix& a, const ResidueMatrix& b) {
    return a.level == b.level && a.key() == b.key();
  }
  friend bool operator<(const ResidueMatrix& a, const ResidueMatrix& b) {
    return a.key() < b.key();
  }
};

// A closed subgroup G of GL_2(Z/NZ) containing -I, with its determinant
// image and SL_2 part cached.  |det_image| * |sl2_part| = |G| always (det is
// onto det_image with kernel the SL_2 part).
struct Subgroup {
  long level = 0;
  std::vector<ResidueMatrix> generators; // as passed in (before closure)
  std::vector<ResidueMatrix> elements;   // sorted by key
  std::vector<ResidueMatrix> sl2_part;   // sorted by key
  std::vector<long> det_image;           // sorted subgroup of (Z/NZ)^*

  long order() const { return static_cast<long>(elements.size()); }
  bool contains(const ResidueMatrix& m) const;
  bool contains_pm(const ResidueMatrix& m) const; // m or -m in G
};

inline constexpr long kDefaultClosureCap = 20'000'000;

// Smallest subgroup containing the generators and -I (adjoined
// automatically).  Breadth-first product saturation; refuses to enumerate
// past `cap` elements.
Subgroup closure(const std::vector<ResidueMatrix>& generators, long N,
                 long cap = kDefaultClosureCap);

// The unit-Galois group G' = {g in G : det g in H_K} / {+-1}, stored as one
// canonical representative per +- class.  For N > 2 its order is exactly
// |{det in H_K}| / 2; at N = 2 the classes are singletons (-I = I).
struct UnitGaloisGroup {
  Subgroup parent;
  std::vector<long> h_k;                // sorted subgroup of (Z/NZ)^*
  std::vector<ResidueMatrix> classes_pm; // sorted canonical +- representatives

  long order() const { return static_cast<long>(classes_pm.size()); }
};

// H_K must be a subgroup of det_image(G); validated.
UnitGaloisGroup unit_galois_group(const Subgroup& g, const std::vector<long>& h_k);

// The subgroup of (Z/NZ)^* generated by `units` (empty list -> {1}).
std::vector<long> unit_subgroup(long N, const std::vector<long>& units);
std::vector<long> all_units(long N);

// Row-vector right action: (k1, k2) -> (k1 g11 + k2 g21, k1 g12 + k2 g22).
UnitLabel act_label(const UnitLabel& a, const ResidueMatrix& g);

// Multiset {a.sigma : sigma in G'} as sorted +- canonical labels (u_a =
// u_{-a}, so classes are identified); size is always |G'|.
std::vector<UnitLabel> label_orbit(const UnitLabel& a, const UnitGaloisGroup& gp);

} // namespace rungekit
