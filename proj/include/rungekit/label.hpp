#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rungekit {

// A nonzero element a = (k1/N, k2/N) of (N^-1 Z/Z)^2, indexing the Siegel
// unit g_a.  Residues are kept reduced to [0, N).  Since u_a = u_{-a}, many
// consumers work with the +/- class; pm_canonical() returns its preferred
// representative (the lexicographically smaller of a and -a).
struct UnitLabel {
  long level; // N >= 2
  long k1, k2;

  UnitLabel(long N, long a1, long a2) : level(N), k1(mod(a1, N)), k2(mod(a2, N)) {
    if (N < 2)
      throw std::invalid_argument("UnitLabel: level must be >= 2");
    if (k1 == 0 && k2 == 0)
      throw std::invalid_argument("UnitLabel: the zero label is excluded");
  }

  UnitLabel negated() const { return UnitLabel(level, level - k1, level - k2); }

  UnitLabel pm_canonical() const {
    UnitLabel n = negated();
    return (*this <= n) ? *this : n;
  }

  friend auto operator<=>(const UnitLabel& a, const UnitLabel& b) = default;

  std::string str() const {
    return "(" + std::to_string(k1) + "/" + std::to_string(level) + "," +
           std::to_string(k2) + "/" + std::to_string(level) + ")";
  }

  static long mod(long v, long N) {
    long r = v % N;
    return r < 0 ? r + N : r;
  }
};

// One canonical representative per +/- class of nonzero labels mod N, in
// lexicographic (k1, k2) order.  These are the columns of the divisor matrix.
inline std::vector<UnitLabel> all_label_classes(long N) {
  if (N < 2)
    throw std::invalid_argument("all_label_classes: level must be >= 2");
  std::vector<UnitLabel> out;
  for (long k1 = 0; k1 < N; ++k1)
    for (long k2 = 0; k2 < N; ++k2) {
      if (k1 == 0 && k2 == 0)
        continue;
      UnitLabel a(N, k1, k2);
      if (a.pm_canonical() == a)
        out.push_back(a);
    }
  return out;
}

} // namespace rungekit
