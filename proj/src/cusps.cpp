#include "rungekit/cusps.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rungekit/errors.hpp"

namespace rungekit {

namespace {

long mod(long v, long N) {
  long r = v % N;
  return r < 0 ? r + N : r;
}

// Extended gcd on nonnegative inputs: returns (g, u, v) with u*a + v*b = g.
struct Egcd {
  long g, u, v;
};

Egcd egcd(long a, long b) {
  if (b == 0)
    return {a, 1, 0};
  Egcd e = egcd(b, a % b);
  return {e.g, e.v, e.u - (a / b) * e.v};
}

long inv_mod(long u, long N) {
  Egcd e = egcd(mod(u, N), N);
  if (e.g != 1)
    throw std::invalid_argument("inv_mod: not a unit");
  return mod(e.u, N);
}

std::vector<long> sorted_divisors(long N) {
  std::vector<long> d;
  for (long e = 1; e <= N; ++e)
    if (N % e == 0)
      d.push_back(e);
  return d;
}

// Union-find over geometric cusp indices.
struct Dsu {
  std::vector<long> parent;
  explicit Dsu(long n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  long find(long x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(long a, long b) {
    a = find(a);
    b = find(b);
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b);
  }
};

} // namespace

Cusp::Cusp(long N, long vx, long vy) : level(N), x(mod(vx, N)), y(mod(vy, N)) {
  if (N < 2)
    throw std::invalid_argument("Cusp: level must be >= 2");
  if (std::gcd(std::gcd(x, y), N) != 1)
    throw std::invalid_argument("Cusp: vector not primitive mod N");
  long nx = mod(-x, N), ny = mod(-y, N);
  if (std::pair(nx, ny) < std::pair(x, y)) {
    x = nx;
    y = ny;
  }
}

Cusp Cusp::acted(const ResidueMatrix& g) const {
  if (level != g.level)
    throw std::invalid_argument("Cusp::acted: level mismatch");
  return Cusp(level, x * g.n11 + y * g.n21, x * g.n12 + y * g.n22);
}

std::vector<Cusp> cusps_of_XN(long N) {
  if (N < 2)
    throw std::invalid_argument("cusps_of_XN: level must be >= 2");
  std::vector<Cusp> out;
  for (long x = 0; x < N; ++x)
    for (long y = 0; y < N; ++y) {
      if (std::gcd(std::gcd(x, y), N) != 1)
        continue;
      Cusp c(N, x, y);
      if (c.x == x && c.y == y) // canonical representatives only
        out.push_back(c);
    }
  std::sort(out.begin(), out.end());
  return out;
}

ResidueMatrix scaling_matrix(const Cusp& c) {
  const long N = c.level;
  // u*x + v*y = g with gcd(g, N) = 1 by primitivity; the top row
  // (v, -u)/g mod N completes the bottom row (x, y) to determinant 1.
  Egcd e = egcd(c.x, c.y);
  long gi = inv_mod(e.g, N);
  long a = mod(e.v * gi, N), b = mod(-e.u * gi, N);
  ResidueMatrix m(N, a, b, c.x, c.y);
  if (m.det() != 1)
    throw InvariantError("scaling_matrix: determinant != 1");
  return m;
}

long cusp_width(const Subgroup& g, const Cusp& c) {
  if (g.level != c.level)
    throw std::invalid_argument("cusp_width: level mismatch");
  const long N = g.level;
  ResidueMatrix m = scaling_matrix(c);
  ResidueMatrix mi = m.inverse();
  for (long e : sorted_divisors(N)) {
    ResidueMatrix t = mi * ResidueMatrix::unipotent_power(N, e) * m;
    if (t.det() == 1 && (std::binary_search(g.sl2_part.begin(), g.sl2_part.end(), t) ||
                         std::binary_search(g.sl2_part.begin(), g.sl2_part.end(),
                                            t.negated())))
      return e;
  }
  throw InvariantError("cusp_width: no divisor of N stabilizes (U^N should)");
}

std::vector<GeometricCusp> geometric_cusps(const Subgroup& g) {
  std::vector<Cusp> all = cusps_of_XN(g.level);
  std::map<std::pair<long, long>, long> index;
  for (size_t i = 0; i < all.size(); ++i)
    index[{all[i].x, all[i].y}] = static_cast<long>(i);

  std::vector<bool> used(all.size(), false);
  std::vector<GeometricCusp> out;
  for (size_t i = 0; i < all.size(); ++i) {
    if (used[i])
      continue;
    GeometricCusp gc;
    for (const ResidueMatrix& s : g.sl2_part) {
      Cusp moved = all[i].acted(s);
      long j = index.at({moved.x, moved.y});
      if (!used[j]) {
        used[j] = true;
        gc.members.push_back(moved);
      }
    }
    std::sort(gc.members.begin(), gc.members.end());
    gc.width = cusp_width(g, gc.members.front());
    out.push_back(std::move(gc));
  }
  std::sort(out.begin(), out.end(), [](const GeometricCusp& a, const GeometricCusp& b) {
    return a.representative() < b.representative();
  });
  return out;
}

std::vector<CuspOrbit> galois_orbits(const Subgroup& g, const std::vector<long>& h_k,
                                     const std::vector<GeometricCusp>& geoms) {
  for (long d : h_k)
    if (!std::binary_search(g.det_image.begin(), g.det_image.end(), d))
      throw std::invalid_argument("galois_orbits: H_K is not contained in det G");

  // Which geometric cusp each X(N)-cusp belongs to.
  std::map<std::pair<long, long>, long> geom_of;
  for (size_t i = 0; i < geoms.size(); ++i)
    for (const Cusp& c : geoms[i].members)
      geom_of[{c.x, c.y}] = static_cast<long>(i);

  // Transitive closure of v ~ v.diag(d,1) over every member vector gives the
  // orbits of the group generated by G ∩ SL2 and the diagonal part (the
  // diagonal part need not normalize G ∩ SL2, so every member matters).
  //
  // The diagonal embedding is diag(d,1), not diag(1,d): sigma_d acts on
  // Fourier coefficients at c_inf and so fixes the valuation there, i.e.
  // fixes +-(0,1), and (0,1).diag(d,1) = (0,1).  This is also the unique
  // choice under which div(w_a) is constant on orbits (w_a is a Galois norm),
  // which the weighted degree relation of the divisor matrix depends on.
  Dsu dsu(static_cast<long>(geoms.size()));
  for (size_t i = 0; i < geoms.size(); ++i)
    for (const Cusp& c : geoms[i].members)
      for (long d : h_k) {
        Cusp moved = c.acted(ResidueMatrix::diag(g.level, d, 1));
        dsu.unite(static_cast<long>(i), geom_of.at({moved.x, moved.y}));
      }

  std::map<long, CuspOrbit> by_root;
  for (long i = 0; i < static_cast<long>(geoms.size()); ++i)
    by_root[dsu.find(i)].members.push_back(i);
  std::vector<CuspOrbit> out;
  for (auto& [root, orbit] : by_root)
    out.push_back(std::move(orbit)); // keys ascend, so orbits are sorted
  return out;
}

std::vector<CuspOrbit> galois_orbits(const Subgroup& g, const std::vector<long>& h_k) {
  return galois_orbits(g, h_k, geometric_cusps(g));
}

RungeConditionReport runge_condition(const Subgroup& g, const std::vector<long>& h_k,
                                     long s) {
  if (s < 1)
    throw std::invalid_argument("runge_condition: s must be >= 1");
  RungeConditionReport r;
  r.orbit_count = static_cast<long>(galois_orbits(g, h_k).size());
  r.s = s;
  r.satisfied = r.orbit_count > s;
  return r;
}

} // namespace rungekit
