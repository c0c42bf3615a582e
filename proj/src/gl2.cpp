#include "rungekit/gl2.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "rungekit/errors.hpp"

namespace rungekit {

namespace {

long mod(long v, long N) {
  long r = v % N;
  return r < 0 ? r + N : r;
}

long gcd_l(long a, long b) { return std::gcd(a, b); }

// Modular inverse of u, requiring gcd(u, N) = 1.
long inv_mod(long u, long N) {
  long t = 0, newt = 1, r = N, newr = mod(u, N);
  while (newr != 0) {
    long q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  if (r != 1)
    throw std::invalid_argument("inv_mod: not a unit mod N");
  return mod(t, N);
}

} // namespace

ResidueMatrix::ResidueMatrix(long N, long a, long b, long c, long d)
    : level(N), n11(mod(a, N)), n12(mod(b, N)), n21(mod(c, N)), n22(mod(d, N)) {
  if (N < 2)
    throw std::invalid_argument("ResidueMatrix: level must be >= 2");
  if (N > (1L << 15))
    throw std::invalid_argument("ResidueMatrix: level too large for packed keys");
  if (gcd_l(det(), N) != 1)
    throw std::invalid_argument("ResidueMatrix: determinant not invertible mod N");
}

ResidueMatrix ResidueMatrix::identity(long N) { return ResidueMatrix(N, 1, 0, 0, 1); }

ResidueMatrix ResidueMatrix::minus_identity(long N) {
  return ResidueMatrix(N, -1, 0, 0, -1);
}

ResidueMatrix ResidueMatrix::diag(long N, long u, long v) {
  return ResidueMatrix(N, u, 0, 0, v);
}

ResidueMatrix ResidueMatrix::unipotent_power(long N, long k) {
  return ResidueMatrix(N, 1, k, 0, 1);
}

ResidueMatrix ResidueMatrix::operator*(const ResidueMatrix& o) const {
  if (level != o.level)
    throw std::invalid_argument("ResidueMatrix: level mismatch");
  return ResidueMatrix(level, n11 * o.n11 + n12 * o.n21, n11 * o.n12 + n12 * o.n22,
                       n21 * o.n11 + n22 * o.n21, n21 * o.n12 + n22 * o.n22);
}

ResidueMatrix ResidueMatrix::inverse() const {
  // adj(M) scaled by det^-1.
  long di = inv_mod(det(), level);
  return ResidueMatrix(level, di * n22, -di * n12, -di * n21, di * n11);
}

ResidueMatrix ResidueMatrix::negated() const {
  return ResidueMatrix(level, -n11, -n12, -n21, -n22);
}

long ResidueMatrix::det() const { return mod(n11 * n22 - n12 * n21, level); }

std::uint64_t ResidueMatrix::key() const {
  std::uint64_t N = static_cast<std::uint64_t>(level);
  return ((static_cast<std::uint64_t>(n11) * N + n12) * N + n21) * N + n22;
}

bool Subgroup::contains(const ResidueMatrix& m) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), m);
  return it != elements.end() && *it == m;
}

bool Subgroup::contains_pm(const ResidueMatrix& m) const {
  return contains(m) || contains(m.negated());
}

Subgroup closure(const std::vector<ResidueMatrix>& generators, long N, long cap) {
  if (N < 2)
    throw std::invalid_argument("closure: level must be >= 2");
  for (const ResidueMatrix& g : generators)
    if (g.level != N)
      throw std::invalid_argument("closure: generator level mismatch");

  // Seed with I and -I; multiply by generators until saturated.  A finite
  // set closed under products is automatically closed under inverses.
  std::vector<ResidueMatrix> gens = generators;
  gens.push_back(ResidueMatrix::minus_identity(N));

  std::vector<ResidueMatrix> pool{ResidueMatrix::identity(N)};
  std::unordered_set<std::uint64_t> seen{pool[0].key()};
  for (size_t head = 0; head < pool.size(); ++head) {
    ResidueMatrix cur = pool[head]; // copy: pool may reallocate
    for (const ResidueMatrix& g : gens) {
      ResidueMatrix next = cur * g;
      if (seen.insert(next.key()).second) {
        if (static_cast<long>(pool.size()) + 1 > cap)
          throw std::invalid_argument("closure: element cap " + std::to_string(cap) +
                                      " exceeded");
        pool.push_back(next);
      }
    }
  }

  Subgroup out;
  out.level = N;
  out.generators = generators;
  out.elements = std::move(pool);
  std::sort(out.elements.begin(), out.elements.end());
  std::unordered_set<long> dets;
  for (const ResidueMatrix& m : out.elements) {
    if (m.det() == 1)
      out.sl2_part.push_back(m);
    dets.insert(m.det());
  }
  out.det_image.assign(dets.begin(), dets.end());
  std::sort(out.det_image.begin(), out.det_image.end());

  if (out.order() != static_cast<long>(out.det_image.size()) *
                         static_cast<long>(out.sl2_part.size()))
    throw InvariantError("closure: |G| != |det G| * |G ∩ SL2|");
  return out;
}

std::vector<long> all_units(long N) {
  std::vector<long> u;
  for (long d = 1; d < N; ++d)
    if (gcd_l(d, N) == 1)
      u.push_back(d);
  if (N == 1)
    u.push_back(0); // degenerate, unused
  return u;
}

std::vector<long> unit_subgroup(long N, const std::vector<long>& units) {
  std::unordered_set<long> seen{1 % N};
  std::vector<long> pool{1 % N};
  for (long g : units)
    if (gcd_l(mod(g, N), N) != 1)
      throw std::invalid_argument("unit_subgroup: generator not a unit mod N");
  for (size_t head = 0; head < pool.size(); ++head) {
    long cur = pool[head];
    for (long g : units) {
      long next = mod(cur * mod(g, N), N);
      if (seen.insert(next).second)
        pool.push_back(next);
    }
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

UnitGaloisGroup unit_galois_group(const Subgroup& g, const std::vector<long>& h_k) {
  // H_K must be a subgroup of det G (the standing field hypothesis).
  for (long d : h_k)
    if (!std::binary_search(g.det_image.begin(), g.det_image.end(), d))
      throw std::invalid_argument("unit_galois_group: H_K is not contained in det G");
  if (h_k.empty() || !std::binary_search(h_k.begin(), h_k.end(), 1L))
    throw std::invalid_argument("unit_galois_group: H_K must contain 1");

  UnitGaloisGroup out;
  out.parent = g;
  out.h_k = h_k;
  std::unordered_set<std::uint64_t> taken;
  for (const ResidueMatrix& m : g.elements) {
    if (!std::binary_search(h_k.begin(), h_k.end(), m.det()))
      continue;
    ResidueMatrix neg = m.negated();
    const ResidueMatrix& rep = (m < neg) ? m : neg;
    if (taken.insert(rep.key()).second)
      out.classes_pm.push_back(rep);
  }
  std::sort(out.classes_pm.begin(), out.classes_pm.end());
  return out;
}

UnitLabel act_label(const UnitLabel& a, const ResidueMatrix& g) {
  if (a.level != g.level)
    throw std::invalid_argument("act_label: level mismatch");
  return UnitLabel(a.level, a.k1 * g.n11 + a.k2 * g.n21, a.k1 * g.n12 + a.k2 * g.n22);
}

std::vector<UnitLabel> label_orbit(const UnitLabel& a, const UnitGaloisGroup& gp) {
  std::vector<UnitLabel> out;
  out.reserve(gp.classes_pm.size());
  for (const ResidueMatrix& s : gp.classes_pm)
    out.push_back(act_label(a, s).pm_canonical());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace rungekit
