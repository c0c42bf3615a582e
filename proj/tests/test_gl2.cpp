#include <doctest.h>

#include <algorithm>

#include "rungekit/gl2.hpp"

using namespace rungekit;

TEST_CASE("residue matrix arithmetic") {
  ResidueMatrix u = ResidueMatrix::unipotent_power(5, 3);
  CHECK(u.n11 == 1);
  CHECK(u.n12 == 3);
  CHECK(u.n21 == 0);
  CHECK(u.n22 == 1);

  // det(2,1,3,4) = 8 - 3 = 5 = 0 mod 5: not invertible.
  CHECK_THROWS_AS(ResidueMatrix(5, 2, 1, 3, 4), std::invalid_argument);

  ResidueMatrix g(5, 1, 2, 3, 2); // det = 2 - 6 = -4 = 1 mod 5
  CHECK(g.det() == 1);
  ResidueMatrix gi = g.inverse();
  CHECK(g * gi == ResidueMatrix::identity(5));
  CHECK(gi * g == ResidueMatrix::identity(5));
  CHECK(g.negated() == ResidueMatrix(5, -1, -2, -3, -2));
}

TEST_CASE("closure adjoins -I and caches det image and SL2 part") {
  Subgroup pm = closure({}, 5);
  CHECK(pm.order() == 2); // {I, -I}
  CHECK(pm.det_image == std::vector<long>{1});
  CHECK(pm.sl2_part.size() == 2);

  // Split Cartan mod 5: diagonal matrices, order (p-1)^2 = 16.
  std::vector<ResidueMatrix> gens;
  for (long u = 2; u < 5; ++u) {
    gens.push_back(ResidueMatrix::diag(5, u, 1));
    gens.push_back(ResidueMatrix::diag(5, 1, u));
  }
  Subgroup sc = closure(gens, 5);
  CHECK(sc.order() == 16);
  CHECK(sc.det_image.size() == 4);
  CHECK(sc.sl2_part.size() == 4); // diag(u, u^-1)
  CHECK(sc.contains(ResidueMatrix::diag(5, 3, 2)));
  CHECK_FALSE(sc.contains(ResidueMatrix::unipotent_power(5, 1)));

  // X_1(5)-type group: +-<[[1,1],[0,1]], diag(1,2)>, order 40.
  Subgroup x1 = closure({ResidueMatrix(5, 1, 1, 0, 1), ResidueMatrix::diag(5, 1, 2)}, 5);
  CHECK(x1.order() == 40);
}

TEST_CASE("unit galois group orders") {
  std::vector<ResidueMatrix> gens;
  for (long u = 2; u < 5; ++u) {
    gens.push_back(ResidueMatrix::diag(5, u, 1));
    gens.push_back(ResidueMatrix::diag(5, 1, u));
  }
  Subgroup sc = closure(gens, 5);
  UnitGaloisGroup gp = unit_galois_group(sc, all_units(5));
  CHECK(gp.order() == 8); // |{det in H_K}| / 2 = 16/2

  // H_K must sit inside det(G).
  Subgroup pm = closure({}, 5);
  CHECK_THROWS_AS(unit_galois_group(pm, all_units(5)), std::invalid_argument);
  UnitGaloisGroup trivial = unit_galois_group(pm, {1});
  CHECK(trivial.order() == 1);
}

TEST_CASE("unit subgroups of (Z/NZ)^*") {
  CHECK(all_units(5) == std::vector<long>{1, 2, 3, 4});
  CHECK(unit_subgroup(5, {}) == std::vector<long>{1});
  CHECK(unit_subgroup(5, {4}) == std::vector<long>{1, 4});
  CHECK(unit_subgroup(8, {3, 5}) == std::vector<long>{1, 3, 5, 7});
}

TEST_CASE("label action is the row-vector right action") {
  UnitLabel a(5, 1, 2);
  ResidueMatrix g(5, 1, 1, 0, 1); // (1,2) . U = (1, 1+2)
  UnitLabel b = act_label(a, g);
  CHECK(b.k1 == 1);
  CHECK(b.k2 == 3);

  // -a and a give the same +- class.
  UnitLabel minus = a.negated().pm_canonical();
  CHECK(minus == a.pm_canonical());
}

TEST_CASE("label orbit size equals |G'|") {
  std::vector<ResidueMatrix> gens;
  for (long u = 2; u < 5; ++u) {
    gens.push_back(ResidueMatrix::diag(5, u, 1));
    gens.push_back(ResidueMatrix::diag(5, 1, u));
  }
  UnitGaloisGroup gp = unit_galois_group(closure(gens, 5), all_units(5));
  auto orbit = label_orbit(UnitLabel(5, 1, 0), gp);
  CHECK(orbit.size() == 8);
  CHECK(std::is_sorted(orbit.begin(), orbit.end()));
  // diag action fixes the axes: every element keeps k2 = 0.
  for (const UnitLabel& l : orbit) CHECK(l.k2 == 0);
}
