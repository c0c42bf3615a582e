#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "rungekit/analytic.hpp"
#include "rungekit/hiprec.hpp"

using namespace rungekit;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

UpperHalfPoint apply(const Sl2Word& g, const UpperHalfPoint& t) {
  std::complex<double> tau(t.re, t.im);
  std::complex<double> num = double(g.a) * tau + double(g.b);
  std::complex<double> den = double(g.c) * tau + double(g.d);
  std::complex<double> r = num / den;
  return {r.real(), r.imag()};
}

} // namespace

TEST_CASE("reduction to the fundamental domain") {
  auto [t1, g1] = reduce_to_D({0.0, 2.0});
  CHECK(t1.re == 0.0);
  CHECK(t1.im == 2.0);
  CHECK(g1.a == 1);
  CHECK(g1.b == 0);

  // 0.6 + 0.8i: |re| > 1/2 translates first, then inverts; lands at -1/2 + i.
  auto [t2, g2] = reduce_to_D({0.6, 0.8});
  CHECK(t2.re == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(t2.im == doctest::Approx(1.0).epsilon(1e-12));
  UpperHalfPoint back = apply(g2, {0.6, 0.8});
  CHECK(back.re == doctest::Approx(t2.re).epsilon(1e-12));
  CHECK(back.im == doctest::Approx(t2.im).epsilon(1e-12));

  // Boundary ties go left: re = +1/2 maps to re = -1/2.
  auto [t3, g3] = reduce_to_D({0.5, 3.0});
  (void)g3;
  CHECK(t3.re == -0.5);
  CHECK(t3.im == 3.0);

  // Far-away points come back with |re| <= 1/2, |tau| >= 1.
  auto [t4, g4] = reduce_to_D({13.37, 0.001});
  (void)g4;
  CHECK(std::abs(t4.re) <= 0.5);
  CHECK(t4.re * t4.re + t4.im * t4.im >= 1.0 - 1e-12);
}

TEST_CASE("j spot values") {
  // j(i) = 1728.
  std::complex<double> ji = eval_j({0.0, 1.0});
  CHECK(std::abs(ji - 1728.0) < 1e-8);
  // j(rho) = 0 at the corner rho = e^{i pi / 3}.
  std::complex<double> jrho = eval_j({0.5, std::sqrt(3.0) / 2.0});
  CHECK(std::abs(jrho) < 1e-30);
  // j(10i) ~ q^-1 + 744: the q-expansion dominates.
  std::complex<double> jfar = eval_j({0.0, 10.0});
  double qinv = std::exp(kTwoPi * 10.0);
  CHECK(std::abs(jfar.real() - (qinv + 744.0)) / qinv < 1e-10);
  CHECK_THROWS_AS(eval_j({0.0, 0.05}), std::invalid_argument); // |q| > 1/2
}

TEST_CASE("j Fourier coefficients, exact and rounded") {
  auto c = j_fourier_coefficients_exact(5);
  REQUIRE(c.size() == 5);
  CHECK(c[0] == 744);
  CHECK(c[1] == 196884);
  CHECK(c[2] == 21493760);
  CHECK(c[3] == 864299970);
  CHECK(c[4] == Integer("20245856256"));
  auto d = j_fourier_coefficients(3);
  CHECK(d[1] == 196884.0);
}

TEST_CASE("series evaluation agrees with the direct product form") {
  for (double im : {0.9, 1.3, 2.0}) {
    for (double re : {-0.41, 0.0, 0.27}) {
      UpperHalfPoint tau{re, im};
      std::complex<double> direct = eval_j(tau);
      // q^-1 + sum c(m) q^m from the exact coefficients.
      std::complex<double> q = tau.q();
      auto c = j_fourier_coefficients(40);
      std::complex<double> acc(0.0, 0.0);
      for (int m = 39; m >= 0; --m) acc = acc * q + c[static_cast<std::size_t>(m)];
      std::complex<double> series = 1.0 / q + acc;
      CHECK(std::abs(direct - series) / std::abs(direct) < 1e-12);
    }
  }
}

TEST_CASE("siegel function and its deviation at tau = i") {
  // |g_a(i)| for a = (0, 1/2): deviation = log|g_a| - ell log|q| with
  // ell = B2(0)/2 = 1/12; measured overshoot over log 2 is ~0.0037384.
  double dev = siegel_deviation(UnitLabel(2, 0, 1), {0.0, 1.0});
  CHECK(dev == doctest::Approx(0.6968855707).epsilon(1e-9));
  CHECK(dev - std::log(2.0) == doctest::Approx(0.0037384).epsilon(1e-3));

  // eval_siegel agrees with exp(deviation + ell log|q|) in magnitude.
  std::complex<double> g = eval_siegel(UnitLabel(2, 0, 1), {0.0, 1.0});
  double logmag = std::log(std::abs(g));
  double ell_log_q = (1.0 / 12.0) * (-kTwoPi);
  CHECK(logmag == doctest::Approx(dev + ell_log_q).epsilon(1e-10));
}

TEST_CASE("prop-j check: certified ratio bound") {
  VerificationReport r = check_prop_j(300, 42);
  CHECK(r.pass);
  CHECK(r.check_name == "prop-j");
  CHECK(r.metric_name == "worst_ratio");
  // The tau = i probe is the regional maximum and is folded into the worst.
  CHECK(r.worst_value == doctest::Approx(240172.4759).epsilon(1e-6));
  CHECK(r.worst_value <= r.threshold);
  bool found_probe = false;
  for (const auto& [name, value] : r.probes) {
    if (name == "tau=i") {
      found_probe = true;
      CHECK(value == doctest::Approx(240172.4759).epsilon(1e-6));
    }
  }
  CHECK(found_probe);
}

TEST_CASE("cor-j check: all three items") {
  VerificationReport r = check_cor_j(300, 42);
  CHECK(r.pass);
  CHECK(r.metric_name == "worst_slack");
  CHECK(r.worst_value >= 0.0);
}

TEST_CASE("siegel-D check: pass for N = 3, informational at N = 2") {
  VerificationReport r3 = check_siegel_D(3, 200, 42);
  CHECK(r3.pass);
  CHECK_FALSE(r3.informational_only);
  CHECK(r3.worst_value >= 0.0);

  VerificationReport r2 = check_siegel_D(2, 200, 42);
  CHECK_FALSE(r2.pass);
  CHECK(r2.informational_only);
  // Overshoot measured at tau = i, a = (0, 1/2): slack ~ -0.0037384.
  CHECK(r2.worst_value == doctest::Approx(-0.0037384).epsilon(1e-3));
  CHECK(r2.worst_witness.has_label);
  CHECK(r2.worst_witness.k1 == 0);
  CHECK(r2.worst_witness.k2 == 1);
}

TEST_CASE("siegel global check transports labels through the reduction") {
  VerificationReport r = check_siegel_global(5, 300, 42);
  CHECK(r.pass);
  CHECK(r.worst_value >= 0.0);
  // Spot probe at tau = i keeps slack > 1.
  for (const auto& [name, value] : r.probes) {
    if (name == "tau=i") CHECK(value > 1.0);
  }
}

TEST_CASE("hi-prec refinement agrees with the double-precision worst value") {
  VerificationReport r = check_prop_j(200, 7);
  HiPrecRefinement hi = refine_worst_witness(r);
  CHECK(hi.precision_bits == 160);
  CHECK(hi.worst_value == doctest::Approx(r.worst_value).epsilon(1e-12));

  VerificationReport s = check_siegel_D(2, 100, 7);
  HiPrecRefinement hs = refine_worst_witness(s);
  CHECK(hs.worst_value == doctest::Approx(s.worst_value).epsilon(1e-10));

  CHECK_THROWS_AS(refine_worst_witness(r, 32), std::invalid_argument);
}

TEST_CASE("identical seeds reproduce the report bit for bit") {
  VerificationReport a = check_cor_j(150, 99);
  VerificationReport b = check_cor_j(150, 99);
  CHECK(a.worst_value == b.worst_value);
  CHECK(a.worst_witness.re == b.worst_witness.re);
  CHECK(a.worst_witness.im == b.worst_witness.im);
}
