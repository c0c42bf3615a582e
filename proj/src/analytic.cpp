#include "rungekit/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rungekit/errors.hpp"
#include "rungekit/exactmath.hpp"
#include "rungekit/gl2.hpp"

namespace rungekit {

namespace {

using Complex = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Below this magnitude a product factor 1 - w is 1 to double precision and
// the remaining (geometrically shrinking) factors are dropped.
constexpr double kNegligible = 1e-19;

// e^{2 pi i (s tau + t)}; rational powers of q are always read this way.
Complex unit_q_power(const UpperHalfPoint& tau, double s, double t) {
  const double r = std::exp(-kTwoPi * tau.im * s);
  const double ang = kTwoPi * (tau.re * s + t);
  return {r * std::cos(ang), r * std::sin(ang)};
}

// splitmix64; one independent stream per sample index, so partitioning
// samples across workers cannot change any drawn value.
std::uint64_t splitmix64_next(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SampleStream {
  std::uint64_t state;

  SampleStream(std::uint64_t seed, std::uint64_t index)
      : state(seed + (index + 1) * 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() { return splitmix64_next(state); }

  // Uniform in [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Exponential with scale 1.
  double exponential() { return -std::log1p(-uniform()); }
};

// tau uniform in re over [-1/2, 1/2), im = im_min + Exp(1), rejected until
// the point lies in D.  The rejection loop stays inside the sample's own
// stream.
UpperHalfPoint draw_in_D(SampleStream& s, double im_min) {
  for (int tries = 0; tries < 4096; ++tries) {
    const double re = s.uniform() - 0.5;
    const double im = im_min + s.exponential();
    if (re * re + im * im >= 1.0)
      return {re, im};
  }
  throw std::runtime_error("draw_in_D: rejection sampling did not accept");
}

struct WorstTracker {
  bool maximize = false;
  bool empty = true;
  double value = 0.0;
  SampleWitness witness;

  void offer(double v, const SampleWitness& w) {
    if (empty || (maximize ? v > value : v < value)) {
      value = v;
      witness = w;
      empty = false;
    }
  }
};

void require_sample_args(long samples, int terms, const char* who) {
  if (samples < 1)
    throw std::invalid_argument(std::string(who) + ": samples must be >= 1");
  if (terms < 1)
    throw std::invalid_argument(std::string(who) + ": terms must be >= 1");
}

} // namespace

Complex UpperHalfPoint::q() const { return unit_q_power(*this, 1.0, 0.0); }

std::pair<UpperHalfPoint, Sl2Word> reduce_to_D(UpperHalfPoint tau) {
  if (!(tau.im > 0.0))
    throw std::invalid_argument("reduce_to_D: point must satisfy im > 0");
  Sl2Word g; // accumulates gamma with tau' = gamma(tau)
  for (int iter = 0; iter < 512; ++iter) {
    double n = std::floor(tau.re + 0.5);
    if (tau.re - n == 0.5) // send re = +1/2 to the left edge
      n += 1.0;
    if (n != 0.0) {
      const auto m = static_cast<std::int64_t>(n);
      tau.re -= n;
      g.a -= m * g.c;
      g.b -= m * g.d;
    }
    const double norm2 = tau.re * tau.re + tau.im * tau.im;
    if (norm2 > 1.0 || (norm2 == 1.0 && tau.re <= 0.0))
      return {tau, g};
    // Apply S: tau -> -1/tau, which keeps the left arc of the unit circle.
    const UpperHalfPoint flipped{-tau.re / norm2, tau.im / norm2};
    tau = flipped;
    g = {-g.c, -g.d, g.a, g.b};
  }
  throw std::runtime_error("reduce_to_D: did not converge");
}

Complex eval_j(const UpperHalfPoint& tau, int terms) {
  if (terms < 1)
    throw std::invalid_argument("eval_j: terms must be >= 1");
  const Complex q = tau.q();
  if (std::abs(q) > 0.5)
    throw std::invalid_argument("eval_j: |q| > 0.5; reduce to D first");
  Complex e4 = 1.0;
  Complex qn = 1.0;
  for (int n = 1; n <= terms; ++n) {
    qn *= q;
    const double n3 = static_cast<double>(n) * n * n;
    e4 += 240.0 * n3 * qn / (1.0 - qn);
    if (std::abs(qn) < kNegligible)
      break;
  }
  Complex p = 1.0;
  qn = 1.0;
  for (int n = 1; n <= terms; ++n) {
    qn *= q;
    const Complex w = 1.0 - qn;
    const Complex w2 = w * w;
    const Complex w4 = w2 * w2;
    const Complex w8 = w4 * w4;
    p *= w8 * w8 * w8;
    if (std::abs(qn) < kNegligible)
      break;
  }
  return e4 * e4 * e4 / (q * p);
}

Complex eval_siegel(const UnitLabel& a, const UpperHalfPoint& tau, int terms) {
  if (terms < 1)
    throw std::invalid_argument("eval_siegel: terms must be >= 1");
  if (!(tau.im > 0.0))
    throw std::invalid_argument("eval_siegel: point must satisfy im > 0");
  const double n = static_cast<double>(a.level);
  const double a1 = static_cast<double>(a.k1) / n;
  const double a2 = static_cast<double>(a.k2) / n;
  const double b2_half = 0.5 * (a1 * a1 - a1 + 1.0 / 6.0);
  // -q^{B_2(a1)/2} e^{pi i a2 (a1 - 1)}
  Complex val = -unit_q_power(tau, b2_half, 0.5 * a2 * (a1 - 1.0));
  for (int k = 0; k < terms; ++k) {
    const Complex w1 = unit_q_power(tau, k + a1, a2);
    const Complex w2 = unit_q_power(tau, (k + 1) - a1, -a2);
    val *= (1.0 - w1) * (1.0 - w2);
    if (std::abs(w1) < kNegligible && std::abs(w2) < kNegligible)
      break;
  }
  return val;
}

double siegel_deviation(const UnitLabel& a, const UpperHalfPoint& tau,
                        int terms) {
  if (terms < 1)
    throw std::invalid_argument("siegel_deviation: terms must be >= 1");
  if (!(tau.im > 0.0))
    throw std::invalid_argument("siegel_deviation: point must satisfy im > 0");
  const double n = static_cast<double>(a.level);
  const double a1 = static_cast<double>(a.k1) / n;
  const double a2 = static_cast<double>(a.k2) / n;
  double dev = 0.0;
  for (int k = 0; k < terms; ++k) {
    const Complex w1 = unit_q_power(tau, k + a1, a2);
    const Complex w2 = unit_q_power(tau, (k + 1) - a1, -a2);
    dev += std::log(std::abs(1.0 - w1)) + std::log(std::abs(1.0 - w2));
    if (std::abs(w1) < kNegligible && std::abs(w2) < kNegligible)
      break;
  }
  return dev;
}

std::vector<Integer> j_fourier_coefficients_exact(int count) {
  if (count < 1)
    throw std::invalid_argument(
        "j_fourier_coefficients: count must be >= 1");
  const int len = count + 1; // coefficients of q^0 .. q^count of q*j
  // E_4 = 1 + 240 sum_{m>=1} sigma_3(m) q^m
  std::vector<Integer> e4(len, 0);
  e4[0] = 1;
  for (int m = 1; m < len; ++m) {
    Integer s3 = 0;
    for (int d = 1; d <= m; ++d)
      if (m % d == 0)
        s3 += Integer(d) * d * d;
    e4[m] = 240 * s3;
  }
  const auto mul = [len](const std::vector<Integer>& f,
                         const std::vector<Integer>& g) {
    std::vector<Integer> h(len, 0);
    for (int i = 0; i < len; ++i) {
      if (f[i] == 0)
        continue;
      for (int k = 0; i + k < len; ++k)
        h[i + k] += f[i] * g[k];
    }
    return h;
  };
  const std::vector<Integer> num = mul(mul(e4, e4), e4);
  // p = prod_{n>=1} (1 - q^n)^24, truncated
  std::vector<Integer> p(len, 0);
  p[0] = 1;
  for (int n = 1; n < len; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (int k = len - 1; k >= n; --k)
        p[k] -= p[k - n];
  // q*j = num / p by the division recurrence (p[0] = 1, so exact integers)
  std::vector<Integer> d(len, 0);
  for (int k = 0; k < len; ++k) {
    Integer acc = num[k];
    for (int i = 1; i <= k; ++i)
      acc -= p[i] * d[k - i];
    d[k] = acc;
  }
  if (d[0] != 1 || d[1] != 744 || (len > 2 && d[2] != 196884))
    throw InvariantError("j Fourier series failed its self-check",
                         "{\"check\":\"j-series\",\"c0\":\"" + d[0].get_str() +
                             "\",\"c1\":\"" + d[1].get_str() + "\"}");
  return {d.begin() + 1, d.end()};
}

std::vector<double> j_fourier_coefficients(int count) {
  const std::vector<Integer> exact = j_fourier_coefficients_exact(count);
  std::vector<double> out(exact.size());
  for (size_t i = 0; i < exact.size(); ++i)
    out[i] = exact[i].get_d();
  return out;
}

VerificationReport check_prop_j(long samples, std::uint64_t seed, int terms) {
  require_sample_args(samples, terms, "check_prop_j");
  VerificationReport r;
  r.check_name = "prop-j";
  r.sample_count = samples;
  r.seed = seed;
  r.terms = terms;
  r.metric_name = "worst_ratio";
  r.threshold = 330000.0;
  // c(0) = 744 unused here: the metric is |j - q^{-1} - 744| / |q|
  //                                     = |c(1) + c(2) q + c(3) q^2 + ...|,
  // which is free of the q^{-1}-vs-series cancellation that makes the naive
  // difference unusable in doubles once |q| is tiny.
  const std::vector<double> c = j_fourier_coefficients(terms + 1);
  const auto ratio_at = [&](const UpperHalfPoint& t) {
    const Complex q = t.q();
    Complex acc = 0.0;
    for (int m = terms; m >= 1; --m)
      acc = acc * q + c[static_cast<size_t>(m)];
    return std::abs(acc);
  };
  WorstTracker worst;
  worst.maximize = true;
  const auto offer = [&](const char* name, const UpperHalfPoint& t) {
    const double v = ratio_at(t);
    if (name != nullptr)
      r.probes.emplace_back(name, v);
    worst.offer(v, {t.re, t.im});
  };
  offer("tau=i", {0.0, 1.0});
  offer("tau=10i", {0.0, 10.0});
  const double im_min = std::log(1.0 / 0.005) / kTwoPi;
  for (long i = 0; i < samples; ++i) {
    SampleStream s(seed, static_cast<std::uint64_t>(i));
    offer(nullptr, draw_in_D(s, im_min));
  }
  r.worst_value = worst.value;
  r.worst_witness = worst.witness;
  r.pass = r.worst_value <= r.threshold;
  return r;
}

VerificationReport check_cor_j(long samples, std::uint64_t seed, int terms) {
  require_sample_args(samples, terms, "check_cor_j");
  VerificationReport r;
  r.check_name = "cor-j";
  r.sample_count = samples;
  r.seed = seed;
  r.terms = terms;
  r.metric_name = "worst_slack";
  r.threshold = 0.0;
  const std::vector<double> c = j_fourier_coefficients(terms + 1);
  const auto slack_at = [&](const UpperHalfPoint& t) {
    const Complex q = t.q();
    const double aq = std::abs(q);
    // w = j - q^{-1} = c(0) + c(1) q + ..., S = q j = 1 + q w.
    Complex w = 0.0;
    for (int m = terms; m >= 0; --m)
      w = w * q + c[static_cast<size_t>(m)];
    const Complex qw = q * w;
    const double abs_s = std::abs(1.0 + qw);
    const double abs_j = abs_s / aq;
    // Item (1): log(|j| + 2400) - |log|q||  =  log(|S| + 2400 |q|), written
    // as log1p of small, relatively-accurate pieces so the slack keeps its
    // sign even where it decays like |q|.
    const double s1 = std::log1p(
        (2.0 * qw.real() + std::norm(qw)) / (1.0 + abs_s) + 2400.0 * aq);
    // Item (2): |j| <= 3500 or |q| < 0.001, margins in log units.
    const double s2 =
        std::max(std::log(3500.0 / abs_j), std::log(0.001 / aq));
    double slack = std::min(s1, s2);
    // Item (3), only when |j| > 3500: |j - q^{-1}| <= 1100 and the sandwich
    // (3/2)|j| >= |q|^{-1} >= (1/2)|j|, i.e. 2/3 <= |S| <= 2.
    if (abs_j > 3500.0) {
      const double s3 = std::min({std::log(1100.0 / std::abs(w)),
                                  std::log(1.5 * abs_s),
                                  std::log(2.0 / abs_s)});
      slack = std::min(slack, s3);
    }
    return slack;
  };
  WorstTracker worst;
  const auto offer = [&](const char* name, const UpperHalfPoint& t) {
    const double v = slack_at(t);
    if (name != nullptr)
      r.probes.emplace_back(name, v);
    worst.offer(v, {t.re, t.im});
  };
  offer("tau=i", {0.0, 1.0});
  offer("tau=12i", {0.0, 12.0});
  offer("tau=corner", {-0.5, std::sqrt(3.0) / 2.0});
  for (long i = 0; i < samples; ++i) {
    SampleStream s(seed, static_cast<std::uint64_t>(i));
    offer(nullptr, draw_in_D(s, std::sqrt(3.0) / 2.0));
  }
  r.worst_value = worst.value;
  r.worst_witness = worst.witness;
  r.pass = r.worst_value >= r.threshold;
  return r;
}

VerificationReport check_siegel_D(long level, long samples, std::uint64_t seed,
                                  int terms) {
  if (level < 2)
    throw std::invalid_argument("check_siegel_D: level must be >= 2");
  require_sample_args(samples, terms, "check_siegel_D");
  VerificationReport r;
  r.check_name = "siegel-d";
  r.level = level;
  r.sample_count = samples;
  r.seed = seed;
  r.terms = terms;
  r.metric_name = "worst_slack";
  r.threshold = 0.0;
  r.informational_only = (level == 2);
  const std::vector<UnitLabel> labels = all_label_classes(level);
  const double logn = std::log(static_cast<double>(level));
  WorstTracker worst;
  const auto offer = [&](const char* name, const UpperHalfPoint& t) {
    double best = std::numeric_limits<double>::infinity();
    const UnitLabel* argmin = nullptr;
    for (const UnitLabel& a : labels) {
      const double slack = logn - std::abs(siegel_deviation(a, t, terms));
      if (slack < best) {
        best = slack;
        argmin = &a;
      }
    }
    if (name != nullptr)
      r.probes.emplace_back(name, best);
    worst.offer(best, {t.re, t.im, true, argmin->k1, argmin->k2});
  };
  offer("tau=i", {0.0, 1.0});
  offer("tau=corner", {-0.5, std::sqrt(3.0) / 2.0});
  for (long i = 0; i < samples; ++i) {
    SampleStream s(seed, static_cast<std::uint64_t>(i));
    offer(nullptr, draw_in_D(s, std::sqrt(3.0) / 2.0));
  }
  r.worst_value = worst.value;
  r.worst_witness = worst.witness;
  r.pass = r.worst_value >= r.threshold;
  return r;
}

VerificationReport check_siegel_global(long level, long samples,
                                       std::uint64_t seed, int terms) {
  if (level < 2)
    throw std::invalid_argument("check_siegel_global: level must be >= 2");
  require_sample_args(samples, terms, "check_siegel_global");
  VerificationReport r;
  r.check_name = "siegel-global";
  r.level = level;
  r.sample_count = samples;
  r.seed = seed;
  r.terms = terms;
  r.metric_name = "worst_slack";
  r.threshold = 0.0;
  const std::vector<UnitLabel> labels = all_label_classes(level);
  const double logn = std::log(static_cast<double>(level));
  // The corollary's proof: reduce tau' = gamma(tau) into D, transport the
  // label to b = a gamma^{-1}, and use |g_a(tau)| = |g_b(tau')| (the omitted
  // factor is a root of unity).
  const auto slack_for = [&](const UnitLabel& a, const UpperHalfPoint& t) {
    const auto [tp, gamma] = reduce_to_D(t);
    const Sl2Word gi = gamma.inverse();
    const auto entry = [&](std::int64_t v) {
      return UnitLabel::mod(static_cast<long>(v % level), level);
    };
    const ResidueMatrix m(level, entry(gi.a), entry(gi.b), entry(gi.c),
                          entry(gi.d));
    const UnitLabel b = act_label(a, m);
    const double ell_b = Rational(ell(b)).get_d();
    const double log_q = -kTwoPi * tp.im;
    const double left = std::abs(ell_b * log_q + siegel_deviation(b, tp, terms));
    const double right =
        std::log(std::abs(eval_j(tp, terms)) + 2400.0) / 12.0 + logn;
    return right - left;
  };
  WorstTracker worst;
  const auto offer_all_labels = [&](const char* name,
                                    const UpperHalfPoint& t) {
    double best = std::numeric_limits<double>::infinity();
    const UnitLabel* argmin = nullptr;
    for (const UnitLabel& a : labels) {
      const double slack = slack_for(a, t);
      if (slack < best) {
        best = slack;
        argmin = &a;
      }
    }
    if (name != nullptr)
      r.probes.emplace_back(name, best);
    worst.offer(best, {t.re, t.im, true, argmin->k1, argmin->k2});
  };
  offer_all_labels("tau=i", {0.0, 1.0});
  offer_all_labels("tau=0.33+0.05i", {0.33, 0.05});
  const double log_span = std::log(10.0 / 0.05);
  for (long i = 0; i < samples; ++i) {
    SampleStream s(seed, static_cast<std::uint64_t>(i));
    const double re = 3.0 * s.uniform() - 1.5;
    const double im = 0.05 * std::exp(s.uniform() * log_span);
    const UnitLabel& a = labels[s.next_u64() % labels.size()];
    const UpperHalfPoint t{re, im};
    worst.offer(slack_for(a, t), {t.re, t.im, true, a.k1, a.k2});
  }
  r.worst_value = worst.value;
  r.worst_witness = worst.witness;
  r.pass = r.worst_value >= r.threshold;
  return r;
}

} // namespace rungekit
