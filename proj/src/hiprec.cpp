#include "rungekit/hiprec.hpp"

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "rungekit/exactmath.hpp"
#include "rungekit/gl2.hpp"
#include "rungekit/label.hpp"

namespace rungekit {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;
constexpr double kNegligible = 1e-19;

// Minimal value-semantics wrapper over mpfr_t covering just the operations
// the witness re-evaluations need.
class Real {
public:
  explicit Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, kRnd);
  }
  Real& operator=(const Real& o) {
    if (this != &o)
      mpfr_set(v_, o.v_, kRnd);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr p() { return v_; }
  mpfr_srcptr p() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double d() const { return mpfr_get_d(v_, kRnd); }

private:
  mpfr_t v_;
};

Real real_of(mpfr_prec_t prec, double x) {
  Real r(prec);
  mpfr_set_d(r.p(), x, kRnd);
  return r;
}

Real real_of(mpfr_prec_t prec, const Integer& z) {
  Real r(prec);
  mpfr_set_z(r.p(), z.get_mpz_t(), kRnd);
  return r;
}

Real real_of(mpfr_prec_t prec, const Rational& q) {
  Real r(prec);
  mpfr_set_q(r.p(), q.get_mpq_t(), kRnd);
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r(a.prec());
  mpfr_add(r.p(), a.p(), b.p(), kRnd);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(a.prec());
  mpfr_sub(r.p(), a.p(), b.p(), kRnd);
  return r;
}

Real operator-(const Real& a) {
  Real r(a.prec());
  mpfr_neg(r.p(), a.p(), kRnd);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(a.prec());
  mpfr_mul(r.p(), a.p(), b.p(), kRnd);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(a.prec());
  mpfr_div(r.p(), a.p(), b.p(), kRnd);
  return r;
}

Real abs_r(const Real& a) {
  Real r(a.prec());
  mpfr_abs(r.p(), a.p(), kRnd);
  return r;
}

Real log_r(const Real& a) {
  Real r(a.prec());
  mpfr_log(r.p(), a.p(), kRnd);
  return r;
}

Real log1p_r(const Real& a) {
  Real r(a.prec());
  mpfr_log1p(r.p(), a.p(), kRnd);
  return r;
}

Real exp_r(const Real& a) {
  Real r(a.prec());
  mpfr_exp(r.p(), a.p(), kRnd);
  return r;
}

Real hypot_r(const Real& a, const Real& b) {
  Real r(a.prec());
  mpfr_hypot(r.p(), a.p(), b.p(), kRnd);
  return r;
}

bool less(const Real& a, const Real& b) { return mpfr_cmp(a.p(), b.p()) < 0; }

Real min_r(const Real& a, const Real& b) { return less(a, b) ? a : b; }
Real max_r(const Real& a, const Real& b) { return less(a, b) ? b : a; }

Real two_pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.p(), kRnd);
  mpfr_mul_ui(r.p(), r.p(), 2, kRnd);
  return r;
}

struct Cplx {
  Real re, im;

  explicit Cplx(mpfr_prec_t prec) : re(prec), im(prec) {}
  Cplx(const Real& r, const Real& i) : re(r), im(i) {}
};

Cplx operator+(const Cplx& a, const Cplx& b) {
  return {a.re + b.re, a.im + b.im};
}

Cplx operator*(const Cplx& a, const Cplx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Cplx operator/(const Cplx& a, const Cplx& b) {
  const Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den,
          (a.im * b.re - a.re * b.im) / den};
}

Cplx scale(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }

Real abs_c(const Cplx& a) { return hypot_r(a.re, a.im); }

Real norm_c(const Cplx& a) { return a.re * a.re + a.im * a.im; }

Cplx one_minus(const Cplx& a) {
  const Real one = real_of(a.re.prec(), 1.0);
  return {one - a.re, -a.im};
}

// e^{2 pi i (s tau + t)} with tau = tau_re + i tau_im.
Cplx q_power(const Real& tau_re, const Real& tau_im, const Real& s,
             const Real& t) {
  const mpfr_prec_t prec = tau_re.prec();
  const Real tp = two_pi(prec);
  const Real mag = exp_r(-(tp * tau_im * s));
  const Real ang = tp * (tau_re * s + t);
  Real sin_a(prec), cos_a(prec);
  mpfr_sin_cos(sin_a.p(), cos_a.p(), ang.p(), kRnd);
  return {mag * cos_a, mag * sin_a};
}

// c[lo] + c[lo+1] q + ... + c[hi] q^{hi-lo} by Horner.
Cplx horner(const std::vector<Integer>& c, int lo, int hi, const Cplx& q) {
  const mpfr_prec_t prec = q.re.prec();
  Cplx acc(prec);
  for (int m = hi; m >= lo; --m) {
    acc = acc * q;
    acc.re = acc.re + real_of(prec, c[static_cast<size_t>(m)]);
  }
  return acc;
}

Real siegel_deviation_hi(const UnitLabel& a, const Real& tau_re,
                         const Real& tau_im, int terms) {
  const mpfr_prec_t prec = tau_re.prec();
  const Real n = real_of(prec, static_cast<double>(a.level));
  const Real a1 = real_of(prec, static_cast<double>(a.k1)) / n;
  const Real a2 = real_of(prec, static_cast<double>(a.k2)) / n;
  Real dev(prec);
  for (int k = 0; k < terms; ++k) {
    const Real kk = real_of(prec, static_cast<double>(k));
    const Real one = real_of(prec, 1.0);
    const Cplx w1 = q_power(tau_re, tau_im, kk + a1, a2);
    const Cplx w2 = q_power(tau_re, tau_im, kk + one - a1, -a2);
    dev = dev + log_r(abs_c(one_minus(w1))) + log_r(abs_c(one_minus(w2)));
    if (mpfr_cmp_d(abs_c(w1).p(), kNegligible) < 0 &&
        mpfr_cmp_d(abs_c(w2).p(), kNegligible) < 0)
      break;
  }
  return dev;
}

Cplx eval_j_hi(const Real& tau_re, const Real& tau_im, int terms) {
  const mpfr_prec_t prec = tau_re.prec();
  const Real zero(prec);
  const Real one = real_of(prec, 1.0);
  const Cplx q = q_power(tau_re, tau_im, one, zero);
  Cplx e4(prec);
  e4.re = one;
  Cplx qn(prec);
  qn.re = one;
  for (int n = 1; n <= terms; ++n) {
    qn = qn * q;
    const Real coeff = real_of(prec, 240.0 * n * n * n);
    e4 = e4 + scale(qn, coeff) / one_minus(qn);
    if (mpfr_cmp_d(abs_c(qn).p(), kNegligible) < 0)
      break;
  }
  Cplx p(prec);
  p.re = one;
  qn = Cplx(prec);
  qn.re = one;
  for (int n = 1; n <= terms; ++n) {
    qn = qn * q;
    const Cplx w = one_minus(qn);
    const Cplx w2 = w * w;
    const Cplx w4 = w2 * w2;
    const Cplx w8 = w4 * w4;
    p = p * (w8 * w8 * w8);
    if (mpfr_cmp_d(abs_c(qn).p(), kNegligible) < 0)
      break;
  }
  return e4 * e4 * e4 / (q * p);
}

} // namespace

HiPrecRefinement refine_worst_witness(const VerificationReport& report,
                                      int precision_bits) {
  if (precision_bits < 64)
    throw std::invalid_argument(
        "refine_worst_witness: precision must be >= 64 bits");
  const auto prec = static_cast<mpfr_prec_t>(precision_bits);
  const SampleWitness& w = report.worst_witness;
  const int terms = report.terms;
  const Real tau_re = real_of(prec, w.re);
  const Real tau_im = real_of(prec, w.im);
  const Real zero(prec);
  const Real one = real_of(prec, 1.0);
  double value = 0.0;

  if (report.check_name == "prop-j") {
    const auto c = j_fourier_coefficients_exact(terms + 1);
    const Cplx q = q_power(tau_re, tau_im, one, zero);
    value = abs_c(horner(c, 1, terms, q)).d();
  } else if (report.check_name == "cor-j") {
    const auto c = j_fourier_coefficients_exact(terms + 1);
    const Cplx q = q_power(tau_re, tau_im, one, zero);
    const Real aq = abs_c(q);
    const Cplx jw = horner(c, 0, terms, q); // j - q^{-1}
    const Cplx qw = q * jw;                 // S - 1
    const Real abs_s = abs_c({one + qw.re, qw.im});
    const Real abs_j = abs_s / aq;
    const Real two = real_of(prec, 2.0);
    const Real s1 = log1p_r((two * qw.re + norm_c(qw)) / (one + abs_s) +
                            real_of(prec, 2400.0) * aq);
    const Real s2 = max_r(log_r(real_of(prec, 3500.0) / abs_j),
                          log_r(real_of(prec, 0.001) / aq));
    Real slack = min_r(s1, s2);
    if (mpfr_cmp_d(abs_j.p(), 3500.0) > 0) {
      const Real s3 =
          min_r(log_r(real_of(prec, 1100.0) / abs_c(jw)),
                min_r(log_r(real_of(prec, 1.5) * abs_s),
                      log_r(two / abs_s)));
      slack = min_r(slack, s3);
    }
    value = slack.d();
  } else if (report.check_name == "siegel-d") {
    if (!w.has_label)
      throw std::invalid_argument(
          "refine_worst_witness: siegel-d witness has no label");
    const UnitLabel a(report.level, w.k1, w.k2);
    const Real dev = siegel_deviation_hi(a, tau_re, tau_im, terms);
    value = (log_r(real_of(prec, static_cast<double>(report.level))) -
             abs_r(dev))
                .d();
  } else if (report.check_name == "siegel-global") {
    if (!w.has_label)
      throw std::invalid_argument(
          "refine_worst_witness: siegel-global witness has no label");
    const long level = report.level;
    const auto [tau_d, gamma] = reduce_to_D({w.re, w.im});
    (void)tau_d;
    const Sl2Word gi = gamma.inverse();
    const auto entry = [&](std::int64_t v) {
      return UnitLabel::mod(static_cast<long>(v % level), level);
    };
    const ResidueMatrix m(level, entry(gi.a), entry(gi.b), entry(gi.c),
                          entry(gi.d));
    const UnitLabel b = act_label(UnitLabel(level, w.k1, w.k2), m);
    // tau' = gamma(tau), recomputed from the exact integer matrix.
    const Cplx tau{tau_re, tau_im};
    const Cplx num{real_of(prec, static_cast<double>(gamma.a)) * tau.re +
                       real_of(prec, static_cast<double>(gamma.b)),
                   real_of(prec, static_cast<double>(gamma.a)) * tau.im};
    const Cplx den{real_of(prec, static_cast<double>(gamma.c)) * tau.re +
                       real_of(prec, static_cast<double>(gamma.d)),
                   real_of(prec, static_cast<double>(gamma.c)) * tau.im};
    const Cplx tp = num / den;
    const Real ell_b = real_of(prec, ell(b));
    const Real log_q = -(two_pi(prec) * tp.im);
    const Real left =
        abs_r(ell_b * log_q + siegel_deviation_hi(b, tp.re, tp.im, terms));
    const Real right =
        log_r(abs_c(eval_j_hi(tp.re, tp.im, terms)) +
              real_of(prec, 2400.0)) /
            real_of(prec, 12.0) +
        log_r(real_of(prec, static_cast<double>(level)));
    value = (right - left).d();
  } else {
    throw std::invalid_argument("refine_worst_witness: unsupported check \"" +
                                report.check_name + "\"");
  }
  return {precision_bits, value};
}

} // namespace rungekit
