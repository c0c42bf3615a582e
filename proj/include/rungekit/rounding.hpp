#pragma once

#include <cmath>
#include <limits>

#include <gmpxx.h>

namespace rungekit {

// Directed-rounding helpers for the bound evaluators.  IEEE +, *, /, sqrt
// are correctly rounded, so a single ulp step past the rounded result
// brackets the exact value; libm's log is only faithful, so it gets two
// steps.  Every call site keeps operands nonnegative, which is what makes
// stepping the result (rather than the operands) sufficient.

inline double step_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}
inline double step_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

inline double add_up(double a, double b) { return step_up(a + b); }
inline double mul_up(double a, double b) { return step_up(a * b); }
inline double div_up(double a, double b) { return step_up(a / b); }
inline double sqrt_up(double x) { return step_up(std::sqrt(x)); }
inline double log_up(double x) { return step_up(step_up(std::log(x))); }

inline double add_down(double a, double b) { return step_down(a + b); }
inline double mul_down(double a, double b) { return step_down(a * b); }
inline double div_down(double a, double b) { return step_down(a / b); }
inline double log_down(double x) { return step_down(step_down(std::log(x))); }

// mpz_get_d truncates toward zero, so for v >= 0 one upward step dominates
// the exact value and the raw conversion is already a lower bound.
inline double to_double_up(const mpz_class& v) { return step_up(v.get_d()); }
inline double to_double_down(const mpz_class& v) { return step_down(v.get_d()); }

} // namespace rungekit
