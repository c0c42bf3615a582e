#pragma once

#include "rungekit/analytic.hpp"

namespace rungekit {

// A high-precision re-evaluation of a report's worst witness.
struct HiPrecRefinement {
  int precision_bits = 0;
  double worst_value = 0.0;
};

// Recomputes the check's metric at report.worst_witness with MPFR software
// floats (default 160-bit mantissa, well past the spec'd 64 fractional
// bits), as a cross-check that the double-precision sweep value is not a
// rounding artifact.  Supports the four check names emitted by the analytic
// module; anything else is rejected.
HiPrecRefinement refine_worst_witness(const VerificationReport& report,
                                      int precision_bits = 160);

} // namespace rungekit
