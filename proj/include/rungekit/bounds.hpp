#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rungekit/exactmath.hpp"

namespace rungekit {

// The place-dependent constant rho_v controlling how far log|u_a| may drift
// from its cuspidal leading term.
enum class PlaceKind { kInfinite, kFiniteCoprime, kFiniteDividing };

// 12 N log N | 0 | 12 N log p / (p-1); p is only read in the dividing case
// and must then be a prime divisor of N.
double rho(long n, PlaceKind kind, long p = 0);

// Sum of d_v rho_v over the archimedean places: exactly 12 d N log N.
double rho_aggregate_infinite(long n, long d);
// Sum over the finite places: 12 d N sum_{p | N} log p/(p-1), which the
// archimedean aggregate also bounds from above.
double rho_aggregate_finite(long n, long d);

// log|j(P)| <= 12 |G| N^2 log 3N.
double bound_theorem_1_1(long n, long g_order);

// h(P) <= 36 s^(s/2+1) (N^2 |G| / 2)^s log 2N, or with 36 -> 24 and
// 2N -> 3N when only archimedean places are allowed.
double bound_theorem_1_2(long n, long g_order, long s, bool infinite_only);

// h(P) <= 36 B |G'| N^2 log 2N (24 ... log 3N when infinite_only).
double bound_refined(long n, long gprime_order, const Integer& budget_b,
                     bool infinite_only);

// Exact integer core of "refined bound at the Hadamard budget equals
// Theorem 1.2": (G' N^2)^(s-1) * (G' N^2) == (N^2 G / 2)^s with G' = G/2.
// The remaining factor 36 s^(s/2+1) log 2N is shared verbatim.  g_order must
// be even.
bool refined_matches_theorem_1_2(long n, long g_order, long s);

// The three sigma configurations of the split-Cartan proof, in the paper's
// order: sigma avoiding c_0, sigma avoiding c_inf, sigma inside the two
// rational cusps.
enum class SplitCartanCase { k64, k65, k66 };

struct SplitCartanClassification {
  SplitCartanCase tag;
  std::string unit; // the hand-built unit used in that case
  long budget_b;    // its budget: 1, 1, 2
};

// sigma as indices into the canonical X_split(p) orbit order
// {0: c_inf, 1: c_0, 2: the mixed-orbit}; |sigma| <= 2, nonempty.  A sigma
// fitting several inclusions gets the first case in the paper's order.
SplitCartanClassification split_cartan_case(const std::vector<long>& sigma);

// h(P) <= 24 p log 3p in the single-rational cases, 72 log 3p in the
// two-rational case; p must be an odd prime.
double bound_split_cartan(long p, SplitCartanCase c);

// h(P) <= 110 p log p for integral points on X_0^+(p^3).
double bound_x0_plus(long p);

// |h(j_E) - h(j_E')| <= 13 log(1 + h') + 7 log delta + 100 across a
// delta-isogeny.
double isogeny_height_gap(double h_prime, const Integer& delta);

// The Theorem 7.3 derivation chain: the split-Cartan bound pushed through
// the isogeny gap (delta = p) stays below 110 p log p, with the left side
// rounded up and the right side rounded down.
bool x0_plus_chain_holds(long p);

// A named, reproducible evaluation of one bound, with the P-independent
// Xi-coefficients of the section-5 proof attached where they exist.
struct BoundReport {
  std::string theorem_tag;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  std::vector<std::pair<std::string, double>> breakdown;
};

BoundReport report_rho(long n, PlaceKind kind, long p = 0);
BoundReport report_theorem_1_1(long n, long g_order);
BoundReport report_theorem_1_2(long n, long g_order, long s, bool infinite_only);
BoundReport report_refined(long n, long gprime_order, const Integer& budget_b,
                           bool infinite_only);
BoundReport report_split_cartan(long p, SplitCartanCase c);
BoundReport report_x0_plus(long p);
BoundReport report_isogeny_gap(double h_prime, const Integer& delta);

} // namespace rungekit
