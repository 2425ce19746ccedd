#pragma once

#include <utility>
#include <vector>

#include "singtrace/functionals.hpp"
#include "singtrace/limits.hpp"

namespace singtrace {

// Samples each window [lo, hi] at `density` uniform points plus every
// breakpoint inside it. liminf_est / limsup_est are the min / max of the
// window infima / suprema over the last three windows.
LimitEstimate window_envelope(const PointEvaluator& f,
                              const std::vector<std::pair<double, double>>& windows,
                              const std::vector<double>& breakpoints = {},
                              std::size_t density = 100);

// Evaluates f along an increasing u sequence (length >= 4). converged iff the
// last three values span at most tol; extrapolated is an Aitken delta-squared
// estimate when the last differences shrink geometrically, else the last value.
LimitEstimate subsequence_limit(const PointEvaluator& f, const std::vector<double>& u_sequence,
                                double tol);

// u_k = e^k + k/2
std::vector<double> counterexample_probe_scales(int k_min, int k_max);

// Breakpoints e^n and n + e^n of the counterexample curves within [lo, hi].
std::vector<double> counterexample_breakpoints(double lo, double hi);

struct GapReport {
  double q = 0.0;
  double dixmier_limit = 0.0;
  double xi_over_gamma_limit = 0.0;
  double gamma_factor = 0.0;  // weight_integral(heatexp:q)
  double gamma_direct = 0.0;  // std::tgamma(1 + 1/q)
  double gap = 0.0;           // gamma_factor * (xi_over_gamma_limit - dixmier_limit)
  LimitEstimate dixmier;
  LimitEstimate tail;
};

inline constexpr double kGapLimitTol = 1e-4;

// Throws numeric_error (with the probe table in the message) when either
// subsequence fails to converge or the Gamma cross-check misses 1e-8.
GapReport gap_report(double q, int k_min = 14, int k_max = 20);

}  // namespace singtrace
