#pragma once

// Closed forms for the singular-value function
//
//   x = sup_{k >= 1} exp(-e^k) 1_[0, exp(k + e^k)]
//
// Plateau k carries the value exp(-e^k) on [L_k, R_k) with R_k = exp(k + e^k),
// L_1 = 0 and L_k = R_{k-1} for k >= 2. All arguments are u = log t, and every
// exponent is simplified symbolically before exponentiation (for example
// exp(-e^k) * R_k = e^k), so nothing overflows for the probe scales in use.

#include <vector>

#include "singtrace/stepfn.hpp"

namespace singtrace::cx {

// The k with log L_k <= u < log R_k (k = 1 below the first boundary).
int plateau_index(double u);

double log_right(int k);  // k + e^k
double log_left(int k);   // -inf for k = 1
double log_value(int k);  // -e^k
double log_length(int k);

// Mass exp(-e^k) (R_k - L_k) of plateau k.
double plateau_mass(int k);
// Sum of the masses of plateaus 1..k.
double cumulative_mass(int k);

// int_0^{e^u} x(s) ds
double partial_integral(double u);

// int_{x > e^-u} (x(s) - e^-u) ds. With K = max{n : e^n < u}, this is
// cumulative_mass(K) - exp(K + e^K - u).
double tail_trace(double u);

// log |{x > e^{log_s}}|; -inf for an empty level set.
double log_distribution(double log_s);

// (1/t) sum_k |plateau_k| exp(-(t x_k)^-q) at t = e^u.
double heat(double u, double q);

// (1/t) tau(x^{1 + 1/t}) at t = e^u.
double zeta(double u);

// Plateaus 1..count as an explicit step function.
StepFunction truncation(int count);

struct MembershipProbe {
  int k;
  double ratio;  // partial_integral / log(1 + t) at t = R_k
};

struct WitnessProbe {
  int k;
  double log_product;  // log(s_k mu(s_k)) with s_k = R_k - 1
};

struct MembershipReport {
  std::vector<MembershipProbe> bound_probes;
  double max_ratio = 0.0;
  double ratio_bound = 0.0;  // e^2/(e-1)
  std::vector<WitnessProbe> witnesses;  // s mu(s) >= e^{k-1}: not in L_{1,inf}
  bool witnesses_increasing = false;
};

MembershipReport membership_report(int k_probe_max = 20);

}  // namespace singtrace::cx
