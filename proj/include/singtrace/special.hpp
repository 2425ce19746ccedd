#pragma once

#include <cmath>
#include <cstdint>

namespace singtrace {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// log(1 + e^u) without overflow.
inline double log1p_exp(double u) {
  if (u > 35.0) return u + std::exp(-u);
  return std::log1p(std::exp(u));
}

// log(e^a - e^b) for a >= b.
inline double log_diff_exp(double a, double b) {
  if (b == -INFINITY) return a;
  return a + std::log(-std::expm1(b - a));
}

// H_n for a nonnegative integer-valued n. Direct summation below 64,
// asymptotic expansion above (absolute error below 1e-15).
double harmonic_number(double n);

// H_m summed naively in order n = 1..m.
double harmonic_sum_naive(std::uint64_t m);

// sum_{n >= m} n^-2 for integer m >= 1.
double inverse_square_tail(std::uint64_t m);

struct ZetaEvaluation {
  double value;
  double correction;  // size of the Euler-Maclaurin tail beyond the direct terms
};

// Riemann zeta(sigma), sigma > 1, by Euler-Maclaurin summation.
ZetaEvaluation riemann_zeta(double sigma);

// eps * zeta(1 + eps) for eps > 0, accurate also when 1 + eps rounds to 1.
ZetaEvaluation scaled_zeta_near_one(double eps);

}  // namespace singtrace
