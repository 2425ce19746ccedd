#include "singtrace/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "singtrace/special.hpp"

namespace singtrace::cx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxIndex = 700;  // e^k overflows past ~709

// log L_k - log R_k = -1 - e^{k-1}(e - 1)
double log_left_ratio(int k) {
  if (k == 1) return -kInf;
  return -1.0 - std::expm1(1.0) * std::exp(k - 1.0);
}

// log L_k - e^k = k - 1 - e^{k-1}(e - 1), the log of exp(-e^k) L_k.
double log_left_mass(int k) {
  if (k == 1) return -kInf;
  return k - 1.0 - std::expm1(1.0) * std::exp(k - 1.0);
}

const std::vector<double>& cumulative_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kMaxIndex + 1, 0.0);
    double s = 0.0;
    for (int k = 1; k <= kMaxIndex; ++k) {
      s += plateau_mass(k);
      t[k] = s;
    }
    return t;
  }();
  return table;
}

}  // namespace

double log_right(int k) { return k + std::exp(static_cast<double>(k)); }
double log_left(int k) { return k == 1 ? -kInf : log_right(k - 1); }
double log_value(int k) { return -std::exp(static_cast<double>(k)); }

double log_length(int k) {
  return log_right(k) + std::log1p(-std::exp(log_left_ratio(k)));
}

double plateau_mass(int k) {
  if (k < 1) throw std::domain_error("plateau index must be >= 1");
  return std::exp(static_cast<double>(k)) * -std::expm1(log_left_ratio(k));
}

double cumulative_mass(int k) {
  if (k <= 0) return 0.0;
  if (k > kMaxIndex) return kInf;
  return cumulative_table()[k];
}

int plateau_index(double u) {
  if (!(u >= log_right(1))) return 1;  // also catches -inf
  if (u >= log_right(kMaxIndex)) return kMaxIndex + 1;
  int k = std::max(1, static_cast<int>(std::floor(std::log(u))) - 1);
  while (k > 1 && log_right(k - 1) > u) --k;
  while (log_right(k) <= u) ++k;
  return k;
}

double partial_integral(double u) {
  if (u == -kInf) return 0.0;
  const int k = plateau_index(u);
  const double ek = std::exp(static_cast<double>(k));
  return cumulative_mass(k - 1) + std::exp(u - ek) - std::exp(log_left_mass(k));
}

double tail_trace(double u) {
  if (!(u > 1.0)) return 0.0;
  int K = static_cast<int>(std::floor(std::log(u)));
  if (std::exp(static_cast<double>(K)) >= u) --K;
  while (std::exp(K + 1.0) < u) ++K;
  if (K < 1) return 0.0;
  const double eK = std::exp(static_cast<double>(K));
  return std::max(0.0, cumulative_mass(K) - std::exp(K + (eK - u)));
}

double log_distribution(double log_s) {
  // {x > s} is the union of plateaus with e^k < -log s.
  const double a = -log_s;
  if (!(a > std::exp(1.0))) return -kInf;
  int K = static_cast<int>(std::floor(std::log(a)));
  if (std::exp(static_cast<double>(K)) >= a) --K;
  while (std::exp(K + 1.0) < a) ++K;
  return log_right(K);
}

double heat(double u, double q) {
  // term_k = exp(log|P_k| - u - exp(q (e^k - u))). Where q (u - e^k) > 40 the
  // damping factor is 1 in double precision and the lengths telescope to R_K.
  int k = 1;
  double s = 0.0;
  const double full = u - 40.0 / q;
  if (full > std::exp(1.0)) {
    int K = static_cast<int>(std::floor(std::log(full)));
    while (K >= 1 && std::exp(static_cast<double>(K)) >= full) --K;
    while (std::exp(K + 1.0) < full) ++K;
    s = std::exp(log_right(K) - u);
    k = K + 1;
  }
  for (; k <= kMaxIndex; ++k) {
    const double gap = q * (std::exp(static_cast<double>(k)) - u);
    if (gap > 700.0) break;
    const double e = log_length(k) - u - std::exp(gap);
    if (e > -745.0) s += std::exp(e);
  }
  return s;
}

double zeta(double u) {
  // term_k = exp(log|P_k| - u - (1 + e^-u) e^k); the e^k parts cancel.
  double s = 0.0;
  const int k_lo = std::max(1, static_cast<int>(std::floor(u)) - 50);
  for (int k = k_lo;; ++k) {
    const double x = k - u;
    if (x > 8.0) break;
    const double lam = std::log1p(-std::exp(log_left_ratio(k)));
    s += std::exp(x + lam - std::exp(x));
  }
  return s;
}

StepFunction truncation(int count) {
  if (count < 1 || count > kMaxIndex) throw std::domain_error("truncation: bad plateau count");
  std::vector<Plateau> ps;
  for (int k = 1; k <= count; ++k) ps.push_back({log_right(k), log_value(k)});
  return StepFunction(std::move(ps));
}

MembershipReport membership_report(int k_probe_max) {
  if (k_probe_max < 2) throw std::domain_error("membership_report: need k_probe_max >= 2");
  MembershipReport r;
  const double e = std::exp(1.0);
  r.ratio_bound = e * e / (e - 1.0);
  for (int k = 1; k <= k_probe_max; ++k) {
    const double u = log_right(k);
    const double ratio = partial_integral(u) / log1p_exp(u);
    r.bound_probes.push_back({k, ratio});
    r.max_ratio = std::max(r.max_ratio, ratio);
    // s_k = R_k - 1 lies on plateau k, so log(s_k mu(s_k)) = log(R_k - 1) - e^k.
    r.witnesses.push_back({k, k + std::log1p(-std::exp(-u))});
  }
  r.witnesses_increasing = true;
  for (std::size_t i = 1; i < r.witnesses.size(); ++i)
    if (!(r.witnesses[i].log_product > r.witnesses[i - 1].log_product))
      r.witnesses_increasing = false;
  return r;
}

}  // namespace singtrace::cx
