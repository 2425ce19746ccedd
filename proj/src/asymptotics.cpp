#include "singtrace/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "singtrace/errors.hpp"

namespace singtrace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> evaluate_all(const PointEvaluator& f, const std::vector<double>& us) {
  std::vector<double> values(us.size());
  parallel_for(us.size(), [&](std::size_t i) { values[i] = f(us[i]); });
  return values;
}

std::string probe_dump(const char* name, const LimitEstimate& e) {
  std::ostringstream os;
  os.precision(12);
  os << name << " probes:";
  for (const Probe& p : e.probes) os << " (u=" << p.u << ", " << p.value << ")";
  return os.str();
}

}  // namespace

LimitEstimate window_envelope(const PointEvaluator& f,
                              const std::vector<std::pair<double, double>>& windows,
                              const std::vector<double>& breakpoints, std::size_t density) {
  if (windows.empty()) throw std::domain_error("window_envelope: empty window list");
  if (density < 2) throw std::domain_error("window_envelope: density must be >= 2");
  LimitEstimate est;
  for (const auto& [lo, hi] : windows) {
    if (!(hi > lo)) throw std::domain_error("window_envelope: window with hi <= lo");
    std::vector<double> us;
    us.reserve(density + 8);
    for (std::size_t i = 0; i < density; ++i)
      us.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(density - 1));
    for (double b : breakpoints)
      if (b >= lo && b <= hi) us.push_back(b);
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    const auto values = evaluate_all(f, us);
    WindowStat w{lo, hi, kInf, -kInf};
    for (std::size_t i = 0; i < us.size(); ++i) {
      if (!std::isfinite(values[i]))
        throw numeric_error("window_envelope: non-finite value at u = " + std::to_string(us[i]));
      w.inf = std::min(w.inf, values[i]);
      w.sup = std::max(w.sup, values[i]);
      est.probes.push_back({us[i], values[i]});
    }
    est.windows.push_back(w);
  }
  est.liminf_est = kInf;
  est.limsup_est = -kInf;
  const std::size_t first = est.windows.size() > 3 ? est.windows.size() - 3 : 0;
  for (std::size_t i = first; i < est.windows.size(); ++i) {
    est.liminf_est = std::min(est.liminf_est, est.windows[i].inf);
    est.limsup_est = std::max(est.limsup_est, est.windows[i].sup);
  }
  return est;
}

LimitEstimate subsequence_limit(const PointEvaluator& f, const std::vector<double>& u_sequence,
                                double tol) {
  if (u_sequence.size() < 4)
    throw std::domain_error("subsequence_limit: need at least 4 probe scales");
  for (std::size_t i = 1; i < u_sequence.size(); ++i)
    if (!(u_sequence[i] > u_sequence[i - 1]))
      throw std::domain_error("subsequence_limit: probe scales must increase");
  LimitEstimate est;
  est.tolerance = tol;
  const auto values = evaluate_all(f, u_sequence);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw numeric_error("subsequence_limit: non-finite value at u = " +
                          std::to_string(u_sequence[i]));
    est.probes.push_back({u_sequence[i], values[i]});
  }
  const std::size_t n = values.size();
  est.liminf_est = std::min({values[n - 3], values[n - 2], values[n - 1]});
  est.limsup_est = std::max({values[n - 3], values[n - 2], values[n - 1]});
  est.converged = est.limsup_est - est.liminf_est <= tol;

  // Aitken on the last three values, accepted when the last three
  // differences have one sign and a stable ratio below 1.
  const double d1 = values[n - 3] - values[n - 4];
  const double d2 = values[n - 2] - values[n - 3];
  const double d3 = values[n - 1] - values[n - 2];
  double extrapolated = values[n - 1];
  if (d2 != 0.0 && d3 != 0.0 && d1 != 0.0) {
    const double r1 = d2 / d1;
    const double r2 = d3 / d2;
    if (r1 > 0.0 && r2 > 0.0 && r1 < 0.95 && r2 < 0.95 && std::abs(r2 - r1) < 0.25 * r1) {
      const double denom = d3 - d2;
      if (denom != 0.0) extrapolated = values[n - 1] - d3 * d3 / denom;
    }
  }
  est.extrapolated = extrapolated;
  return est;
}

std::vector<double> counterexample_probe_scales(int k_min, int k_max) {
  std::vector<double> us;
  for (int k = k_min; k <= k_max; ++k) us.push_back(std::exp(static_cast<double>(k)) + 0.5 * k);
  return us;
}

std::vector<double> counterexample_breakpoints(double lo, double hi) {
  std::vector<double> out;
  for (int n = 1; n <= 700; ++n) {
    const double e = std::exp(static_cast<double>(n));
    if (e > hi) break;
    if (e >= lo) out.push_back(e);
    if (e + n >= lo && e + n <= hi) out.push_back(e + n);
  }
  return out;
}

GapReport gap_report(double q, int k_min, int k_max) {
  if (!(q > 0.0)) throw std::domain_error("gap_report: q must be positive");
  if (k_max - k_min + 1 < 4)
    throw std::domain_error("gap_report: need at least 4 probe scales (k_max - k_min >= 3)");
  const SpectralModel model = SpectralModel::counterexample();
  const auto us = counterexample_probe_scales(k_min, k_max);
  GapReport r;
  r.q = q;
  r.dixmier = subsequence_limit([&](double u) { return dixmier_at(model, u); }, us, kGapLimitTol);
  r.tail = subsequence_limit([&](double u) { return tail_at(model, u); }, us, kGapLimitTol);
  if (!r.dixmier.converged || !r.tail.converged)
    throw numeric_error("gap_report: subsequence did not converge; " +
                        probe_dump("dixmier", r.dixmier) + "; " + probe_dump("tail", r.tail));
  r.dixmier_limit = *r.dixmier.extrapolated;
  r.xi_over_gamma_limit = *r.tail.extrapolated;
  r.gamma_factor = weight_integral(TestFunction::heat_exp(q));
  r.gamma_direct = std::tgamma(1.0 + 1.0 / q);
  if (!(std::abs(r.gamma_factor - r.gamma_direct) <= 1e-8))
    throw numeric_error("gap_report: weight integral " + std::to_string(r.gamma_factor) +
                        " disagrees with Gamma(1 + 1/q) = " + std::to_string(r.gamma_direct));
  r.gap = r.gamma_factor * (r.xi_over_gamma_limit - r.dixmier_limit);
  return r;
}

}  // namespace singtrace
