#pragma once

#include <optional>
#include <vector>

namespace singtrace {

struct Probe {
  double u;
  double value;
};

struct WindowStat {
  double u_lo;
  double u_hi;
  double inf;
  double sup;
};

// Finite-horizon stand-in for the value of a generalised limit.
struct LimitEstimate {
  std::vector<Probe> probes;
  std::vector<WindowStat> windows;  // filled by window_envelope only
  double liminf_est = 0.0;
  double limsup_est = 0.0;
  bool converged = false;
  std::optional<double> extrapolated;
  double tolerance = 0.0;
};

}  // namespace singtrace
