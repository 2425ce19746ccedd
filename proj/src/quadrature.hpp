#pragma once

// Adaptive Simpson quadrature. Integrands are sampled at interior points
// only: a sample that would land on an interval endpoint is moved inward by
// 1e-12 of the interval width, so integrable endpoint singularities and
// one-sided discontinuities at breakpoints are never evaluated directly.

#include <algorithm>
#include <cmath>
#include <vector>

namespace singtrace::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // sum of the local error estimates
  std::size_t evaluations = 0;
};

namespace detail {

template <class F>
struct Simpson {
  F& f;
  double a0, b0;
  std::size_t evals = 0;
  double err = 0.0;
  int max_depth;

  double sample(double x) {
    ++evals;
    const double nudge = 1e-12 * (b0 - a0);
    if (x <= a0) x = a0 + nudge;
    if (x >= b0) x = b0 - nudge;
    return f(x);
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = sample(lm);
    const double frm = sample(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth >= max_depth || std::abs(diff) <= 15.0 * tol ||
        std::abs(diff) <= 1e-15 * std::abs(left + right)) {
      err += std::abs(diff) / 15.0;
      return left + right + diff / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace detail

// Integral of f over [a, b] with absolute tolerance tol. The interval is
// first cut into `initial` equal panels so that narrow features are seen.
template <class F>
Result simpson(F&& f, double a, double b, double tol, int initial = 8, int max_depth = 48) {
  Result r;
  if (!(b > a)) return r;
  detail::Simpson<std::remove_reference_t<F>> s{f, a, b, 0, 0.0, max_depth};
  const double h = (b - a) / initial;
  double fa = s.sample(a);
  for (int i = 0; i < initial; ++i) {
    const double lo = a + h * i;
    const double hi = i + 1 == initial ? b : a + h * (i + 1);
    const double fm = s.sample(0.5 * (lo + hi));
    const double fb = s.sample(hi);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    r.value += s.recurse(lo, hi, fa, fm, fb, whole, tol / initial, 0);
    fa = fb;
  }
  r.error = s.err;
  r.evaluations = s.evals;
  return r;
}

// Integral over [a, b] split at the given breakpoints (those outside (a, b)
// are ignored); each piece gets a share of tol proportional to its width.
template <class F>
Result simpson_split(F&& f, double a, double b, std::vector<double> breaks, double tol) {
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                              [&](double x) { return !(x > a && x < b); }),
               breaks.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  breaks.insert(breaks.begin(), a);
  breaks.push_back(b);
  Result total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i];
    const double hi = breaks[i + 1];
    Result piece = simpson(f, lo, hi, tol * (hi - lo) / (b - a));
    total.value += piece.value;
    total.error += piece.error;
    total.evaluations += piece.evaluations;
  }
  return total;
}

}  // namespace singtrace::quad
