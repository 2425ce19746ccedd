#pragma once

// Asymptotic functionals of a spectral model sampled as curves over a
// logarithmic grid. Every curve has a matching point evaluator taking
// u = log t.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "singtrace/grid.hpp"
#include "singtrace/limits.hpp"
#include "singtrace/stepfn.hpp"

namespace singtrace {

class TestFunction {
 public:
  enum class Kind { HeatExp, SquareCut, TailIndicator, PiecewiseLinear };

  static TestFunction heat_exp(double q);  // exp(-s^-q)
  static TestFunction square_cut();        // s^2 on [0, 1], 0 after
  static TestFunction tail_indicator();    // 1 for s > 1
  // Linear interpolation through (s_i, v_i), s_i > 0 increasing; zero on
  // [0, s_0) and constant v_last after the last node.
  static TestFunction piecewise(std::vector<std::pair<double, double>> nodes);
  // "heatexp:<q>", "squarecut" or "tailind".
  static TestFunction parse(const std::string& spec);

  double operator()(double s) const;

  Kind kind() const { return kind_; }
  double q() const { return q_; }
  const std::vector<std::pair<double, double>>& nodes() const { return nodes_; }
  std::vector<double> breakpoints() const;
  std::string descriptor() const;

  // Derived from 1000 log-spaced samples on [1e-6, 1e6].
  bool bounded() const { return bounded_; }
  bool vanishing_at_zero() const { return vanishing_; }
  bool c2_at_zero() const { return c2_; }
  double c2_constant() const { return c2_constant_; }  // max |f(s)| / min(1, s^2)

 private:
  TestFunction(Kind kind, double q, std::vector<std::pair<double, double>> nodes);
  Kind kind_;
  double q_ = 0.0;
  std::vector<std::pair<double, double>> nodes_;
  bool bounded_ = false;
  bool vanishing_ = false;
  bool c2_ = false;
  double c2_constant_ = 0.0;
};

struct Curve {
  LogGrid grid;
  std::vector<double> values;
  std::string functional;
  std::map<std::string, std::string> params;
  std::map<std::string, double> metadata;
};

using PointEvaluator = std::function<double(double u)>;

// Point evaluators.
double zeta_at(const SpectralModel& model, double u);
double heat_at(const SpectralModel& model, double q, double u);
double gheat_at(const SpectralModel& model, const TestFunction& f, double u);
double dixmier_at(const SpectralModel& model, double u);
double tail_at(const SpectralModel& model, double u);
double lidskii_at(const SpectralModel& model, double u);

// Curves.
Curve zeta_curve(const SpectralModel& model, const LogGrid& grid);
Curve heat_curve(const SpectralModel& model, double q, const LogGrid& grid);
Curve generalized_heat_curve(const SpectralModel& model, const TestFunction& f,
                             const LogGrid& grid);
Curve dixmier_curve(const SpectralModel& model, const LogGrid& grid);
Curve tail_curve(const SpectralModel& model, const LogGrid& grid);
Curve lidskii_curve(const SpectralModel& model, const LogGrid& grid);

// Samples an arbitrary evaluator on the grid (in parallel).
Curve sample_curve(const PointEvaluator& f, const LogGrid& grid, std::string functional);

// Running mean (1/u) int_0^u x(e^v) dv by the trapezoidal rule, restricted
// to u >= max(u_min, 0.5). A grid starting above 0 is extended to the left
// by its first value.
Curve cesaro(const Curve& c);

struct CesaroSummary {
  double max = 0.0;
  double min = 0.0;
  double u_at_max = 0.0;
  double last = 0.0;
  double extension = 0.0;
  std::size_t points = 0;
  bool coarse = false;
};

// cesaro() of the sampled evaluator without storing the curve; returns the
// extremes over output points with u >= u_out_min.
CesaroSummary cesaro_summary(const PointEvaluator& f, const LogGrid& grid, double u_out_min);

// int_0^inf f(s) s^-2 ds
double weight_integral(const TestFunction& f);

struct Beta {
  enum class Kind { Linear, Distribution };
  Kind kind = Kind::Linear;
  double slope = 1.0;                 // Linear: beta(u) = slope * u
  const SpectralModel* model = nullptr;  // Distribution: beta(u) = d_A(1/u)
};

// (t -> h(t)/t, t -> Gamma(1 + 1/q) beta(t)/t) with h(t) = int e^{-(u/t)^q} d beta(u).
std::pair<Curve, Curve> karamata_compare(const Beta& beta, double q, const LogGrid& grid);

// Window averages (1/k) int_{e^k}^{e^k + k} x(e^v) dv.
struct PiProfile {
  enum class Kind { Constant, IntervalUnion, Function };
  Kind kind = Kind::Constant;
  double constant = 0.0;
  // IntervalUnion: indicator of the union over j of [e^j, e^j + width(j)) in u.
  std::function<double(int j)> width;
  PointEvaluator function;

  static PiProfile log_width_indicator();            // width(j) = j
  static PiProfile dilated_indicator(double s);  // width(j) = log s
};

LimitEstimate pi_functional(const PiProfile& x, int k_min, int k_max, double tol = 0.02);

}  // namespace singtrace
