#include "singtrace/functionals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "parallel.hpp"
#include "quadrature.hpp"
#include "singtrace/counterexample.hpp"
#include "singtrace/errors.hpp"
#include "singtrace/special.hpp"

namespace singtrace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Heat sums stop where the exponent (t mu)^-q passes this value.
constexpr double kHeatCutoff = 46.0;

std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Relative-tolerance wrapper: a coarse pass fixes the scale, then the
// adaptive pass runs with tol = rel * scale.
template <class F>
double integrate_rel(F&& f, double a, double b, const std::vector<double>& breaks, double rel) {
  const quad::Result coarse = quad::simpson(f, a, b, kInf, 64, 0);
  const double scale = std::max(std::abs(coarse.value), 1e-300);
  return quad::simpson_split(f, a, b, breaks, rel * scale).value;
}

// int_{x0}^inf exp(-y^q) dy = Gamma(1/q, x0^q) / q
double stretched_exp_tail(double x0, double q) {
  return boost::math::tgamma(1.0 / q, std::pow(x0, q)) / q;
}

// (1/t) sum_n exp(-(n/t)^q), harmonic spectrum. Direct terms below N0, then
// Euler-Maclaurin with the integral in closed form.
double harmonic_heat(double q, double u, double* correction = nullptr) {
  const int n0 = 64 * std::max(1, static_cast<int>(std::ceil(q / 2.0)));
  const double inv_t = std::exp(-u);
  auto g = [&](double n) { return std::exp(-std::exp(q * (std::log(n) - u))); };
  double direct = 0.0;
  for (int n = n0 - 1; n >= 1; --n) direct += g(n);
  const double x = n0;
  const double z = std::exp(q * (std::log(x) - u));  // (x/t)^q
  const double gx = std::exp(-z);
  const double z1 = q * z / x;
  const double z2 = q * (q - 1.0) * z / (x * x);
  const double z3 = q * (q - 1.0) * (q - 2.0) * z / (x * x * x);
  const double g1 = -z1 * gx;
  const double g3 = (-z1 * z1 * z1 + 3.0 * z1 * z2 - z3) * gx;
  const double em = 0.5 * gx - g1 / 12.0 + g3 / 720.0;
  if (correction) *correction = em * inv_t;
  const double integral = stretched_exp_tail(x * inv_t, q);  // (1/t) int_{N0}^inf g
  return (direct + em) * inv_t + integral;
}

struct PowerGeometry {
  double a;     // log(t c)
  double y_mid; // where t mu(e^y - 1) = 1
};

PowerGeometry power_geometry(const PowerTail& m, double u) {
  const double a = u + std::log(m.c);
  return {a, std::max(0.0, a / m.p)};
}

// (1/t) int_0^inf exp(-(t mu(s))^-q) ds with s = e^y - 1.
double power_heat(const PowerTail& m, double q, double u) {
  const PowerGeometry g = power_geometry(m, u);
  const double y_hi = g.y_mid + (std::log(kHeatCutoff) + 2.0) / (q * m.p);
  auto f = [&](double y) { return std::exp(y - u - std::exp(q * (m.p * y - g.a))); };
  return integrate_rel(f, 0.0, y_hi, {g.y_mid}, 1e-13);
}

// (1/t) int_0^inf f(t mu(s)) ds for a test function with f(x) <= C x^2 near 0.
double power_gheat(const PowerTail& m, const TestFunction& tf, double u) {
  if (!(m.p > 0.5)) throw std::domain_error("generalized heat: power tail needs p > 1/2");
  const PowerGeometry g = power_geometry(m, u);
  const double y_hi = g.y_mid + (40.0 + std::log1p(tf.c2_constant())) / (2.0 * m.p - 1.0);
  std::vector<double> breaks{g.y_mid};
  for (double s : tf.breakpoints()) breaks.push_back((g.a - std::log(s)) / m.p);
  auto f = [&](double y) { return std::exp(y - u) * tf(std::exp(g.a - m.p * y)); };
  return integrate_rel(f, 0.0, y_hi, breaks, 1e-13);
}

double steps_zeta(const StepFunction& f, double u) {
  const double sigma = 1.0 + std::exp(-u);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    s += std::exp(sigma * f.plateaus()[i].w + f.log_length(i) - u);
  return s;
}

double steps_heat(const StepFunction& f, double q, double u) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double e = f.log_length(i) - u - std::exp(-q * (u + f.plateaus()[i].w));
    if (e > -745.0) s += std::exp(e);
  }
  return s;
}

double steps_gheat(const StepFunction& f, const TestFunction& tf, double u) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    s += std::exp(f.log_length(i) - u) * tf(std::exp(u + f.plateaus()[i].w));
  return s;
}

// t = e^u for an integer t lands a few ulps off the integer; the
// discontinuous test functions would then see the wrong side of a jump.
double snap_to_integer(double t) {
  const double r = std::round(t);
  return std::abs(t - r) <= 1e-13 * t ? r : t;
}

double harmonic_gheat(const TestFunction& tf, double u) {
  const double t = snap_to_integer(std::exp(u));
  switch (tf.kind()) {
    case TestFunction::Kind::HeatExp:
      return harmonic_heat(tf.q(), u);
    case TestFunction::Kind::SquareCut: {
      // t sum_{n >= ceil(t)} n^-2
      if (t > 1e15) return 1.0;
      return t * inverse_square_tail(static_cast<std::uint64_t>(std::max(1.0, std::ceil(t))));
    }
    case TestFunction::Kind::TailIndicator:
      // #{n : n < t} / t
      if (t > 1e15) return 1.0;
      return (std::ceil(t) - 1.0) / t;
    case TestFunction::Kind::PiecewiseLinear: {
      // f vanishes below the first node, so only n < t / s_0 contribute.
      const double n_max = std::ceil(t / tf.nodes().front().first);
      if (n_max > 1e8) throw std::domain_error("generalized heat: piecewise sum beyond 1e8 terms");
      double s = 0.0;
      for (double n = n_max; n >= 1.0; n -= 1.0) s += tf(t / n);
      return s / t;
    }
  }
  return 0.0;
}

double cx_gheat(const TestFunction& tf, double u) {
  if (tf.kind() == TestFunction::Kind::HeatExp) return cx::heat(u, tf.q());
  double s = 0.0;
  const double slack = 40.0 + std::log1p(tf.c2_constant());
  for (int k = 1; k <= 700; ++k) {
    const double ek = std::exp(static_cast<double>(k));
    if (ek - u - k > slack) break;
    s += std::exp(cx::log_length(k) - u) * tf(std::exp(u - ek));
  }
  return s;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_ideal(const SpectralModel& model, const char* what) {
  if (!model.in_dixmier_ideal())
    throw std::domain_error(std::string(what) + ": model is not in the Dixmier ideal");
}

}  // namespace

// ---------------------------------------------------------------------------
// TestFunction

TestFunction::TestFunction(Kind kind, double q, std::vector<std::pair<double, double>> nodes)
    : kind_(kind), q_(q), nodes_(std::move(nodes)) {
  vanishing_ = (*this)(0.0) == 0.0;
  bounded_ = true;
  double c = 0.0;
  for (int j = 0; j < 1000; ++j) {
    const double s = std::pow(10.0, -6.0 + 12.0 * j / 999.0);
    const double v = std::abs((*this)(s));
    if (!std::isfinite(v)) bounded_ = false;
    c = std::max(c, v / std::min(1.0, s * s));
  }
  c2_constant_ = c;
  c2_ = vanishing_ && bounded_ && std::isfinite(c);
}

TestFunction TestFunction::heat_exp(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw std::domain_error("heatexp: q must be positive");
  return TestFunction(Kind::HeatExp, q, {});
}

TestFunction TestFunction::square_cut() { return TestFunction(Kind::SquareCut, 0.0, {}); }

TestFunction TestFunction::tail_indicator() { return TestFunction(Kind::TailIndicator, 0.0, {}); }

TestFunction TestFunction::piecewise(std::vector<std::pair<double, double>> nodes) {
  if (nodes.empty()) throw std::domain_error("piecewise: need at least one node");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto [s, v] = nodes[i];
    if (!std::isfinite(s) || !std::isfinite(v) || !(s > 0.0))
      throw std::domain_error("piecewise: node " + std::to_string(i) + " is invalid");
    if (i > 0 && !(s > nodes[i - 1].first))
      throw std::domain_error("piecewise: node " + std::to_string(i) + " is out of order");
  }
  return TestFunction(Kind::PiecewiseLinear, 0.0, std::move(nodes));
}

TestFunction TestFunction::parse(const std::string& spec) {
  if (spec == "squarecut") return square_cut();
  if (spec == "tailind") return tail_indicator();
  const std::string prefix = "heatexp:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string rest = spec.substr(prefix.size());
    double q = 0.0;
    auto res = std::from_chars(rest.data(), rest.data() + rest.size(), q);
    if (res.ec != std::errc() || res.ptr != rest.data() + rest.size())
      throw std::invalid_argument("test function: bad q in '" + spec + "'");
    try {
      return heat_exp(q);
    } catch (const std::domain_error& e) {
      throw std::invalid_argument("test function '" + spec + "': " + e.what());
    }
  }
  throw std::invalid_argument("test function: unknown descriptor '" + spec + "'");
}

double TestFunction::operator()(double s) const {
  switch (kind_) {
    case Kind::HeatExp:
      return s > 0.0 ? std::exp(-std::pow(s, -q_)) : 0.0;
    case Kind::SquareCut:
      return s >= 0.0 && s <= 1.0 ? s * s : 0.0;
    case Kind::TailIndicator:
      return s > 1.0 ? 1.0 : 0.0;
    case Kind::PiecewiseLinear: {
      if (s < nodes_.front().first) return 0.0;
      if (s >= nodes_.back().first) return nodes_.back().second;
      auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s,
                                 [](double x, const auto& n) { return x < n.first; });
      const auto& [s1, v1] = *it;
      const auto& [s0, v0] = *std::prev(it);
      return v0 + (v1 - v0) * (s - s0) / (s1 - s0);
    }
  }
  return 0.0;
}

std::vector<double> TestFunction::breakpoints() const {
  switch (kind_) {
    case Kind::HeatExp:
      return {};
    case Kind::SquareCut:
    case Kind::TailIndicator:
      return {1.0};
    case Kind::PiecewiseLinear: {
      std::vector<double> out;
      for (const auto& n : nodes_) out.push_back(n.first);
      return out;
    }
  }
  return {};
}

std::string TestFunction::descriptor() const {
  switch (kind_) {
    case Kind::HeatExp:
      return "heatexp:" + format_double(q_);
    case Kind::SquareCut:
      return "squarecut";
    case Kind::TailIndicator:
      return "tailind";
    case Kind::PiecewiseLinear: {
      std::string out = "piecewise:";
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (i) out += ';';
        out += format_double(nodes_[i].first) + ',' + format_double(nodes_[i].second);
      }
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Point evaluators

double zeta_at(const SpectralModel& model, double u) {
  require_ideal(model, "zeta");
  return std::visit(
      overloaded{
          [&](const FiniteSpectrum& m) { return steps_zeta(m.steps, u); },
          [&](const ExplicitSteps& m) { return steps_zeta(m.steps, u); },
          [&](const PowerTail& m) {
            // c^sigma / (t (p sigma - 1)), sigma = 1 + 1/t
            const double inv_t = std::exp(-u);
            const double sigma = 1.0 + inv_t;
            return std::exp(sigma * std::log(m.c) - u) / ((m.p - 1.0) + m.p * inv_t);
          },
          [&](const HarmonicDiscrete&) {
            if (u > 700.0) return 1.0 + kEulerGamma * std::exp(-u);
            return scaled_zeta_near_one(std::exp(-u)).value;
          },
          [&](const CounterexampleKind&) { return cx::zeta(u); },
      },
      model.kind());
}

double heat_at(const SpectralModel& model, double q, double u) {
  if (!(q > 0.0)) throw std::domain_error("heat: q must be positive");
  return std::visit(overloaded{
                        [&](const FiniteSpectrum& m) { return steps_heat(m.steps, q, u); },
                        [&](const ExplicitSteps& m) { return steps_heat(m.steps, q, u); },
                        [&](const PowerTail& m) { return power_heat(m, q, u); },
                        [&](const HarmonicDiscrete&) { return harmonic_heat(q, u); },
                        [&](const CounterexampleKind&) { return cx::heat(u, q); },
                    },
                    model.kind());
}

double gheat_at(const SpectralModel& model, const TestFunction& f, double u) {
  if (!f.bounded()) throw std::domain_error("generalized heat: test function is not bounded");
  if (!f.vanishing_at_zero())
    throw std::domain_error("generalized heat: test function must vanish at 0");
  if (f.kind() == TestFunction::Kind::HeatExp) return heat_at(model, f.q(), u);
  return std::visit(overloaded{
                        [&](const FiniteSpectrum& m) { return steps_gheat(m.steps, f, u); },
                        [&](const ExplicitSteps& m) { return steps_gheat(m.steps, f, u); },
                        [&](const PowerTail& m) { return power_gheat(m, f, u); },
                        [&](const HarmonicDiscrete&) { return harmonic_gheat(f, u); },
                        [&](const CounterexampleKind&) { return cx_gheat(f, u); },
                    },
                    model.kind());
}

double dixmier_at(const SpectralModel& model, double u) {
  return partial_integral_log(model, u) / log1p_exp(u);
}

double tail_at(const SpectralModel& model, double u) {
  return tail_trace_log(model, u) / log1p_exp(u);
}

double lidskii_at(const SpectralModel& model, double u) {
  if (!(u > 0.0)) throw std::domain_error("lidskii: need u = log t > 0");
  const double level = u / std::exp(u);
  if (const auto* f = std::get_if<FiniteSpectrum>(&model.kind())) {
    double s = 0.0;
    for (std::size_t i = 0; i < f->values.size(); ++i)
      if (f->values[i] > level) s += f->values[i] * static_cast<double>(f->multiplicity[i]);
    return s / u;
  }
  if (std::holds_alternative<HarmonicDiscrete>(model.kind())) {
    // Largest m with 1/m > level, found with the same comparison as a filter.
    double m = std::floor(1.0 / level);
    while (m >= 1.0 && !(1.0 / m > level)) m -= 1.0;
    while (1.0 / (m + 1.0) > level) m += 1.0;
    if (m <= 1e8) return harmonic_sum_naive(static_cast<std::uint64_t>(m)) / u;
    return harmonic_number(m) / u;
  }
  throw unsupported_kind("lidskii: model kind '" + model.name() + "' has no discrete spectrum");
}

// ---------------------------------------------------------------------------
// Curves

Curve sample_curve(const PointEvaluator& f, const LogGrid& grid, std::string functional) {
  Curve c{grid, std::vector<double>(grid.count()), std::move(functional), {}, {}};
  parallel_for(grid.count(), [&](std::size_t i) { c.values[i] = f(grid.at(i)); });
  for (std::size_t i = 0; i < c.values.size(); ++i)
    if (!std::isfinite(c.values[i]))
      throw numeric_error(c.functional + ": non-finite value at u = " + format_double(grid.at(i)));
  return c;
}

namespace {

Curve model_curve(const SpectralModel& model, const LogGrid& grid, const std::string& name,
                  const PointEvaluator& f) {
  Curve c = sample_curve(f, grid, name);
  c.params["model"] = model.name();
  return c;
}

}  // namespace

Curve zeta_curve(const SpectralModel& model, const LogGrid& grid) {
  if (grid.u_min() < 0.1) throw std::domain_error("zeta: grid must start at u >= 0.1");
  require_ideal(model, "zeta");
  Curve c = model_curve(model, grid, "zeta", [&](double u) { return zeta_at(model, u); });
  if (std::holds_alternative<HarmonicDiscrete>(model.kind()) && grid.u_max() <= 700.0)
    c.metadata["series_tail_at_u_max"] = scaled_zeta_near_one(std::exp(-grid.u_max())).correction;
  return c;
}

Curve heat_curve(const SpectralModel& model, double q, const LogGrid& grid) {
  Curve c = model_curve(model, grid, "heat", [&](double u) { return heat_at(model, q, u); });
  c.params["q"] = format_double(q);
  if (std::holds_alternative<HarmonicDiscrete>(model.kind())) {
    double corr = 0.0;
    harmonic_heat(q, grid.u_max(), &corr);
    c.metadata["em_correction_at_u_max"] = corr;
  }
  return c;
}

Curve generalized_heat_curve(const SpectralModel& model, const TestFunction& f,
                             const LogGrid& grid) {
  if (!f.bounded()) throw std::domain_error("generalized heat: test function is not bounded");
  Curve c = model_curve(model, grid, "gheat", [&](double u) { return gheat_at(model, f, u); });
  c.params["f"] = f.descriptor();
  return c;
}

Curve dixmier_curve(const SpectralModel& model, const LogGrid& grid) {
  return model_curve(model, grid, "dixmier", [&](double u) { return dixmier_at(model, u); });
}

Curve tail_curve(const SpectralModel& model, const LogGrid& grid) {
  return model_curve(model, grid, "tail", [&](double u) { return tail_at(model, u); });
}

Curve lidskii_curve(const SpectralModel& model, const LogGrid& grid) {
  if (!model.is_discrete())
    throw unsupported_kind("lidskii: model kind '" + model.name() + "' has no discrete spectrum");
  return model_curve(model, grid, "lidskii", [&](double u) { return lidskii_at(model, u); });
}

Curve cesaro(const Curve& in) {
  const LogGrid& g = in.grid;
  if (g.u_min() < 0.0) throw std::domain_error("cesaro: grid must start at u >= 0");
  if (in.values.size() != g.count()) throw std::domain_error("cesaro: value count mismatch");
  const double u_out = std::max(g.u_min(), 0.5);
  std::size_t first = 0;
  while (first < g.count() && (g.at(first) < u_out || g.at(first) <= 0.0)) ++first;
  if (g.count() - first < 2) throw std::domain_error("cesaro: fewer than 2 output points");

  std::vector<double> out;
  out.reserve(g.count() - first);
  double integral = g.u_min() * in.values[0];
  for (std::size_t i = 0; i < g.count(); ++i) {
    if (i > 0) integral += 0.5 * (in.values[i - 1] + in.values[i]) * (g.at(i) - g.at(i - 1));
    if (i >= first) out.push_back(integral / g.at(i));
  }
  Curve c{LogGrid(g.at(first), g.u_max(), g.count() - first), std::move(out),
          "cesaro-of:" + in.functional, in.params, in.metadata};
  c.metadata["cesaro_extension_length"] = g.u_min();
  c.metadata["cesaro_coarse_grid_warning"] = g.spacing() > 0.1 ? 1.0 : 0.0;
  return c;
}

CesaroSummary cesaro_summary(const PointEvaluator& f, const LogGrid& grid, double u_out_min) {
  if (grid.u_min() < 0.0) throw std::domain_error("cesaro: grid must start at u >= 0");
  CesaroSummary s;
  s.extension = grid.u_min();
  s.coarse = grid.spacing() > 0.1;
  s.max = -kInf;
  s.min = kInf;
  const double u_out = std::max({grid.u_min(), 0.5, u_out_min});
  constexpr std::size_t kChunk = 1 << 16;
  std::vector<double> values;
  double integral = 0.0;
  double prev = 0.0;
  for (std::size_t lo = 0; lo < grid.count(); lo += kChunk) {
    const std::size_t hi = std::min(grid.count(), lo + kChunk);
    values.assign(hi - lo, 0.0);
    parallel_for(hi - lo, [&](std::size_t j) { values[j] = f(grid.at(lo + j)); });
    for (std::size_t i = lo; i < hi; ++i) {
      const double v = values[i - lo];
      if (!std::isfinite(v))
        throw numeric_error("cesaro: non-finite value at u = " + format_double(grid.at(i)));
      const double u = grid.at(i);
      if (i == 0) {
        integral = grid.u_min() * v;
      } else {
        integral += 0.5 * (prev + v) * (u - grid.at(i - 1));
      }
      prev = v;
      if (u >= u_out && u > 0.0) {
        const double m = integral / u;
        if (m > s.max) {
          s.max = m;
          s.u_at_max = u;
        }
        s.min = std::min(s.min, m);
        s.last = m;
        ++s.points;
      }
    }
  }
  if (s.points == 0) throw std::domain_error("cesaro: no output points");
  return s;
}

// ---------------------------------------------------------------------------
// Scalar integrals

double weight_integral(const TestFunction& f) {
  if (!f.bounded()) throw std::domain_error("weight integral: test function is not bounded");
  if (!f.vanishing_at_zero())
    throw std::domain_error("weight integral: test function must vanish at 0");

  // On (0, 1] substitute s = e^-v: int_0^inf f(e^-v) e^v dv.
  auto head = [&](double v) { return f(std::exp(-v)) * std::exp(v); };
  std::vector<double> head_breaks;
  std::vector<double> tail_breaks;
  for (double b : f.breakpoints()) {
    if (b < 1.0) head_breaks.push_back(-std::log(b));
    if (b > 1.0) tail_breaks.push_back(1.0 / b);
  }
  auto head_to = [&](double v_max, double tol) {
    return quad::simpson_split(head, 0.0, v_max, head_breaks, tol).value;
  };

  // The partial integrals int_eps^1 f(s) s^-2 ds, eps = 1e-4 .. 1e-10, must settle.
  std::vector<double> partial;
  for (int e = 4; e <= 10; ++e) partial.push_back(head_to(e * std::log(10.0), 1e-12));
  double prev_diff = kInf;
  bool cauchy = true;
  for (std::size_t i = 1; i < partial.size(); ++i) {
    const double d = std::abs(partial[i] - partial[i - 1]);
    if (d > 1e-9 * std::max(1.0, std::abs(partial[i])) && !(d < 0.9 * prev_diff)) cauchy = false;
    prev_diff = d;
  }
  if (!cauchy || prev_diff > 1e-3 * std::max(1.0, std::abs(partial.back())))
    throw std::domain_error("weight integral: partial integrals near 0 are not Cauchy");

  // f(s) <= C s^2 makes the v-integrand at most C e^-v.
  double v_max = 40.0 + std::log1p(f.c2_constant());
  if (f.kind() == TestFunction::Kind::HeatExp)
    v_max = std::max(v_max, std::log(100.0 + 200.0 / f.q()) / f.q());
  const double head_value = head_to(v_max, 1e-13);
  // s = 1/y on [1, inf)
  const double tail_value =
      quad::simpson_split([&](double y) { return f(1.0 / y); }, 0.0, 1.0, tail_breaks, 1e-13)
          .value;
  return head_value + tail_value;
}

std::pair<Curve, Curve> karamata_compare(const Beta& beta, double q, const LogGrid& grid) {
  if (!(q > 0.0)) throw std::domain_error("karamata: q must be positive");
  const double gamma = std::tgamma(1.0 + 1.0 / q);
  std::pair<Curve, Curve> out{Curve{grid, {}, "karamata_h", {}, {}},
                              Curve{grid, {}, "karamata_beta", {}, {}}};
  if (beta.kind == Beta::Kind::Linear) {
    if (!(beta.slope >= 0.0) || !std::isfinite(beta.slope))
      throw std::domain_error("karamata: slope must be finite and >= 0");
    // h(t)/t = slope int_0^inf exp(-y^q) dy after u = t y
    const double h = beta.slope * stretched_exp_tail(0.0, q);
    out.first.values.assign(grid.count(), h);
    out.second.values.assign(grid.count(), gamma * beta.slope);
    out.first.params["beta"] = out.second.params["beta"] = "linear:" + format_double(beta.slope);
  } else {
    if (!beta.model) throw std::domain_error("karamata: distribution beta needs a model");
    const SpectralModel& m = *beta.model;
    if (std::holds_alternative<CounterexampleKind>(m.kind()))
      throw std::domain_error("karamata: beta(t)/t is unbounded for this model");
    if (auto* p = std::get_if<PowerTail>(&m.kind()); p && p->p < 1.0)
      throw std::domain_error("karamata: beta(t)/t is unbounded for this model");
    // With beta(u) = d(1/u), h(t) = tau(exp(-(tA)^-q)).
    out.first = sample_curve([&](double u) { return heat_at(m, q, u); }, grid, "karamata_h");
    out.second = sample_curve(
        [&](double u) { return gamma * std::exp(log_distribution(m, -u) - u); }, grid,
        "karamata_beta");
    out.first.params["beta"] = out.second.params["beta"] = "distribution:" + m.name();
  }
  out.first.params["q"] = out.second.params["q"] = format_double(q);
  return out;
}

PiProfile PiProfile::log_width_indicator() {
  PiProfile p;
  p.kind = Kind::IntervalUnion;
  p.width = [](int j) { return static_cast<double>(j); };
  return p;
}

PiProfile PiProfile::dilated_indicator(double s) {
  if (!(s > 1.0)) throw std::domain_error("dilated indicator: need s > 1");
  PiProfile p;
  p.kind = Kind::IntervalUnion;
  const double w = std::log(s);
  p.width = [w](int) { return w; };
  return p;
}

LimitEstimate pi_functional(const PiProfile& x, int k_min, int k_max, double tol) {
  if (k_min < 1 || k_max < k_min) throw std::domain_error("pi functional: bad k range");
  LimitEstimate est;
  est.tolerance = tol;
  for (int k = k_min; k <= k_max; ++k) {
    const double lo = std::exp(static_cast<double>(k));
    const double hi = lo + k;
    double v = 0.0;
    switch (x.kind) {
      case PiProfile::Kind::Constant:
        v = x.constant;
        break;
      case PiProfile::Kind::IntervalUnion: {
        double len = 0.0;
        for (int j = std::max(1, k - 1); j <= k + 1; ++j) {
          const double a = std::exp(static_cast<double>(j));
          const double b = a + x.width(j);
          len += std::max(0.0, std::min(b, hi) - std::max(a, lo));
        }
        v = len / k;
        break;
      }
      case PiProfile::Kind::Function:
        v = quad::simpson(x.function, lo, hi, 1e-10 * k).value / k;
        break;
    }
    est.probes.push_back({lo, v});
  }
  est.limsup_est = -kInf;
  est.liminf_est = kInf;
  for (const Probe& p : est.probes) {
    est.limsup_est = std::max(est.limsup_est, p.value);
    est.liminf_est = std::min(est.liminf_est, p.value);
  }
  if (est.probes.size() >= 3) {
    double a = kInf, b = -kInf;
    for (std::size_t i = est.probes.size() - 3; i < est.probes.size(); ++i) {
      a = std::min(a, est.probes[i].value);
      b = std::max(b, est.probes[i].value);
    }
    est.converged = b - a <= tol;
  }
  return est;
}

}  // namespace singtrace
