#include "singtrace/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "singtrace/counterexample.hpp"
#include "singtrace/special.hpp"

namespace singtrace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this log-abscissa the harmonic kinds are evaluated on the integer
// lattice; above it t is far past 2^53 and the asymptotic forms are exact to
// double precision.
constexpr double kHarmonicLatticeLog = 34.0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double harmonic_partial_integral(double t, double u) {
  if (u >= kHarmonicLatticeLog) return u + kEulerGamma + 0.5 * std::exp(-u);
  const double n = std::floor(t);
  return harmonic_number(n) + (t - n) / (n + 1.0);
}

double harmonic_tail_trace(double t, double u) {
  if (!(t > 1.0)) return 0.0;
  if (u >= kHarmonicLatticeLog) return u + kEulerGamma - 1.0;
  const double d = std::ceil(t) - 1.0;  // #{n : 1/n > 1/t}
  if (d < 64.0) {
    double s = 0.0;
    for (int n = static_cast<int>(d); n >= 1; --n) s += 1.0 / n - 1.0 / t;
    return s;
  }
  return harmonic_number(d) - d / t;
}

double power_partial_integral(const PowerTail& m, double u) {
  const double l = log1p_exp(u);  // log(1 + t)
  if (m.p == 1.0) return m.c * l;
  return m.c * std::expm1((1.0 - m.p) * l) / (1.0 - m.p);
}

double steps_tail_trace(const StepFunction& f, double u) {
  double s = 0.0;
  const auto& ps = f.plateaus();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!(ps[i].w > -u)) break;
    s += std::exp(ps[i].w + f.log_length(i)) * -std::expm1(-u - ps[i].w);
  }
  return s;
}

double partial_integral_impl(const SpectralModel& model, double t, double u) {
  if (u == -kInf) return 0.0;
  return std::visit(
      overloaded{
          [&](const FiniteSpectrum& m) { return m.steps.integral_to(u); },
          [&](const ExplicitSteps& m) { return m.steps.integral_to(u); },
          [&](const PowerTail& m) { return power_partial_integral(m, u); },
          [&](const HarmonicDiscrete&) { return harmonic_partial_integral(t, u); },
          [&](const CounterexampleKind&) { return cx::partial_integral(u); },
      },
      model.kind());
}

double tail_trace_impl(const SpectralModel& model, double t, double u) {
  return std::visit(
      overloaded{
          [&](const FiniteSpectrum& m) { return steps_tail_trace(m.steps, u); },
          [&](const ExplicitSteps& m) { return steps_tail_trace(m.steps, u); },
          [&](const PowerTail& m) {
            const double log_d = log_distribution(model, -u);
            if (log_d == -kInf) return 0.0;
            const double d = std::exp(log_d);
            return std::max(0.0, power_partial_integral(m, log_d) - d * std::exp(-u));
          },
          [&](const HarmonicDiscrete&) { return harmonic_tail_trace(t, u); },
          [&](const CounterexampleKind&) { return cx::tail_trace(u); },
      },
      model.kind());
}

StepFunction unit_steps(const std::vector<double>& values, const std::vector<std::size_t>& mult) {
  std::vector<Plateau> ps;
  ps.reserve(values.size());
  std::size_t count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    count += mult[i];
    ps.push_back({std::log(static_cast<double>(count)), std::log(values[i])});
  }
  return StepFunction(std::move(ps));
}

FiniteSpectrum make_finite(std::span<const double> values) {
  if (values.empty()) throw std::domain_error("finite spectrum: value list is empty");
  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v) || v < 0.0)
      throw std::domain_error("finite spectrum: value " + std::to_string(i) +
                              " is negative or not finite");
    if (v > 0.0) sorted.push_back(v);
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  FiniteSpectrum out;
  for (double v : sorted) {
    if (!out.values.empty() && out.values.back() == v) {
      ++out.multiplicity.back();
    } else {
      out.values.push_back(v);
      out.multiplicity.push_back(1);
    }
  }
  out.steps = unit_steps(out.values, out.multiplicity);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// StepFunction

StepFunction::StepFunction(std::vector<Plateau> plateaus) : plateaus_(std::move(plateaus)) {
  masses_.reserve(plateaus_.size());
  cumulative_.reserve(plateaus_.size());
  double total = 0.0;
  for (std::size_t i = 0; i < plateaus_.size(); ++i) {
    const Plateau& p = plateaus_[i];
    if (!std::isfinite(p.u_right) || !std::isfinite(p.w))
      throw std::domain_error("plateau " + std::to_string(i) + ": coordinates must be finite");
    if (i > 0 && !(p.u_right > plateaus_[i - 1].u_right))
      throw std::domain_error("plateau " + std::to_string(i) +
                              ": right endpoint must strictly increase");
    if (i > 0 && !(p.w < plateaus_[i - 1].w))
      throw std::domain_error("plateau " + std::to_string(i) + ": value must strictly decrease");
    const double m = std::exp(p.w + log_length(i));
    masses_.push_back(m);
    total += m;
    cumulative_.push_back(total);
  }
}

double StepFunction::support_log() const {
  return plateaus_.empty() ? -kInf : plateaus_.back().u_right;
}

std::size_t StepFunction::plateau_at(double u) const {
  auto it = std::upper_bound(plateaus_.begin(), plateaus_.end(), u,
                             [](double x, const Plateau& p) { return x < p.u_right; });
  return static_cast<std::size_t>(it - plateaus_.begin());
}

double StepFunction::log_value_at(double u) const {
  const std::size_t i = plateau_at(u);
  return i < plateaus_.size() ? plateaus_[i].w : -kInf;
}

double StepFunction::log_length(std::size_t i) const {
  if (i == 0) return plateaus_[0].u_right;
  return log_diff_exp(plateaus_[i].u_right, plateaus_[i - 1].u_right);
}

double StepFunction::integral_to(double u) const {
  if (u == -kInf || plateaus_.empty()) return 0.0;
  const std::size_t i = plateau_at(u);
  if (i == plateaus_.size()) return total_mass();
  const double base = i > 0 ? cumulative_[i - 1] : 0.0;
  if (i == 0) return base + std::exp(plateaus_[0].w + u);
  const double prev = plateaus_[i - 1].u_right;
  return base + std::exp(plateaus_[i].w + u) * -std::expm1(prev - u);
}

double StepFunction::log_level_measure(double log_s) const {
  auto it = std::partition_point(plateaus_.begin(), plateaus_.end(),
                                 [&](const Plateau& p) { return p.w > log_s; });
  if (it == plateaus_.begin()) return -kInf;
  return std::prev(it)->u_right;
}

// ---------------------------------------------------------------------------
// SpectralModel

SpectralModel SpectralModel::finite(std::span<const double> values) {
  return SpectralModel(make_finite(values));
}

SpectralModel SpectralModel::explicit_steps(StepFunction f) {
  return SpectralModel(ExplicitSteps{std::move(f)});
}

SpectralModel SpectralModel::power_tail(double c, double p) {
  if (!(c > 0.0) || !(p > 0.0) || !std::isfinite(c) || !std::isfinite(p))
    throw std::domain_error("power tail: c and p must be finite and positive");
  return SpectralModel(PowerTail{c, p});
}

SpectralModel SpectralModel::harmonic() { return SpectralModel(HarmonicDiscrete{}); }

SpectralModel SpectralModel::counterexample(int k_max) {
  if (k_max < 1) throw std::domain_error("counterexample: k_max must be >= 1");
  return SpectralModel(CounterexampleKind{k_max});
}

std::string SpectralModel::name() const {
  return std::visit(overloaded{
                        [](const FiniteSpectrum&) { return std::string("finite"); },
                        [](const ExplicitSteps&) { return std::string("explicit"); },
                        [](const PowerTail&) { return std::string("power"); },
                        [](const HarmonicDiscrete&) { return std::string("harmonic"); },
                        [](const CounterexampleKind&) { return std::string("counterexample"); },
                    },
                    kind_);
}

const StepFunction* SpectralModel::steps() const {
  if (auto* f = std::get_if<FiniteSpectrum>(&kind_)) return &f->steps;
  if (auto* e = std::get_if<ExplicitSteps>(&kind_)) return &e->steps;
  return nullptr;
}

bool SpectralModel::is_discrete() const {
  return std::holds_alternative<FiniteSpectrum>(kind_) ||
         std::holds_alternative<HarmonicDiscrete>(kind_);
}

bool SpectralModel::in_dixmier_ideal() const {
  if (auto* p = std::get_if<PowerTail>(&kind_)) return p->p >= 1.0;
  return true;
}

SpectralModel SpectralModel::scaled(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::domain_error("scaled: factor must be positive");
  return std::visit(
      overloaded{
          [&](const FiniteSpectrum& m) {
            FiniteSpectrum out = m;
            for (double& v : out.values) v *= s;
            out.steps = unit_steps(out.values, out.multiplicity);
            return SpectralModel(std::move(out));
          },
          [&](const ExplicitSteps& m) {
            std::vector<Plateau> ps = m.steps.plateaus();
            for (Plateau& p : ps) p.w += std::log(s);
            return SpectralModel(ExplicitSteps{StepFunction(std::move(ps))});
          },
          [&](const PowerTail& m) { return SpectralModel(PowerTail{m.c * s, m.p}); },
          [&](const auto&) -> SpectralModel {
            throw std::domain_error("scaled: unsupported model kind " + name());
          },
      },
      kind_);
}

// ---------------------------------------------------------------------------
// Operations

StepFunction rearrange(std::span<const double> values) { return make_finite(values).steps; }

double log_mu_at(const SpectralModel& model, double u) {
  return std::visit(
      overloaded{
          [&](const FiniteSpectrum& m) { return m.steps.log_value_at(u); },
          [&](const ExplicitSteps& m) { return m.steps.log_value_at(u); },
          [&](const PowerTail& m) { return std::log(m.c) - m.p * log1p_exp(u); },
          [&](const HarmonicDiscrete&) {
            if (u >= kHarmonicLatticeLog) return -log1p_exp(u);
            return -std::log(std::floor(std::exp(u)) + 1.0);
          },
          [&](const CounterexampleKind&) { return cx::log_value(cx::plateau_index(u)); },
      },
      model.kind());
}

double mu_at(const SpectralModel& model, double t) {
  if (!(t >= 0.0)) throw std::domain_error("mu_at: t must be >= 0");
  if (std::holds_alternative<HarmonicDiscrete>(model.kind()) && t < 1e15)
    return 1.0 / (std::floor(t) + 1.0);
  if (auto* p = std::get_if<PowerTail>(&model.kind())) return p->c * std::pow(1.0 + t, -p->p);
  return std::exp(log_mu_at(model, std::log(t)));
}

double log_distribution(const SpectralModel& model, double log_s) {
  return std::visit(
      overloaded{
          [&](const FiniteSpectrum& m) { return m.steps.log_level_measure(log_s); },
          [&](const ExplicitSteps& m) { return m.steps.log_level_measure(log_s); },
          [&](const PowerTail& m) {
            const double log_c = std::log(m.c);
            if (log_s >= log_c) return -kInf;
            const double x = (log_c - log_s) / m.p;  // log(1 + d)
            return x > 35.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x));
          },
          [&](const HarmonicDiscrete&) {
            if (log_s >= 0.0) return -kInf;
            if (-log_s >= kHarmonicLatticeLog) return -log_s;
            const double d = std::ceil(std::exp(-log_s)) - 1.0;
            return d > 0.0 ? std::log(d) : -kInf;
          },
          [&](const CounterexampleKind&) { return cx::log_distribution(log_s); },
      },
      model.kind());
}

double distribution(const SpectralModel& model, double s) {
  if (!(s > 0.0)) throw std::domain_error("distribution: s must be > 0");
  if (std::holds_alternative<HarmonicDiscrete>(model.kind()) && s > 1e-15)
    return s >= 1.0 ? 0.0 : std::ceil(1.0 / s) - 1.0;
  if (auto* p = std::get_if<PowerTail>(&model.kind()))
    return s >= p->c ? 0.0 : std::pow(p->c / s, 1.0 / p->p) - 1.0;
  if (auto* f = std::get_if<FiniteSpectrum>(&model.kind())) {
    double count = 0.0;
    for (std::size_t i = 0; i < f->values.size() && f->values[i] > s; ++i)
      count += static_cast<double>(f->multiplicity[i]);
    return count;
  }
  return std::exp(log_distribution(model, std::log(s)));
}

double partial_integral(const SpectralModel& model, double t) {
  if (!(t >= 0.0)) throw std::domain_error("partial_integral: t must be >= 0");
  return partial_integral_impl(model, t, std::log(t));
}

double partial_integral_log(const SpectralModel& model, double u) {
  return partial_integral_impl(model, std::exp(u), u);
}

double tail_trace(const SpectralModel& model, double t) {
  if (!(t > 0.0)) throw std::domain_error("tail_trace: t must be > 0");
  return tail_trace_impl(model, t, std::log(t));
}

double tail_trace_log(const SpectralModel& model, double u) {
  return tail_trace_impl(model, std::exp(u), u);
}

std::vector<double> plateau_boundaries_log(const SpectralModel& model, double lo, double hi,
                                           std::size_t max_count) {
  std::vector<double> out;
  if (const StepFunction* f = model.steps()) {
    for (const Plateau& p : f->plateaus())
      if (p.u_right >= lo && p.u_right <= hi) out.push_back(p.u_right);
    return out;
  }
  if (std::holds_alternative<HarmonicDiscrete>(model.kind())) {
    const double first = std::max(1.0, std::ceil(std::exp(std::max(lo, -700.0))));
    const double last = std::floor(std::exp(std::min(hi, 700.0)));
    for (double n = first; n <= last && out.size() < max_count; n += 1.0) {
      const double u = std::log(n);
      if (u >= lo && u <= hi) out.push_back(u);
    }
    return out;
  }
  if (std::holds_alternative<CounterexampleKind>(model.kind())) {
    for (int k = 1; k <= 700 && out.size() < max_count; ++k) {
      const double u = cx::log_right(k);
      if (u > hi) break;
      if (u >= lo) out.push_back(u);
    }
  }
  return out;
}

double marcinkiewicz_norm(const SpectralModel& model, double u_max) {
  if (auto* p = std::get_if<PowerTail>(&model.kind())) {
    // The ratio is constant (p = 1), decreasing from c (p > 1), or increasing (p < 1).
    if (p->p >= 1.0) return p->c;
    return partial_integral_log(model, u_max) / log1p_exp(u_max);
  }
  // Between plateau boundaries the integral is affine in t while log(1 + t) is
  // concave, so the ratio is quasi-convex there and peaks at an endpoint. The
  // t -> 0 endpoint contributes mu(0).
  double best = std::exp(log_mu_at(model, -kInf));
  auto ratio = [&](double u) { return partial_integral_log(model, u) / log1p_exp(u); };
  for (double u : plateau_boundaries_log(model, -kInf, u_max)) best = std::max(best, ratio(u));
  best = std::max(best, ratio(u_max));
  return best;
}

StepFunction dilate(const StepFunction& f, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::domain_error("dilate: s must be positive");
  std::vector<Plateau> ps = f.plateaus();
  const double shift = std::log(s);
  for (Plateau& p : ps) p.u_right += shift;
  return StepFunction(std::move(ps));
}

namespace {

std::vector<double> checkpoint_set(const SpectralModel& a, const SpectralModel& b,
                                   const LogGrid& grid) {
  std::vector<double> us;
  us.reserve(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) us.push_back(grid.at(i));
  for (const SpectralModel* m : {&a, &b}) {
    const bool finite_support = m->steps() != nullptr;
    const double lo = finite_support ? -kInf : grid.u_min();
    const double hi = finite_support ? kInf : grid.u_max();
    auto extra = plateau_boundaries_log(*m, lo, hi);
    us.insert(us.end(), extra.begin(), extra.end());
  }
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  return us;
}

}  // namespace

MajorizationReport majorizes(const SpectralModel& a, const SpectralModel& b, const LogGrid& grid) {
  MajorizationReport report;
  const auto us = checkpoint_set(a, b, grid);
  report.checkpoints.reserve(us.size());
  double scale = 0.0;
  report.worst_margin = kInf;
  for (double u : us) {
    const double lhs = partial_integral_log(b, u);
    const double rhs = partial_integral_log(a, u);
    report.checkpoints.push_back({u, lhs, rhs});
    report.worst_margin = std::min(report.worst_margin, rhs - lhs);
    scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
  }
  report.tolerance = kMajorizationRelTol * scale;
  report.verdict = report.worst_margin >= -report.tolerance;
  return report;
}

TailEquivalence tail_equivalence_check(const SpectralModel& a, const SpectralModel& b,
                                       const LogGrid& grid) {
  TailEquivalence out;
  const MajorizationReport maj = majorizes(a, b, grid);
  out.majorized = maj.verdict;
  out.majorization_margin = maj.worst_margin;

  // tail_trace as a function of the level 1/t is piecewise affine with kinks
  // at the plateau values, so grid points plus kinks decide the comparison.
  std::vector<double> us;
  for (std::size_t i = 0; i < grid.count(); ++i) us.push_back(grid.at(i));
  for (const SpectralModel* m : {&a, &b})
    if (const StepFunction* f = m->steps())
      for (const Plateau& p : f->plateaus()) us.push_back(-p.w);
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());

  double scale = 0.0;
  double margin = kInf;
  for (double u : us) {
    const double ta = tail_trace_log(a, u);
    const double tb = tail_trace_log(b, u);
    margin = std::min(margin, ta - tb);
    scale = std::max({scale, ta, tb});
  }
  // t -> inf: the tail trace tends to the total mass.
  if (a.steps() && b.steps()) {
    const double ta = a.steps()->total_mass();
    const double tb = b.steps()->total_mass();
    margin = std::min(margin, ta - tb);
    scale = std::max({scale, ta, tb});
  }
  out.tail_margin = margin;
  out.tail_dominated = margin >= -kMajorizationRelTol * scale;
  return out;
}

}  // namespace singtrace
