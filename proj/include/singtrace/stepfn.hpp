#pragma once

// Singular-value functions of positive compact operators.
//
// Every operator is represented by its decreasing rearrangement mu(t), a
// nonincreasing function on [0, inf). Abscissae and plateau values are kept as
// natural logarithms so that plateau boundaries such as exp(k + e^k) remain
// representable; an argument "u" in this header always means u = log(t).
//
// Conventions: mu is right-continuous, and the distribution function counts
// the strict level set d(s) = |{mu > s}|.

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "singtrace/grid.hpp"

namespace singtrace {

struct Plateau {
  double u_right;  // log of the right endpoint
  double w;        // log of the value
};

// Nonincreasing step function with finite support. Plateau i covers
// [exp(u_{i-1}), exp(u_i)) where u_{-1} = -inf. Adjacent plateaus must have
// strictly decreasing values; the function is zero past the last plateau.
class StepFunction {
 public:
  StepFunction() = default;
  // Throws std::domain_error naming the offending plateau index.
  explicit StepFunction(std::vector<Plateau> plateaus);

  const std::vector<Plateau>& plateaus() const { return plateaus_; }
  bool empty() const { return plateaus_.empty(); }
  std::size_t size() const { return plateaus_.size(); }

  // log of the support length, -inf for the zero function.
  double support_log() const;

  // log f(e^u); -inf past the support.
  double log_value_at(double u) const;

  // Index of the plateau containing e^u, or size() past the support.
  std::size_t plateau_at(double u) const;

  double log_length(std::size_t i) const;
  double mass(std::size_t i) const { return masses_[i]; }

  // Integral of f over [0, e^u].
  double integral_to(double u) const;
  double total_mass() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

  // log |{f > e^{log_s}}|, -inf when the level set is empty.
  double log_level_measure(double log_s) const;

 private:
  std::vector<Plateau> plateaus_;
  std::vector<double> masses_;
  std::vector<double> cumulative_;  // cumulative_[i] = mass of plateaus [0, i]
};

// Unit-width steps from a finite spectrum. Zeros are dropped and equal values
// merged into one plateau whose multiplicity is recorded.
struct FiniteSpectrum {
  std::vector<double> values;             // distinct, strictly decreasing
  std::vector<std::size_t> multiplicity;  // same length as values
  StepFunction steps;
};

struct ExplicitSteps {
  StepFunction steps;
};

// mu(s) = c (1 + s)^(-p)
struct PowerTail {
  double c;
  double p;
};

// mu_n = 1/n, n >= 1, i.e. mu(s) = 1/(floor(s) + 1).
struct HarmonicDiscrete {};

// mu = sup_k exp(-e^k) 1_[0, exp(k + e^k)]; see counterexample.hpp.
struct CounterexampleKind {
  int k_max = 64;
};

class SpectralModel {
 public:
  using Kind = std::variant<FiniteSpectrum, ExplicitSteps, PowerTail, HarmonicDiscrete,
                            CounterexampleKind>;

  static SpectralModel finite(std::span<const double> values);
  static SpectralModel explicit_steps(StepFunction f);
  static SpectralModel power_tail(double c, double p);
  static SpectralModel harmonic();
  static SpectralModel counterexample(int k_max = 64);

  const Kind& kind() const { return kind_; }
  // "finite", "explicit", "power", "harmonic" or "counterexample".
  std::string name() const;

  // Step-function representation for finite and explicit kinds, else nullptr.
  const StepFunction* steps() const;

  bool is_discrete() const;
  // sup_t (int_0^t mu) / log(1 + t) < inf
  bool in_dixmier_ideal() const;

  // The operator s*A. Supported for finite, explicit and power kinds.
  SpectralModel scaled(double s) const;

 private:
  explicit SpectralModel(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

// Decreasing rearrangement of a finite list as a unit-width step function.
StepFunction rearrange(std::span<const double> values);

double mu_at(const SpectralModel& model, double t);
double log_mu_at(const SpectralModel& model, double u);

// d(s) = |{mu > s}|; +inf when the level set is unbounded.
double distribution(const SpectralModel& model, double s);
// log d(e^{log_s}); -inf when the level set is empty.
double log_distribution(const SpectralModel& model, double log_s);

// int_0^t mu(s) ds
double partial_integral(const SpectralModel& model, double t);
double partial_integral_log(const SpectralModel& model, double u);

// sup_{log t <= u_max} partial_integral(t) / log(1 + t).
double marcinkiewicz_norm(const SpectralModel& model, double u_max);

// (sigma_s f)(t) = f(t / s)
StepFunction dilate(const StepFunction& f, double s);

// int_0^{d(1/t)} (mu(s) - 1/t) ds = tau((A - 1/t) e^A(1/t, inf))
double tail_trace(const SpectralModel& model, double t);
double tail_trace_log(const SpectralModel& model, double u);

// log t of every plateau boundary with lo <= log t <= hi, at most max_count
// of them (the first ones) for kinds with infinitely many plateaus.
std::vector<double> plateau_boundaries_log(const SpectralModel& model, double lo, double hi,
                                           std::size_t max_count = 100'000);

struct MajorizationCheckpoint {
  double u;    // log t
  double lhs;  // int_0^t mu(B)
  double rhs;  // int_0^t mu(A)
};

struct MajorizationReport {
  std::vector<MajorizationCheckpoint> checkpoints;
  bool verdict = false;
  double worst_margin = 0.0;  // min(rhs - lhs)
  double tolerance = 0.0;     // verdict == (worst_margin >= -tolerance)
};

inline constexpr double kMajorizationRelTol = 1e-10;

// B << A (Hardy-Littlewood) checked on the grid and every plateau boundary.
MajorizationReport majorizes(const SpectralModel& a, const SpectralModel& b, const LogGrid& grid);

struct TailEquivalence {
  bool majorized = false;      // b << a
  bool tail_dominated = false; // tail_trace(b, t) <= tail_trace(a, t) for all checked t
  double majorization_margin = 0.0;
  double tail_margin = 0.0;
};

// Both characterisations of b << a. For finite-support operands the tail
// check also visits every kink (t = 1/value) and the t -> inf limit.
TailEquivalence tail_equivalence_check(const SpectralModel& a, const SpectralModel& b,
                                       const LogGrid& grid);

}  // namespace singtrace
