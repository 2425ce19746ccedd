#include "singtrace/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "singtrace/asymptotics.hpp"
#include "singtrace/counterexample.hpp"
#include "singtrace/functionals.hpp"
#include "singtrace/io.hpp"
#include "singtrace/matrixlab.hpp"
#include "singtrace/stepfn.hpp"

namespace singtrace {

namespace {

using Clock = std::chrono::steady_clock;

const double kE = std::exp(1.0);
const double kDixmierConst = 1.0 / (kE - 1.0);
const double kTailConst = kE / (kE - 1.0);

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

VerifyResult make(std::string name, int criterion, double measured, double expected,
                  double tolerance, std::string detail = {}) {
  VerifyResult r{std::move(name), criterion, CheckStatus::Fail, measured, expected, tolerance, 0,
                 std::move(detail)};
  if (std::abs(measured - expected) <= tolerance) r.status = CheckStatus::Pass;
  return r;
}

// measured = max(0, value - bound)
VerifyResult upper_bound(std::string name, int criterion, double value, double bound,
                         std::string detail = {}) {
  const double excess = std::isnan(value) ? NAN : std::max(0.0, value - bound);
  if (!detail.empty()) detail += "; ";
  detail += "value " + format_number(value) + " <= " + format_number(bound);
  return make(std::move(name), criterion, excess, 0.0, 0.0, std::move(detail));
}

VerifyResult lower_bound(std::string name, int criterion, double value, double bound,
                         std::string detail = {}) {
  const double deficit = std::isnan(value) ? NAN : std::max(0.0, bound - value);
  if (!detail.empty()) detail += "; ";
  detail += "value " + format_number(value) + " >= " + format_number(bound);
  return make(std::move(name), criterion, deficit, 0.0, 0.0, std::move(detail));
}

// Runs one check body; exceptions turn into a single Fail entry.
void run_check(std::vector<VerifyResult>& out, const std::string& name, int criterion,
               const std::function<std::vector<VerifyResult>()>& body) {
  const auto start = Clock::now();
  std::vector<VerifyResult> rs;
  try {
    rs = body();
  } catch (const std::exception& e) {
    rs = {VerifyResult{name, criterion, CheckStatus::Fail, NAN, 0.0, 0.0, 0,
                       std::string("error: ") + e.what()}};
  }
  const std::int64_t ms = ms_since(start);
  for (auto& r : rs) {
    r.runtime_ms = ms;
    out.push_back(std::move(r));
  }
}

void runtime_check(std::vector<VerifyResult>& out, const std::string& name, int criterion,
                   Clock::time_point start, double limit_s) {
  const std::int64_t ms = ms_since(start);
  VerifyResult r = upper_bound(name, criterion, ms / 1000.0, limit_s, "seconds");
  r.runtime_ms = ms;
  out.push_back(std::move(r));
}

double exact_gamma_factor(double q) {
  if (q == 0.5) return 2.0;
  if (q == 1.0) return 1.0;
  if (q == 2.0) return 0.5 * std::sqrt(std::acos(-1.0));
  return std::tgamma(1.0 + 1.0 / q);
}

// ---------------------------------------------------------------------------

void suite_counterexample(std::vector<VerifyResult>& out, const VerifyOptions& opt) {
  const auto start = Clock::now();
  for (double q : opt.qs) {
    const std::string tag = "q=" + format_number(q);
    run_check(out, "gap_report", 1, [&] {
      const GapReport r = gap_report(q, 14, 20);
      const double gamma = std::tgamma(1.0 + 1.0 / q);
      return std::vector<VerifyResult>{
          make("dixmier_limit", 1, r.dixmier_limit, kDixmierConst, 1e-4, tag),
          make("tail_limit", 1, r.xi_over_gamma_limit, kTailConst, 1e-4, tag),
          make("gap_over_gamma", 1, r.gap / gamma, 1.0, 5e-4, tag),
          make("gamma_factor", 1, r.gamma_factor, exact_gamma_factor(q), 1e-6, tag)};
    });
  }
  runtime_check(out, "counterexample_runtime", 1, start, 5.0);
}

void suite_envelope(std::vector<VerifyResult>& out, const VerifyOptions&) {
  const auto start = Clock::now();
  const SpectralModel cx = SpectralModel::counterexample();
  std::vector<std::pair<double, double>> windows;
  for (int k = 8; k <= 14; ++k) windows.emplace_back(std::exp(k), std::exp(k + 1));
  const std::vector<double> bps = counterexample_breakpoints(windows.front().first,
                                                             windows.back().second);
  const std::pair<const char*, PointEvaluator> curves[] = {
      {"tail", [&](double u) { return tail_at(cx, u); }},
      {"dixmier", [&](double u) { return dixmier_at(cx, u); }}};
  for (const auto& [name, f] : curves) {
    const std::string n = name;
    run_check(out, n + "_envelope", 2, [&] {
      const LimitEstimate e = window_envelope(f, windows, bps);
      return std::vector<VerifyResult>{make(n + "_envelope_sup", 2, e.limsup_est, kTailConst, 1e-2),
                                       make(n + "_envelope_inf", 2, e.liminf_est, kDixmierConst, 1e-2)};
    });
  }
  runtime_check(out, "envelope_runtime", 2, start, 10.0);
}

void suite_convergent(std::vector<VerifyResult>& out, const VerifyOptions&) {
  const auto start = Clock::now();
  const SpectralModel h = SpectralModel::harmonic();
  const double u4 = std::log(1e4);
  run_check(out, "harmonic_zeta", 3,
            [&] { return std::vector{make("harmonic_zeta", 3, zeta_at(h, u4), 1.0, 2e-4, "t=1e4")}; });
  run_check(out, "harmonic_heat_q1", 3, [&] {
    return std::vector{make("harmonic_heat_q1", 3, heat_at(h, 1.0, u4), 1.0, 1e-4, "t=1e4")};
  });
  run_check(out, "harmonic_heat_q2", 3, [&] {
    return std::vector{make("harmonic_heat_q2", 3, heat_at(h, 2.0, std::log(1e3)),
                            exact_gamma_factor(2.0), 2e-3, "t=1e3")};
  });
  run_check(out, "harmonic_squarecut", 3, [&] {
    const TestFunction f = TestFunction::square_cut();
    return std::vector{make("harmonic_squarecut", 3, gheat_at(h, f, u4), weight_integral(f), 5e-3,
                            "t=1e4")};
  });
  runtime_check(out, "convergent_runtime", 3, start, 30.0);
}

void suite_weights(std::vector<VerifyResult>& out, const VerifyOptions&) {
  run_check(out, "weight_heatexp_1", 4, [] {
    return std::vector{make("weight_heatexp_1", 4, weight_integral(TestFunction::heat_exp(1.0)), 1.0, 1e-10)};
  });
  run_check(out, "weight_heatexp_2", 4, [] {
    return std::vector{make("weight_heatexp_2", 4, weight_integral(TestFunction::heat_exp(2.0)),
                            0.88622693, 1e-8)};
  });
  run_check(out, "weight_squarecut", 4, [] {
    return std::vector{make("weight_squarecut", 4, weight_integral(TestFunction::square_cut()), 1.0, 1e-12)};
  });
}

void suite_matrix(std::vector<VerifyResult>& out, const VerifyOptions& opt) {
  const auto start = Clock::now();
  for (InequalityFamily fam : {InequalityFamily::Power, InequalityFamily::Loewner,
                               InequalityFamily::Convex, InequalityFamily::Sandwich}) {
    const std::string name = "matrix_" + family_name(fam);
    run_check(out, name, 5, [&] {
      const InequalityReport r = run_inequality_suite(fam, opt.trials, opt.dim_max, opt.seed);
      std::string detail = "worst_margin " + format_number(r.worst_margin) + ", " +
                           std::to_string(r.failures.size()) + "/" + std::to_string(r.trials) +
                           " trials below -" + format_number(r.tolerance) + ", seed " +
                           std::to_string(r.seed);
      return std::vector{make(name, 5, static_cast<double>(r.failures.size()), 0.0, 0.0, detail)};
    });
  }
  runtime_check(out, "matrix_runtime", 5, start, 60.0);
}

// A random finite spectrum, and with probability 1/2 a companion built to be
// majorized by it (a convex mix of two permutations, scaled down).
std::pair<SpectralModel, SpectralModel> random_pair(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> value(0.01, 1.0);
  std::vector<double> a(size(rng));
  for (double& v : a) v = value(rng);
  std::vector<double> b;
  if (std::bernoulli_distribution(0.5)(rng)) {
    std::vector<double> p1 = a, p2 = a;
    std::shuffle(p1.begin(), p1.end(), rng);
    std::shuffle(p2.begin(), p2.end(), rng);
    const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double scale = std::uniform_real_distribution<double>(0.9, 1.0)(rng);
    for (std::size_t i = 0; i < a.size(); ++i)
      b.push_back(scale * (lambda * p1[i] + (1.0 - lambda) * p2[i]));
  } else {
    b.resize(size(rng));
    for (double& v : b) v = value(rng);
  }
  return {SpectralModel::finite(a), SpectralModel::finite(b)};
}

void suite_majorization(std::vector<VerifyResult>& out, const VerifyOptions& opt) {
  const auto start = Clock::now();
  run_check(out, "majorization_equivalence", 6, [&] {
    const LogGrid grid(-1.0, 3.0, 81);
    std::size_t disagree = 0;
    std::size_t majorized = 0;
    for (std::size_t i = 0; i < opt.trials; ++i) {
      const auto [a, b] = random_pair(trial_seed(opt.seed, i));
      const TailEquivalence t = tail_equivalence_check(a, b, grid);
      if (t.majorized != t.tail_dominated) ++disagree;
      if (t.majorized) ++majorized;
    }
    return std::vector{make("majorization_equivalence", 6, static_cast<double>(disagree), 0.0, 0.0,
                            std::to_string(opt.trials) + " pairs, " + std::to_string(majorized) +
                                " majorized")};
  });
  runtime_check(out, "majorization_runtime", 6, start, 10.0);
}

void suite_pi(std::vector<VerifyResult>& out, const VerifyOptions&) {
  run_check(out, "pi_indicator", 7, [] {
    const LimitEstimate e = pi_functional(PiProfile::log_width_indicator(), 8, 12);
    double worst = 1.0;
    for (const Probe& p : e.probes)
      if (std::abs(p.value - 1.0) > std::abs(worst - 1.0)) worst = p.value;
    return std::vector{make("pi_indicator", 7, worst, 1.0, 0.02, "probe farthest from 1, k=8..12")};
  });
  run_check(out, "pi_dilated", 7, [] {
    const LimitEstimate e = pi_functional(PiProfile::dilated_indicator(kE), 8, 12);
    double dev = 0.0;
    for (std::size_t i = 0; i < e.probes.size(); ++i)
      dev = std::max(dev, std::abs(e.probes[i].value - 1.0 / (8.0 + i)));
    return std::vector{make("pi_dilated_probe", 7, dev, 0.0, 0.02, "max |value - 1/k|, k=8..12"),
                       upper_bound("pi_dilated_limsup", 7, e.limsup_est, 2.0 / 8.0)};
  });
}

void suite_dichotomy(std::vector<VerifyResult>& out, const VerifyOptions&) {
  const SpectralModel cx = SpectralModel::counterexample();
  const PointEvaluator f = [&](double u) { return heat_at(cx, 1.0, u); };
  const double e14 = std::exp(14.0);
  run_check(out, "dichotomy_raw_unbounded", 8, [&] {
    const LogGrid g = LogGrid::with_spacing(e14, e14 + 14.0, 0.01);
    double best = 0.0;
    for (std::size_t i = 0; i < g.count(); ++i) best = std::max(best, f(g.at(i)));
    return std::vector{lower_bound("dichotomy_raw_unbounded", 8, best, 1e3, "max raw heat")};
  });
  run_check(out, "dichotomy_cesaro_bounded", 8, [&] {
    const LogGrid g = LogGrid::with_spacing(1.0, e14 + 14.0, 0.125);
    const CesaroSummary s = cesaro_summary(f, g, 1.0);
    return std::vector{upper_bound("dichotomy_cesaro_bounded", 8, s.max, 2.5,
                                   std::to_string(s.points) + " points")};
  });
}

void suite_karamata(std::vector<VerifyResult>& out, const VerifyOptions&) {
  const LogGrid grid(0.0, 10.0, 21);
  auto max_diff = [](const std::pair<Curve, Curve>& c) {
    double d = 0.0;
    for (std::size_t i = 0; i < c.first.values.size(); ++i)
      d = std::max(d, std::abs(c.first.values[i] - c.second.values[i]));
    return d;
  };
  run_check(out, "karamata_linear_q1", 9, [&] {
    return std::vector{make("karamata_linear_q1", 9, max_diff(karamata_compare(Beta{}, 1.0, grid)),
                            0.0, 1e-10)};
  });
  run_check(out, "karamata_linear_q2", 9, [&] {
    return std::vector{make("karamata_linear_q2", 9, max_diff(karamata_compare(Beta{}, 2.0, grid)),
                            0.0, 1e-8)};
  });
  run_check(out, "karamata_harmonic", 9, [&] {
    const SpectralModel h = SpectralModel::harmonic();
    Beta beta;
    beta.kind = Beta::Kind::Distribution;
    beta.model = &h;
    const double u = std::log(1e4);
    const auto c = karamata_compare(beta, 1.0, LogGrid(u - 1.0, u, 2));
    return std::vector{make("karamata_harmonic", 9,
                            std::abs(c.first.values.back() - c.second.values.back()), 0.0, 1e-3,
                            "t=1e4, q=1")};
  });
}

void suite_oracles(std::vector<VerifyResult>& out, const VerifyOptions&) {
  const SpectralModel trunc = SpectralModel::explicit_steps(cx::truncation(4));
  auto rel = [](double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
  };
  // Sample points plus the plateau boundaries where the truncation agrees.
  auto points = [](double lo, double hi) {
    std::vector<double> us;
    for (double u = lo; u <= hi; u += 0.25) us.push_back(u);
    for (int k = 1; k <= 4; ++k) {
      const double b = cx::log_right(k);
      if (b >= lo && b <= hi) us.insert(us.end(), {b, std::nextafter(b, -INFINITY)});
    }
    for (int n = 1; n <= 4; ++n) us.push_back(std::exp(static_cast<double>(n)));
    return us;
  };
  run_check(out, "oracle_partial_integral", 10, [&] {
    double worst = 0.0;
    for (double u : points(-5.0, cx::log_right(4) - 1e-9))
      worst = std::max(worst, rel(partial_integral_log(trunc, u), cx::partial_integral(u)));
    return std::vector{make("oracle_partial_integral", 10, worst, 0.0, 1e-12, "4-plateau truncation")};
  });
  run_check(out, "oracle_tail_trace", 10, [&] {
    // Plateau 5 enters the tail trace once e^-u drops below its value, at u = e^5.
    double worst = 0.0;
    for (double u : points(-5.0, std::exp(5.0) - 1e-6))
      worst = std::max(worst, rel(tail_trace_log(trunc, u), cx::tail_trace(u)));
    return std::vector{make("oracle_tail_trace", 10, worst, 0.0, 1e-12, "4-plateau truncation")};
  });
  run_check(out, "oracle_lidskii", 10, [] {
    const SpectralModel h = SpectralModel::harmonic();
    double worst = 0.0;
    for (double t : {1e2, 1e4, 1e6}) {
      const double u = std::log(t);
      const LogGrid g(u, u + 1.0, 2);
      const double curve = lidskii_curve(h, g).values.front();
      const double level = u / std::exp(u);
      double brute = 0.0;
      const auto n_max = static_cast<std::uint64_t>(2.0 / level) + 2;
      for (std::uint64_t n = 1; n <= n_max; ++n) {
        const double ev = 1.0 / static_cast<double>(n);
        if (ev > level) brute += ev;
      }
      worst = std::max(worst, std::abs(curve - brute / u));
    }
    return std::vector{make("oracle_lidskii", 10, worst, 0.0, 0.0, "t in {1e2, 1e4, 1e6}")};
  });
}

using SuiteFn = void (*)(std::vector<VerifyResult>&, const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> s = {
      {"counterexample", suite_counterexample}, {"envelope", suite_envelope},
      {"convergent", suite_convergent},         {"weights", suite_weights},
      {"matrix", suite_matrix},                 {"majorization", suite_majorization},
      {"pi", suite_pi},                         {"dichotomy", suite_dichotomy},
      {"karamata", suite_karamata},             {"oracles", suite_oracles}};
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& s : suites()) n.push_back(s.first);
    n.push_back("all");
    return n;
  }();
  return names;
}

std::vector<VerifyResult> run_suite(const std::string& suite, const VerifyOptions& options) {
  if (options.qs.empty()) throw std::invalid_argument("verify: empty q list");
  for (double q : options.qs)
    if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("verify: q must be positive");
  std::vector<VerifyResult> out;
  bool found = false;
  for (const auto& [name, fn] : suites()) {
    if (suite == "all" || suite == name) {
      fn(out, options);
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("verify: unknown suite '" + suite + "'");
  return out;
}

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
  }
  return "skip";
}

std::string results_to_json(const std::vector<VerifyResult>& results) {
  auto num = [](double x) -> nlohmann::json {
    if (std::isfinite(x)) return x;
    return format_number(x);
  };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    arr.push_back({{"check_name", r.check_name},
                   {"criterion", r.criterion},
                   {"status", status_name(r.status)},
                   {"measured", num(r.measured)},
                   {"expected", num(r.expected)},
                   {"tolerance", num(r.tolerance)},
                   {"runtime_ms", r.runtime_ms},
                   {"detail", r.detail}});
  }
  return arr.dump(2);
}

}  // namespace singtrace
