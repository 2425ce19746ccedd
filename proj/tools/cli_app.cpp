#include "cli_app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "singtrace/singtrace.h"

namespace singtrace::cli {

namespace {

struct StringDeleter {
  void operator()(char* s) const { st_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ModelDeleter {
  void operator()(st_model* m) const { st_model_free(m); }
};
using OwnedModel = std::unique_ptr<st_model, ModelDeleter>;

struct CurveDeleter {
  void operator()(st_curve* c) const { st_curve_free(c); }
};

// Configuration problems exit with 2; failed computations with 1.
int exit_code_for(st_status s) {
  switch (s) {
    case ST_OK: return kExitPass;
    case ST_E_DOMAIN:
    case ST_E_PARSE:
    case ST_E_UNSUPPORTED:
    case ST_E_IO:
    case ST_E_ARGUMENT: return kExitUsage;
    case ST_E_NUMERIC:
    case ST_E_INTERNAL: return kExitFail;
  }
  return kExitFail;
}

int report_error(st_status s, const std::string& context) {
  std::cerr << "singtrace: " << context << ": " << st_last_error() << "\n";
  return exit_code_for(s);
}

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    std::cout.flush();
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int emit(const std::string& path, const std::string& text) {
  if (write_text(path, text)) return kExitPass;
  std::cerr << "singtrace: cannot write '" << path << "'\n";
  return kExitUsage;
}

std::optional<std::string> validate_grid(const RunConfig& c) {
  if (!std::isfinite(c.u_min) || !std::isfinite(c.u_max)) return "grid bounds must be finite";
  if (!(c.u_min < c.u_max)) return "--umin must be smaller than --umax";
  if (c.points < 2) return "--points must be at least 2";
  if (c.points > 10'000'000) return "--points must not exceed 10000000";
  return std::nullopt;
}

OwnedModel load(const std::string& arg, int& code) {
  st_model* m = nullptr;
  const st_status s = st_model_load(arg.c_str(), &m);
  if (s != ST_OK) {
    code = report_error(s, "model '" + arg + "'");
    return nullptr;
  }
  return OwnedModel(m);
}

int run_curve(const RunConfig& c) {
  int code = kExitPass;
  OwnedModel model = load(c.model, code);
  if (!model) return code;
  const double q = c.qs.empty() ? 1.0 : c.qs.front();
  st_curve* raw = nullptr;
  st_status s = st_curve_compute(model.get(), c.functional.c_str(), q,
                                 c.f_spec.empty() ? nullptr : c.f_spec.c_str(), c.u_min, c.u_max,
                                 c.points, &raw);
  if (s != ST_OK) return report_error(s, "curve " + c.functional);
  std::unique_ptr<st_curve, CurveDeleter> curve(raw);
  char* text = nullptr;
  s = c.format == "json" ? st_curve_to_json(curve.get(), &text) : st_curve_to_csv(curve.get(), &text);
  if (s != ST_OK) return report_error(s, "serialization");
  OwnedString owned(text);
  return emit(c.output, owned.get());
}

void print_verify_table(const std::string& json_text) {
  const auto results = nlohmann::json::parse(json_text);
  std::size_t failed = 0;
  for (const auto& r : results) {
    const std::string status = r["status"].get<std::string>();
    if (status != "pass") ++failed;
    std::fprintf(stderr, "[%s] criterion %2d  %-28s measured %s expected %s tol %s  (%s)\n",
                 status.c_str(), r["criterion"].get<int>(),
                 r["check_name"].get<std::string>().c_str(), r["measured"].dump().c_str(),
                 r["expected"].dump().c_str(), r["tolerance"].dump().c_str(),
                 r["detail"].get<std::string>().c_str());
  }
  std::fprintf(stderr, "%zu checks, %zu failed\n", results.size(), failed);
}

int run_verify(const RunConfig& c) {
  int all_pass = 0;
  char* text = nullptr;
  const st_status s = st_verify(c.suite.c_str(), c.qs.empty() ? nullptr : c.qs.data(),
                                c.qs.size(), &all_pass, &text);
  if (s != ST_OK) return report_error(s, "verify");
  OwnedString owned(text);
  print_verify_table(owned.get());
  const int code = emit(c.output, owned.get());
  if (code != kExitPass) return code;
  return all_pass ? kExitPass : kExitFail;
}

int run_majorize(const RunConfig& c) {
  int code = kExitPass;
  OwnedModel a = load(c.model, code);
  if (!a) return code;
  OwnedModel b = load(c.model_b, code);
  if (!b) return code;
  int verdict = 0;
  char* text = nullptr;
  const st_status s = st_majorize(a.get(), b.get(), c.u_min, c.u_max, c.points, &verdict, &text);
  if (s != ST_OK) return report_error(s, "majorize");
  OwnedString owned(text);
  code = emit(c.output, owned.get());
  if (code != kExitPass) return code;
  return verdict ? kExitPass : kExitFail;
}

int run_counterexample(const RunConfig& c) {
  const double q = c.qs.empty() ? 1.0 : c.qs.front();
  char* json_text = nullptr;
  char* csv_text = nullptr;
  const st_status s = st_counterexample_report(q, c.k_min, c.k_max, &json_text, &csv_text);
  if (s != ST_OK) return report_error(s, "counterexample");
  OwnedString json_owned(json_text);
  OwnedString csv_owned(csv_text);
  if (!c.csv_output.empty()) {
    const int code = emit(c.csv_output, csv_owned.get());
    if (code != kExitPass) return code;
  }
  return emit(c.output, c.format == "csv" ? csv_owned.get() : json_owned.get());
}

int run_matrix_suite(const RunConfig& c) {
  int all_pass = 0;
  char* text = nullptr;
  const st_status s =
      st_matrix_suite(c.family.c_str(), c.trials, c.dim_max, c.seed, &all_pass, &text);
  if (s != ST_OK) return report_error(s, "matrix-suite");
  OwnedString owned(text);
  const int code = emit(c.output, owned.get());
  if (code != kExitPass) return code;
  return all_pass ? kExitPass : kExitFail;
}

void add_grid_options(CLI::App* app, RunConfig& c) {
  app->add_option("--umin", c.u_min, "Grid start in u = log t")->capture_default_str();
  app->add_option("--umax", c.u_max, "Grid end in u = log t")->capture_default_str();
  app->add_option("--points", c.points, "Number of grid points")->capture_default_str();
}

void add_output_options(CLI::App* app, RunConfig& c, const std::string& default_format) {
  c.format = default_format;
  app->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--output,-o", c.output, "Output file (default: stdout)");
}

}  // namespace

std::optional<int> parse_args(int argc, char** argv, RunConfig& config) {
  CLI::App app{"Numerical laboratory for singular traces and heat-kernel functionals"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(st_version()));

  RunConfig curve_cfg, verify_cfg, major_cfg, cx_cfg, matrix_cfg;

  auto* curve = app.add_subcommand("curve", "Sample a spectral functional on a log grid");
  curve->add_option("--model", curve_cfg.model,
                    "Model JSON file, inline JSON, 'harmonic' or 'counterexample'")
      ->required();
  curve->add_option("--functional", curve_cfg.functional,
                    "zeta|heat|gheat|dixmier|tail|lidskii, optionally as cesaro-of:<name>")
      ->required();
  curve->add_option("--q", curve_cfg.qs, "Heat exponent")->expected(1);
  curve->add_option("--f", curve_cfg.f_spec, "Test function for gheat: heatexp:<q>|squarecut|tailind");
  add_grid_options(curve, curve_cfg);
  add_output_options(curve, curve_cfg, "csv");

  auto* verify = app.add_subcommand("verify", "Run check suites");
  verify->add_option("--suite", verify_cfg.suite,
                     "counterexample|envelope|convergent|weights|matrix|majorization|pi|"
                     "dichotomy|karamata|oracles|all")
      ->capture_default_str();
  verify->add_option("--q", verify_cfg.qs, "Heat exponents for the counterexample suite");
  add_output_options(verify, verify_cfg, "json");

  auto* major = app.add_subcommand("majorize", "Check b << a (Hardy-Littlewood)");
  major->add_option("--a", major_cfg.model, "Majorizing model")->required();
  major->add_option("--b", major_cfg.model_b, "Majorized candidate")->required();
  add_grid_options(major, major_cfg);
  add_output_options(major, major_cfg, "json");

  auto* cx = app.add_subcommand("counterexample", "Gap report for the counterexample operator");
  cx->add_option("--q", cx_cfg.qs, "Heat exponent")->expected(1);
  cx->add_option("--k-min", cx_cfg.k_min, "First probe index")->capture_default_str();
  cx->add_option("--k-max", cx_cfg.k_max, "Last probe index")->capture_default_str();
  cx->add_option("--csv", cx_cfg.csv_output, "Also write the probe table CSV here");
  add_output_options(cx, cx_cfg, "json");

  auto* matrix = app.add_subcommand("matrix-suite", "Randomized matrix trace inequality suites");
  matrix->add_option("--trials", matrix_cfg.trials, "Trials per family")->capture_default_str();
  matrix->add_option("--dim-max", matrix_cfg.dim_max, "Largest dimension")->capture_default_str();
  matrix->add_option("--seed", matrix_cfg.seed, "Base seed")->capture_default_str();
  matrix->add_option("--family", matrix_cfg.family, "power|loewner|convex|sandwich|all")
      ->check(CLI::IsMember({"power", "loewner", "convex", "sandwich", "all"}))
      ->capture_default_str();
  add_output_options(matrix, matrix_cfg, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (curve->parsed()) {
    config = curve_cfg;
    config.command = Command::Curve;
  } else if (verify->parsed()) {
    config = verify_cfg;
    config.command = Command::Verify;
  } else if (major->parsed()) {
    config = major_cfg;
    config.command = Command::Majorize;
  } else if (cx->parsed()) {
    config = cx_cfg;
    config.command = Command::Counterexample;
  } else {
    config = matrix_cfg;
    config.command = Command::MatrixSuite;
  }

  if (config.command == Command::Curve || config.command == Command::Majorize) {
    if (auto err = validate_grid(config)) {
      std::cerr << "singtrace: " << *err << "\n";
      return kExitUsage;
    }
  }
  for (double q : config.qs) {
    if (!(q > 0.0) || !std::isfinite(q)) {
      std::cerr << "singtrace: --q must be positive\n";
      return kExitUsage;
    }
  }
  if (config.command == Command::Counterexample && (config.k_min < 1 || config.k_max < config.k_min + 3)) {
    std::cerr << "singtrace: need 1 <= --k-min and at least 4 probes\n";
    return kExitUsage;
  }
  if (config.command == Command::MatrixSuite && (config.trials == 0 || config.dim_max < 2 || config.dim_max > 64)) {
    std::cerr << "singtrace: need --trials >= 1 and 2 <= --dim-max <= 64\n";
    return kExitUsage;
  }
  return std::nullopt;
}

int run(const RunConfig& config) {
  switch (config.command) {
    case Command::Curve: return run_curve(config);
    case Command::Verify: return run_verify(config);
    case Command::Majorize: return run_majorize(config);
    case Command::Counterexample: return run_counterexample(config);
    case Command::MatrixSuite: return run_matrix_suite(config);
  }
  return kExitUsage;
}

}  // namespace singtrace::cli
