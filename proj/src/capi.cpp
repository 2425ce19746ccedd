#include "singtrace/singtrace.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "singtrace/asymptotics.hpp"
#include "singtrace/errors.hpp"
#include "singtrace/functionals.hpp"
#include "singtrace/io.hpp"
#include "singtrace/matrixlab.hpp"
#include "singtrace/stepfn.hpp"
#include "singtrace/verify.hpp"

struct st_model {
  singtrace::SpectralModel model;
};

struct st_curve {
  singtrace::Curve curve;
};

namespace {

thread_local std::string g_last_error;

st_status fail(st_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <class F>
st_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return ST_OK;
  } catch (const singtrace::unsupported_kind& e) {
    return fail(ST_E_UNSUPPORTED, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ST_E_PARSE, e.what());
  } catch (const std::domain_error& e) {
    return fail(ST_E_DOMAIN, e.what());
  } catch (const singtrace::numeric_error& e) {
    return fail(ST_E_NUMERIC, e.what());
  } catch (const singtrace::io_error& e) {
    return fail(ST_E_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ST_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ST_E_INTERNAL, e.what());
  } catch (...) {
    return fail(ST_E_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

#define ST_REQUIRE(cond) \
  do {                   \
    if (!(cond)) return fail(ST_E_ARGUMENT, "null argument: " #cond); \
  } while (0)

singtrace::Curve base_curve(const singtrace::SpectralModel& m, const std::string& functional,
                            double q, const char* f_spec, const singtrace::LogGrid& grid) {
  using namespace singtrace;
  if (functional == "zeta") return zeta_curve(m, grid);
  if (functional == "heat") return heat_curve(m, q, grid);
  if (functional == "gheat") {
    if (!f_spec) throw std::invalid_argument("gheat needs a test function");
    return generalized_heat_curve(m, TestFunction::parse(f_spec), grid);
  }
  if (functional == "dixmier") return dixmier_curve(m, grid);
  if (functional == "tail") return tail_curve(m, grid);
  if (functional == "lidskii") return lidskii_curve(m, grid);
  throw std::invalid_argument("unknown functional '" + functional + "'");
}

}  // namespace

extern "C" {

const char* st_version(void) { return "0.1.0"; }

const char* st_last_error(void) { return g_last_error.c_str(); }

void st_string_free(char* s) { std::free(s); }

st_status st_model_from_json(const char* json, st_model** out) {
  ST_REQUIRE(json && out);
  *out = nullptr;
  return guard([&] { *out = new st_model{singtrace::model_from_json(json)}; });
}

st_status st_model_load(const char* path_or_name, st_model** out) {
  ST_REQUIRE(path_or_name && out);
  *out = nullptr;
  return guard([&] {
    const std::string arg = path_or_name;
    std::error_code ec;
    const bool is_file = std::filesystem::exists(arg, ec);
    if (!is_file && arg == "harmonic") {
      *out = new st_model{singtrace::SpectralModel::harmonic()};
    } else if (!is_file && arg == "counterexample") {
      *out = new st_model{singtrace::SpectralModel::counterexample()};
    } else if (!is_file && !arg.empty() && arg.front() == '{') {
      *out = new st_model{singtrace::model_from_json(arg)};
    } else {
      *out = new st_model{singtrace::load_model(arg)};
    }
  });
}

void st_model_free(st_model* m) { delete m; }

st_status st_model_kind(const st_model* m, char** out) {
  ST_REQUIRE(m && out);
  return guard([&] { *out = dup_string(m->model.name()); });
}

st_status st_model_to_json(const st_model* m, char** out) {
  ST_REQUIRE(m && out);
  return guard([&] { *out = dup_string(singtrace::model_to_json(m->model)); });
}

st_status st_model_mu(const st_model* m, double t, double* out) {
  ST_REQUIRE(m && out);
  return guard([&] { *out = singtrace::mu_at(m->model, t); });
}

st_status st_model_distribution(const st_model* m, double s, double* out) {
  ST_REQUIRE(m && out);
  return guard([&] { *out = singtrace::distribution(m->model, s); });
}

st_status st_model_partial_integral(const st_model* m, double t, double* out) {
  ST_REQUIRE(m && out);
  return guard([&] { *out = singtrace::partial_integral(m->model, t); });
}

st_status st_model_tail_trace(const st_model* m, double t, double* out) {
  ST_REQUIRE(m && out);
  return guard([&] { *out = singtrace::tail_trace(m->model, t); });
}

st_status st_model_marcinkiewicz_norm(const st_model* m, double u_max, double* out) {
  ST_REQUIRE(m && out);
  return guard([&] { *out = singtrace::marcinkiewicz_norm(m->model, u_max); });
}

st_status st_curve_compute(const st_model* m, const char* functional, double q,
                           const char* f_spec, double u_min, double u_max, size_t count,
                           st_curve** out) {
  ST_REQUIRE(m && functional && out);
  *out = nullptr;
  return guard([&] {
    const singtrace::LogGrid grid(u_min, u_max, count);
    std::string name = functional;
    const std::string prefix = "cesaro-of:";
    if (name.rfind(prefix, 0) == 0) {
      const singtrace::Curve base =
          base_curve(m->model, name.substr(prefix.size()), q, f_spec, grid);
      *out = new st_curve{singtrace::cesaro(base)};
    } else {
      *out = new st_curve{base_curve(m->model, name, q, f_spec, grid)};
    }
  });
}

void st_curve_free(st_curve* c) { delete c; }

st_status st_curve_size(const st_curve* c, size_t* out) {
  ST_REQUIRE(c && out);
  *out = c->curve.values.size();
  return ST_OK;
}

st_status st_curve_values(const st_curve* c, const double** values, size_t* count) {
  ST_REQUIRE(c && values && count);
  *values = c->curve.values.data();
  *count = c->curve.values.size();
  return ST_OK;
}

st_status st_curve_u(const st_curve* c, size_t i, double* out) {
  ST_REQUIRE(c && out);
  if (i >= c->curve.grid.count()) return fail(ST_E_DOMAIN, "curve index out of range");
  *out = c->curve.grid.at(i);
  return ST_OK;
}

st_status st_curve_to_csv(const st_curve* c, char** out) {
  ST_REQUIRE(c && out);
  return guard([&] { *out = dup_string(singtrace::curve_to_csv(c->curve)); });
}

st_status st_curve_to_json(const st_curve* c, char** out) {
  ST_REQUIRE(c && out);
  return guard([&] { *out = dup_string(singtrace::curve_to_json(c->curve)); });
}

st_status st_curve_from_json(const char* json, st_curve** out) {
  ST_REQUIRE(json && out);
  *out = nullptr;
  return guard([&] { *out = new st_curve{singtrace::curve_from_json(json)}; });
}

st_status st_weight_integral(const char* f_spec, double* out) {
  ST_REQUIRE(f_spec && out);
  return guard([&] { *out = singtrace::weight_integral(singtrace::TestFunction::parse(f_spec)); });
}

st_status st_majorize(const st_model* a, const st_model* b, double u_min, double u_max,
                      size_t count, int* verdict, char** report_json) {
  ST_REQUIRE(a && b && verdict);
  return guard([&] {
    const singtrace::LogGrid grid(u_min, u_max, count);
    const auto report = singtrace::majorizes(a->model, b->model, grid);
    const auto tail = singtrace::tail_equivalence_check(a->model, b->model, grid);
    *verdict = report.verdict ? 1 : 0;
    if (report_json) *report_json = dup_string(singtrace::majorization_to_json(report, tail));
  });
}

st_status st_counterexample_report(double q, int k_min, int k_max, char** report_json,
                                   char** probes_csv) {
  return guard([&] {
    const auto r = singtrace::gap_report(q, k_min, k_max);
    std::unique_ptr<char, decltype(&std::free)> json(
        report_json ? dup_string(singtrace::gap_report_to_json(r)) : nullptr, &std::free);
    if (probes_csv) *probes_csv = dup_string(singtrace::gap_probes_to_csv(r));
    if (report_json) *report_json = json.release();
  });
}

st_status st_matrix_suite(const char* family, size_t trials, size_t dim_max, uint64_t seed,
                          int* all_pass, char** report_json) {
  ST_REQUIRE(family && all_pass);
  return guard([&] {
    using namespace singtrace;
    std::vector<InequalityFamily> families;
    if (std::string(family) == "all") {
      families = {InequalityFamily::Power, InequalityFamily::Loewner, InequalityFamily::Convex,
                  InequalityFamily::Sandwich};
    } else {
      families = {parse_family(family)};
    }
    std::vector<InequalityReport> reports;
    bool pass = true;
    for (auto f : families) {
      reports.push_back(run_inequality_suite(f, trials, dim_max, seed));
      pass = pass && reports.back().pass();
    }
    *all_pass = pass ? 1 : 0;
    if (report_json) *report_json = dup_string(inequality_reports_to_json(reports));
  });
}

st_status st_verify(const char* suite, const double* qs, size_t n_qs, int* all_pass,
                    char** results_json) {
  ST_REQUIRE(suite && all_pass);
  return guard([&] {
    singtrace::VerifyOptions opt;
    if (qs && n_qs > 0) opt.qs.assign(qs, qs + n_qs);
    const auto results = singtrace::run_suite(suite, opt);
    bool pass = true;
    for (const auto& r : results) pass = pass && r.status == singtrace::CheckStatus::Pass;
    *all_pass = pass ? 1 : 0;
    if (results_json) *results_json = dup_string(singtrace::results_to_json(results));
  });
}

}  // extern "C"
