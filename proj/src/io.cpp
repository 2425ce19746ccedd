#include "singtrace/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "singtrace/errors.hpp"

namespace singtrace {

using nlohmann::json;

namespace {

// Line and column of a byte offset, both 1-based.
std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": syntax error at " +
                                location(text, e.byte) + ": " + e.what());
  }
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("model: missing field '") + key + "'");
  if (!j[key].is_number())
    throw std::invalid_argument(std::string("model: field '") + key + "' must be a number");
  return j[key].get<double>();
}

// Non-finite values (inf, nan) have no JSON literal; write them as strings.
json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  throw std::invalid_argument("curve: expected a number");
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

SpectralModel model_from_json(const std::string& text) {
  const json j = parse_json(text, "model");
  if (!j.is_object()) throw std::invalid_argument("model: top level must be an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("model: missing string field 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "harmonic") return SpectralModel::harmonic();
    if (kind == "counterexample") {
      const int k_max = j.contains("k_max") ? j["k_max"].get<int>() : 64;
      return SpectralModel::counterexample(k_max);
    }
    if (kind == "power") return SpectralModel::power_tail(number_field(j, "c"), number_field(j, "p"));
    if (kind == "finite") {
      if (!j.contains("values") || !j["values"].is_array())
        throw std::invalid_argument("model: finite kind needs an array 'values'");
      std::vector<double> values;
      for (std::size_t i = 0; i < j["values"].size(); ++i) {
        if (!j["values"][i].is_number())
          throw std::invalid_argument("model: values[" + std::to_string(i) + "] is not a number");
        values.push_back(j["values"][i].get<double>());
      }
      return SpectralModel::finite(values);
    }
    if (kind == "explicit") {
      if (!j.contains("plateaus") || !j["plateaus"].is_array())
        throw std::invalid_argument("model: explicit kind needs an array 'plateaus'");
      std::vector<Plateau> ps;
      for (std::size_t i = 0; i < j["plateaus"].size(); ++i) {
        const json& p = j["plateaus"][i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
          throw std::invalid_argument("model: plateaus[" + std::to_string(i) +
                                      "] must be a pair [u_right, w]");
        ps.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      return SpectralModel::explicit_steps(StepFunction(std::move(ps)));
    }
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("model: ") + e.what());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model: ") + e.what());
  }
  throw std::invalid_argument("model: unknown kind '" + kind + "'");
}

SpectralModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot read model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return model_from_json(ss.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string model_to_json(const SpectralModel& model) {
  json j;
  j["kind"] = model.name();
  if (auto* f = std::get_if<FiniteSpectrum>(&model.kind())) {
    json values = json::array();
    for (std::size_t i = 0; i < f->values.size(); ++i)
      for (std::size_t m = 0; m < f->multiplicity[i]; ++m) values.push_back(f->values[i]);
    j["values"] = values;
  } else if (auto* e = std::get_if<ExplicitSteps>(&model.kind())) {
    json ps = json::array();
    for (const Plateau& p : e->steps.plateaus()) ps.push_back({p.u_right, p.w});
    j["plateaus"] = ps;
  } else if (auto* p = std::get_if<PowerTail>(&model.kind())) {
    j["c"] = p->c;
    j["p"] = p->p;
  } else if (auto* c = std::get_if<CounterexampleKind>(&model.kind())) {
    j["k_max"] = c->k_max;
  }
  return j.dump();
}

std::string curve_to_csv(const Curve& c) {
  std::string out = "u,t_is_exp_u,value\n";
  out.reserve(out.size() + c.values.size() * 64);
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    const double u = c.grid.at(i);
    out += format_number(u);
    out += ',';
    out += format_number(std::exp(u));
    out += ',';
    out += format_number(c.values[i]);
    out += '\n';
  }
  return out;
}

std::string curve_to_json(const Curve& c) {
  json j;
  j["functional"] = c.functional;
  j["params"] = c.params;
  json meta = json::object();
  for (const auto& [k, v] : c.metadata) meta[k] = number_json(v);
  j["metadata"] = meta;
  j["grid"] = {{"u_min", c.grid.u_min()}, {"u_max", c.grid.u_max()}, {"count", c.grid.count()}};
  json values = json::array();
  for (double v : c.values) values.push_back(number_json(v));
  j["values"] = values;
  return j.dump();
}

Curve curve_from_json(const std::string& text) {
  const json j = parse_json(text, "curve");
  try {
    const json& g = j.at("grid");
    Curve c{LogGrid(g.at("u_min").get<double>(), g.at("u_max").get<double>(),
                    g.at("count").get<std::size_t>()),
            {}, j.at("functional").get<std::string>(), {}, {}};
    if (j.contains("params")) c.params = j["params"].get<std::map<std::string, std::string>>();
    if (j.contains("metadata"))
      for (const auto& [k, v] : j["metadata"].items()) c.metadata[k] = number_from(v);
    for (const json& v : j.at("values")) c.values.push_back(number_from(v));
    if (c.values.size() != c.grid.count())
      throw std::invalid_argument("curve: value count does not match the grid");
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("curve: ") + e.what());
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("curve: ") + e.what());
  }
}

std::string majorization_to_json(const MajorizationReport& r, const TailEquivalence& t) {
  json cps = json::array();
  for (const auto& c : r.checkpoints) cps.push_back({{"u", c.u}, {"lhs", c.lhs}, {"rhs", c.rhs}});
  json j;
  j["verdict"] = r.verdict;
  j["worst_margin"] = number_json(r.worst_margin);
  j["tolerance"] = r.tolerance;
  j["tail_dominated"] = t.tail_dominated;
  j["tail_margin"] = number_json(t.tail_margin);
  j["checkpoints"] = cps;
  return j.dump(2);
}

std::string inequality_reports_to_json(const std::vector<InequalityReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    arr.push_back({{"family", r.family},
                   {"trials", r.trials},
                   {"seed", r.seed},
                   {"worst_margin", number_json(r.worst_margin)},
                   {"tolerance", r.tolerance},
                   {"failures", r.failures},
                   {"pass", r.pass()}});
  }
  return arr.dump(2);
}

namespace {

json limit_json(const LimitEstimate& e) {
  json probes = json::array();
  for (const auto& p : e.probes) probes.push_back({{"u", p.u}, {"value", p.value}});
  json j{{"probes", probes},
         {"liminf_est", e.liminf_est},
         {"limsup_est", e.limsup_est},
         {"converged", e.converged},
         {"tolerance", e.tolerance}};
  if (e.extrapolated) j["extrapolated"] = *e.extrapolated;
  return j;
}

}  // namespace

std::string gap_report_to_json(const GapReport& r) {
  json j{{"q", r.q},
         {"dixmier_limit", r.dixmier_limit},
         {"xi_over_gamma_limit", r.xi_over_gamma_limit},
         {"gamma_factor", r.gamma_factor},
         {"gamma_direct", r.gamma_direct},
         {"gap", r.gap},
         {"dixmier", limit_json(r.dixmier)},
         {"tail", limit_json(r.tail)}};
  return j.dump(2);
}

std::string gap_probes_to_csv(const GapReport& r) {
  std::string out = "k,u,dixmier,tail\n";
  for (std::size_t i = 0; i < r.dixmier.probes.size(); ++i) {
    const double u = r.dixmier.probes[i].u;
    const int k = static_cast<int>(std::lround(std::log(u)));
    out += std::to_string(k) + ',' + format_number(u) + ',' +
           format_number(r.dixmier.probes[i].value) + ',' + format_number(r.tail.probes[i].value) +
           '\n';
  }
  return out;
}

}  // namespace singtrace
