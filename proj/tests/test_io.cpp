#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "singtrace/errors.hpp"
#include "singtrace/io.hpp"
#include "singtrace/verify.hpp"

using namespace singtrace;

TEST_CASE("model json kinds") {
  CHECK(model_from_json(R"({"kind":"harmonic"})").name() == "harmonic");
  CHECK(model_from_json(R"({"kind":"counterexample"})").name() == "counterexample");
  const SpectralModel p = model_from_json(R"({"kind":"power","c":2,"p":1.5})");
  CHECK(std::get<PowerTail>(p.kind()).c == 2.0);
  const SpectralModel f = model_from_json(R"({"kind":"finite","values":[1,0.5,0.5]})");
  const auto& fs = std::get<FiniteSpectrum>(f.kind());
  REQUIRE(fs.values.size() == 2);
  CHECK(fs.multiplicity[1] == 2);
  const SpectralModel e = model_from_json(R"({"kind":"explicit","plateaus":[[0,0],[1,-1]]})");
  CHECK(e.steps()->size() == 2);
}

TEST_CASE("model json errors") {
  auto message = [](const std::string& text) {
    try {
      model_from_json(text);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"kind":"explicit","plateaus":[[0,0],[-1,1]]})").find("plateau 1") !=
        std::string::npos);
  CHECK(message("{\"kind\":\"finite\",\n\"values\":[1,}").find("line 2") != std::string::npos);
  CHECK(message(R"({"kind":"power","c":1})").find("'p'") != std::string::npos);
  CHECK(message(R"({"kind":"finite","values":[1,"x"]})").find("values[1]") != std::string::npos);
  CHECK(message(R"({"kind":"nope"})").find("unknown kind") != std::string::npos);
  CHECK(message(R"([1,2])").find("object") != std::string::npos);
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), io_error);
}

TEST_CASE("model json round trip") {
  const SpectralModel f = model_from_json(R"({"kind":"finite","values":[1,0.5,0.5]})");
  const SpectralModel g = model_from_json(model_to_json(f));
  CHECK(std::get<FiniteSpectrum>(g.kind()).multiplicity[1] == 2);
}

TEST_CASE("number format") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(std::strtod(format_number(M_PI).c_str(), nullptr) == M_PI);
}

TEST_CASE("curve csv") {
  Curve c{LogGrid(0.0, 1.0, 3), {1.0, 0.5, 1.0 / 3.0}, "test", {}, {}};
  const std::string csv = curve_to_csv(c);
  CHECK(csv.rfind("u,t_is_exp_u,value\n", 0) == 0);
  CHECK(csv.find("0.5,1.6487212707001282,0.5\n") != std::string::npos);
  CHECK(csv.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("curve json round trip is bit exact") {
  const SpectralModel h = SpectralModel::harmonic();
  const Curve c = heat_curve(h, 1.0, LogGrid(0.0, 9.0, 257));
  const Curve d = curve_from_json(curve_to_json(c));
  REQUIRE(d.values.size() == c.values.size());
  for (std::size_t i = 0; i < c.values.size(); ++i) CHECK(d.values[i] == c.values[i]);
  CHECK(d.grid.u_min() == c.grid.u_min());
  CHECK(d.grid.u_max() == c.grid.u_max());
  CHECK(d.params == c.params);
  CHECK(d.metadata == c.metadata);
  CHECK_THROWS_AS(curve_from_json("{}"), std::invalid_argument);
}

TEST_CASE("verify runner") {
  const auto r = run_suite("weights");
  REQUIRE(r.size() == 3);
  for (const auto& x : r) {
    CHECK(x.criterion == 4);
    CHECK(x.status == CheckStatus::Pass);
    CHECK((std::abs(x.measured - x.expected) <= x.tolerance) == (x.status == CheckStatus::Pass));
  }
  CHECK_THROWS_AS(run_suite("bogus"), std::invalid_argument);
  VerifyOptions opt;
  opt.qs = {1.0};
  const auto cx = run_suite("counterexample", opt);
  bool found = false;
  for (const auto& x : cx) {
    if (x.check_name == "dixmier_limit") {
      found = true;
      CHECK(x.status == CheckStatus::Pass);
      CHECK(x.measured == doctest::Approx(0.581977).epsilon(1e-4));
    }
  }
  CHECK(found);
  CHECK(results_to_json(r).find("\"status\": \"pass\"") != std::string::npos);
  CHECK(suite_names().back() == "all");
}
