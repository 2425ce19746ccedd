// Exercises the shared library through its C interface only.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "singtrace/singtrace.h"

TEST_CASE("model handles") {
  st_model* m = nullptr;
  REQUIRE(st_model_load("harmonic", &m) == ST_OK);
  double v = 0.0;
  CHECK(st_model_partial_integral(m, 10.0, &v) == ST_OK);
  CHECK(v == doctest::Approx(2.9289682539682540));
  CHECK(st_model_mu(m, -1.0, &v) == ST_E_DOMAIN);
  CHECK(std::strlen(st_last_error()) > 0);
  char* kind = nullptr;
  REQUIRE(st_model_kind(m, &kind) == ST_OK);
  CHECK(std::string(kind) == "harmonic");
  st_string_free(kind);
  st_model_free(m);
}

TEST_CASE("error codes") {
  st_model* m = nullptr;
  CHECK(st_model_from_json("{\"kind\":\"explicit\",\"plateaus\":[[0,0],[-1,1]]}", &m) == ST_E_PARSE);
  CHECK(m == nullptr);
  CHECK(std::string(st_last_error()).find("plateau 1") != std::string::npos);
  CHECK(st_model_load("/nonexistent/model.json", &m) == ST_E_IO);
  CHECK(st_model_from_json(nullptr, &m) == ST_E_ARGUMENT);
  REQUIRE(st_model_from_json("{\"kind\":\"power\",\"c\":1,\"p\":1}", &m) == ST_OK);
  st_curve* c = nullptr;
  CHECK(st_curve_compute(m, "lidskii", 1.0, nullptr, 1.0, 2.0, 3, &c) == ST_E_UNSUPPORTED);
  CHECK(st_curve_compute(m, "nope", 1.0, nullptr, 1.0, 2.0, 3, &c) == ST_E_PARSE);
  CHECK(st_curve_compute(m, "tail", 1.0, nullptr, 2.0, 1.0, 3, &c) == ST_E_DOMAIN);
  st_model_free(m);
}

TEST_CASE("curves through the C interface") {
  st_model* m = nullptr;
  REQUIRE(st_model_load("harmonic", &m) == ST_OK);
  st_curve* c = nullptr;
  REQUIRE(st_curve_compute(m, "zeta", 1.0, nullptr, 1.0, 10.0, 901, &c) == ST_OK);
  size_t n = 0;
  const double* values = nullptr;
  REQUIRE(st_curve_values(c, &values, &n) == ST_OK);
  CHECK(n == 901);
  CHECK(values[n - 1] == doctest::Approx(1.0000262057007285).epsilon(1e-13));
  char* json = nullptr;
  REQUIRE(st_curve_to_json(c, &json) == ST_OK);
  st_curve* d = nullptr;
  REQUIRE(st_curve_from_json(json, &d) == ST_OK);
  const double* w = nullptr;
  size_t m2 = 0;
  st_curve_values(d, &w, &m2);
  REQUIRE(m2 == n);
  CHECK(std::memcmp(values, w, n * sizeof(double)) == 0);
  char* csv = nullptr;
  REQUIRE(st_curve_to_csv(c, &csv) == ST_OK);
  CHECK(std::string(csv).rfind("u,t_is_exp_u,value\n", 0) == 0);
  st_string_free(csv);
  st_string_free(json);
  st_curve_free(d);
  st_curve_free(c);

  REQUIRE(st_curve_compute(m, "cesaro-of:heat", 1.0, nullptr, 0.0, 5.0, 51, &c) == ST_OK);
  st_curve_values(c, &values, &n);
  CHECK(n == 46);  // output starts at u = 0.5
  st_curve_free(c);
  REQUIRE(st_curve_compute(m, "gheat", 1.0, "squarecut", 1.0, std::log(1e4), 2, &c) == ST_OK);
  st_curve_values(c, &values, &n);
  CHECK(values[1] == doctest::Approx(1.0000500016666667).epsilon(1e-13));
  st_curve_free(c);
  st_model_free(m);
}

TEST_CASE("reports") {
  double w = 0.0;
  CHECK(st_weight_integral("heatexp:2", &w) == ST_OK);
  CHECK(w == doctest::Approx(0.88622692545275801).epsilon(1e-12));
  char* json = nullptr;
  char* csv = nullptr;
  REQUIRE(st_counterexample_report(1.0, 14, 20, &json, &csv) == ST_OK);
  CHECK(std::string(json).find("dixmier_limit") != std::string::npos);
  CHECK(std::string(csv).rfind("k,u,dixmier,tail\n", 0) == 0);
  st_string_free(json);
  st_string_free(csv);
  int pass = 0;
  REQUIRE(st_matrix_suite("power", 50, 4, 7, &pass, &json) == ST_OK);
  CHECK(pass == 1);
  st_string_free(json);
  CHECK(st_matrix_suite("bogus", 50, 4, 7, &pass, nullptr) == ST_E_PARSE);
  REQUIRE(st_verify("pi", nullptr, 0, &pass, &json) == ST_OK);
  CHECK(pass == 1);
  st_string_free(json);
  st_model *a = nullptr, *b = nullptr;
  REQUIRE(st_model_from_json("{\"kind\":\"finite\",\"values\":[1,0.5,0.5]}", &a) == ST_OK);
  REQUIRE(st_model_from_json("{\"kind\":\"finite\",\"values\":[0.8,0.6]}", &b) == ST_OK);
  int verdict = -1;
  REQUIRE(st_majorize(a, b, -1.0, 2.0, 10, &verdict, nullptr) == ST_OK);
  CHECK(verdict == 1);
  REQUIRE(st_majorize(b, a, -1.0, 2.0, 10, &verdict, nullptr) == ST_OK);
  CHECK(verdict == 0);
  st_model_free(a);
  st_model_free(b);
}
