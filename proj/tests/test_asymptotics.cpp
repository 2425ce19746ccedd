#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "singtrace/asymptotics.hpp"
#include "singtrace/counterexample.hpp"

using namespace singtrace;

namespace {
const double kE = std::exp(1.0);
}

TEST_CASE("subsequence limit with geometric convergence") {
  std::vector<double> us;
  for (int i = 1; i <= 30; ++i) us.push_back(i);
  const LimitEstimate e = subsequence_limit([](double u) { return 2.0 + std::pow(0.5, u); }, us, 1e-6);
  CHECK(e.converged);
  REQUIRE(e.extrapolated.has_value());
  CHECK(*e.extrapolated == doctest::Approx(2.0).epsilon(1e-12));
  const LimitEstimate osc =
      subsequence_limit([](double u) { return std::fmod(u, 2.0); }, us, 1e-6);
  CHECK_FALSE(osc.converged);
  CHECK_THROWS_AS(subsequence_limit([](double) { return 0.0; }, {1, 2, 3}, 1e-3),
                  std::domain_error);
}

TEST_CASE("window envelope") {
  std::vector<std::pair<double, double>> windows;
  for (int k = 0; k < 5; ++k) windows.emplace_back(k * 10.0, k * 10.0 + 7.0);
  const LimitEstimate e = window_envelope([](double u) { return std::sin(u); }, windows,
                                          {M_PI / 2 + 40.0, 3 * M_PI / 2 + 40.0});
  CHECK(e.limsup_est == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(e.liminf_est == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("counterexample probe scales and breakpoints") {
  const auto u = counterexample_probe_scales(14, 20);
  REQUIRE(u.size() == 7);
  CHECK(u.front() == doctest::Approx(std::exp(14.0) + 7.0));
  const auto b = counterexample_breakpoints(std::exp(3.0) - 1.0, std::exp(4.0) + 5.0);
  REQUIRE(b.size() == 4);
  CHECK(b[0] == doctest::Approx(std::exp(3.0)));
  CHECK(b[1] == doctest::Approx(3.0 + std::exp(3.0)));
  CHECK(b[2] == doctest::Approx(std::exp(4.0)));
  CHECK(b[3] == doctest::Approx(4.0 + std::exp(4.0)));
}

TEST_CASE("gap report constants") {
  for (double q : {0.5, 1.0, 2.0}) {
    const GapReport r = gap_report(q);
    CHECK(r.dixmier_limit == doctest::Approx(1.0 / (kE - 1.0)).epsilon(1e-4));
    CHECK(r.xi_over_gamma_limit == doctest::Approx(kE / (kE - 1.0)).epsilon(1e-4));
    CHECK(r.gamma_factor == doctest::Approx(std::tgamma(1.0 + 1.0 / q)).epsilon(1e-10));
    CHECK(r.gap / r.gamma_direct == doctest::Approx(1.0).epsilon(5e-4));
    CHECK(r.dixmier.converged);
    CHECK(r.tail.converged);
  }
  // Frozen probe values for q = 1.
  const GapReport r = gap_report(1.0);
  CHECK(r.dixmier.probes.front().value == doctest::Approx(0.58288385939630005).epsilon(1e-12));
  CHECK(r.tail.probes.back().value == doctest::Approx(1.5819312710203162).epsilon(1e-12));
  CHECK_THROWS_AS(gap_report(1.0, 14, 15), std::domain_error);
}

TEST_CASE("heat of the counterexample oscillates") {
  const SpectralModel cx = SpectralModel::counterexample();
  // Raw heat curve is large just after e^k and near the Dixmier value later.
  CHECK(heat_at(cx, 1.0, std::exp(14.0) + 7.0) > 1e3);
  CHECK(heat_at(cx, 1.0, 14.0 + std::exp(14.0)) < 2.0);
}
