#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "singtrace/errors.hpp"
#include "singtrace/functionals.hpp"

using namespace singtrace;

namespace {
const double kLog1e4 = std::log(1e4);
const double kSqrtPiHalf = 0.88622692545275801;
}  // namespace

TEST_CASE("zeta curve oracles (harmonic)") {
  const SpectralModel h = SpectralModel::harmonic();
  CHECK(zeta_at(h, std::log(100.0)) == doctest::Approx(1.005779433384969).epsilon(1e-13));
  CHECK(zeta_at(h, kLog1e4) == doctest::Approx(1.000057722294644).epsilon(1e-13));
}

TEST_CASE("heat curve oracles (harmonic)") {
  const SpectralModel h = SpectralModel::harmonic();
  CHECK(heat_at(h, 1.0, 0.0) == doctest::Approx(0.5819767068693265).epsilon(1e-13));
  CHECK(heat_at(h, 1.0, kLog1e4) == doctest::Approx(0.9999500008333333).epsilon(1e-12));
  CHECK(heat_at(h, 2.0, kLog1e4) == doctest::Approx(0.8861769254527581).epsilon(1e-12));
  CHECK(heat_at(h, 2.0, std::log(1e3)) == doctest::Approx(0.8857269254527578).epsilon(1e-12));
  CHECK(heat_at(h, 0.5, kLog1e4) == doctest::Approx(1.999950207469985).epsilon(1e-12));
}

TEST_CASE("other harmonic oracles") {
  const SpectralModel h = SpectralModel::harmonic();
  CHECK(dixmier_at(h, kLog1e4) == doctest::Approx(1.0626642859702191).epsilon(1e-13));
  CHECK(lidskii_at(h, kLog1e4) == doctest::Approx(0.8215778553206343).epsilon(1e-13));
  const TestFunction sq = TestFunction::square_cut();
  CHECK(gheat_at(h, sq, std::log(10.0)) == doctest::Approx(1.051663356816857).epsilon(1e-13));
  CHECK(gheat_at(h, sq, kLog1e4) == doctest::Approx(1.0000500016666667).epsilon(1e-13));
}

TEST_CASE("finite spectrum curves") {
  const std::vector<double> v{1.0, 0.5};
  const SpectralModel m = SpectralModel::finite(v);
  CHECK(heat_at(m, 1.0, std::log(2.0)) == doctest::Approx(0.48720505044203787).epsilon(1e-14));
  CHECK(zeta_at(m, std::log(2.0)) == doctest::Approx(0.67677669529663688).epsilon(1e-14));
}

TEST_CASE("power tail curves") {
  const SpectralModel p = SpectralModel::power_tail(1.0, 1.0);
  CHECK(tail_at(p, 1.0) == doctest::Approx(0.28012653126784956).epsilon(1e-12));
  CHECK_THROWS_AS(lidskii_at(p, 1.0), unsupported_kind);
}

TEST_CASE("test functions") {
  const TestFunction h = TestFunction::parse("heatexp:2");
  CHECK(h.kind() == TestFunction::Kind::HeatExp);
  CHECK(h(1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(h.bounded());
  CHECK(h.vanishing_at_zero());
  CHECK(h.c2_at_zero());
  const TestFunction t = TestFunction::parse("tailind");
  CHECK(t(1.0) == 0.0);
  CHECK(t(1.5) == 1.0);
  CHECK(TestFunction::parse("squarecut")(0.5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(TestFunction::parse("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(TestFunction::parse("heatexp:-1"), std::invalid_argument);
  const TestFunction pw = TestFunction::piecewise({{1.0, 0.0}, {2.0, 1.0}});
  CHECK(pw(1.5) == doctest::Approx(0.5));
  CHECK(pw(5.0) == 1.0);
}

TEST_CASE("weight integrals") {
  CHECK(weight_integral(TestFunction::heat_exp(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(weight_integral(TestFunction::heat_exp(2.0)) == doctest::Approx(kSqrtPiHalf).epsilon(1e-12));
  CHECK(weight_integral(TestFunction::heat_exp(0.5)) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(weight_integral(TestFunction::heat_exp(3.0)) ==
        doctest::Approx(0.89297951156924921).epsilon(1e-10));
  CHECK(weight_integral(TestFunction::square_cut()) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(weight_integral(TestFunction::tail_indicator()) == doctest::Approx(1.0).epsilon(1e-12));
  // int_1^2 (s - 1) s^-2 ds + int_2^inf s^-2 ds = log 2 - 1/2 + 1/2
  CHECK(weight_integral(TestFunction::piecewise({{1.0, 0.0}, {2.0, 1.0}})) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("curves carry grid and metadata") {
  const SpectralModel h = SpectralModel::harmonic();
  const LogGrid g(1.0, 10.0, 901);
  const Curve c = zeta_curve(h, g);
  CHECK(c.values.size() == 901);
  CHECK(c.functional == "zeta");
  CHECK(c.params.at("model") == "harmonic");
  CHECK_THROWS_AS(zeta_curve(h, LogGrid(0.0, 1.0, 5)), std::domain_error);
  CHECK_THROWS_AS(zeta_curve(SpectralModel::power_tail(1.0, 0.5), g), std::domain_error);
}

TEST_CASE("curves do not depend on the worker count") {
  const SpectralModel h = SpectralModel::harmonic();
  const LogGrid g(0.0, 12.0, 2000);
  setenv("SINGTRACE_THREADS", "1", 1);
  const Curve one = heat_curve(h, 1.0, g);
  setenv("SINGTRACE_THREADS", "4", 1);
  const Curve four = heat_curve(h, 1.0, g);
  unsetenv("SINGTRACE_THREADS");
  CHECK(one.values == four.values);
}

TEST_CASE("cesaro means") {
  const LogGrid g(0.0, 10.0, 101);
  Curve c{g, std::vector<double>(g.count(), 3.0), "const", {}, {}};
  const Curve m = cesaro(c);
  for (double v : m.values) CHECK(v == doctest::Approx(3.0));
  CHECK(m.functional == "cesaro-of:const");
  CHECK(m.metadata.at("cesaro_coarse_grid_warning") == 0.0);
  // Linear x(e^v) = v averages to u/2.
  for (std::size_t i = 0; i < g.count(); ++i) c.values[i] = g.at(i);
  const Curve lin = cesaro(c);
  CHECK(lin.values.back() == doctest::Approx(5.0));
  const CesaroSummary s = cesaro_summary([](double u) { return u; }, g, 0.5);
  CHECK(s.last == doctest::Approx(5.0));
  CHECK(s.max == doctest::Approx(5.0));
}

TEST_CASE("karamata with linear beta") {
  const LogGrid g(0.0, 5.0, 6);
  const auto [h, b] = karamata_compare(Beta{}, 1.0, g);
  for (std::size_t i = 0; i < g.count(); ++i) CHECK(h.values[i] == doctest::Approx(b.values[i]).epsilon(1e-14));
}

TEST_CASE("pi functional") {
  const LimitEstimate p = pi_functional(PiProfile::log_width_indicator(), 8, 12);
  for (const Probe& pr : p.probes) CHECK(pr.value == doctest::Approx(1.0).epsilon(0.02));
  const LimitEstimate d = pi_functional(PiProfile::dilated_indicator(std::exp(1.0)), 8, 12);
  for (std::size_t i = 0; i < d.probes.size(); ++i)
    CHECK(d.probes[i].value == doctest::Approx(1.0 / (8.0 + i)).epsilon(1e-12));
  PiProfile c;
  c.constant = 0.25;
  CHECK(pi_functional(c, 3, 6).limsup_est == 0.25);
}
