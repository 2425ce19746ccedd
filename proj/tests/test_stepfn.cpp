#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "singtrace/stepfn.hpp"

using namespace singtrace;

namespace {
const double kH9 = 2.8289682539682538;
}

TEST_CASE("step function invariants") {
  CHECK_NOTHROW(StepFunction({{0.0, 0.0}, {1.0, -1.0}}));
  // Value increase names the plateau.
  try {
    StepFunction({{0.0, 0.0}, {1.0, 1.0}});
    FAIL("expected a domain error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("plateau 1") != std::string::npos);
  }
  CHECK_THROWS_AS(StepFunction({{0.0, 0.0}, {-1.0, -1.0}}), std::domain_error);
  CHECK_THROWS_AS(StepFunction({{NAN, 0.0}}), std::domain_error);
}

TEST_CASE("finite spectrum merges equal values") {
  const std::vector<double> v{1.0, 0.5, 0.5};
  const SpectralModel m = SpectralModel::finite(v);
  const auto& f = std::get<FiniteSpectrum>(m.kind());
  REQUIRE(f.values.size() == 2);
  CHECK(f.multiplicity[1] == 2);
  CHECK(std::exp(f.steps.log_length(1)) == doctest::Approx(2.0));
  CHECK(mu_at(m, 0.0) == 1.0);
  CHECK(mu_at(m, 1.0) == 0.5);  // right-continuous
  CHECK(mu_at(m, 2.999) == 0.5);
  CHECK(mu_at(m, 3.0) == 0.0);
  CHECK(distribution(m, 0.5) == 1.0);  // strict level set
  CHECK(distribution(m, 0.4) == 3.0);
  CHECK(partial_integral(m, 2.5) == doctest::Approx(1.75));
  CHECK(partial_integral(m, 100.0) == doctest::Approx(2.0));
  CHECK(tail_trace(m, 4.0) == doctest::Approx(1.25));
}

TEST_CASE("rearrangement") {
  const std::vector<double> v{0.2, 1.0, 0.0, 0.5};
  const StepFunction f = rearrange(v);
  REQUIRE(f.size() == 3);
  CHECK(std::exp(f.plateaus()[0].w) == doctest::Approx(1.0));
  CHECK(std::exp(f.plateaus()[2].w) == doctest::Approx(0.2));
  CHECK(f.total_mass() == doctest::Approx(1.7));
}

TEST_CASE("harmonic model") {
  const SpectralModel h = SpectralModel::harmonic();
  CHECK(mu_at(h, 0.0) == 1.0);
  CHECK(mu_at(h, 2.5) == doctest::Approx(1.0 / 3.0));
  CHECK(distribution(h, 0.3) == 3.0);
  CHECK(distribution(h, 0.25) == 3.0);
  CHECK(partial_integral(h, 10.0) == doctest::Approx(2.9289682539682540).epsilon(1e-14));
  CHECK(tail_trace(h, 10.0) == doctest::Approx(kH9 - 0.9).epsilon(1e-14));
  CHECK(marcinkiewicz_norm(h, 20.0) == doctest::Approx(1.0 / std::log(2.0)));
  CHECK(h.in_dixmier_ideal());
}

TEST_CASE("power tail model") {
  const SpectralModel p = SpectralModel::power_tail(1.0, 2.0);
  CHECK(mu_at(p, 1.0) == doctest::Approx(0.25));
  CHECK(partial_integral(p, 1.0) == doctest::Approx(0.5));
  CHECK(distribution(p, 0.25) == doctest::Approx(1.0));
  const SpectralModel q = SpectralModel::power_tail(1.0, 1.0);
  CHECK(tail_trace(q, std::exp(1.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(q.in_dixmier_ideal());
  CHECK_FALSE(SpectralModel::power_tail(1.0, 0.5).in_dixmier_ideal());
  CHECK_THROWS_AS(SpectralModel::power_tail(-1.0, 1.0), std::domain_error);
}

TEST_CASE("marcinkiewicz norm of a finite spectrum") {
  const std::vector<double> v{1.0, 0.5, 0.2};
  CHECK(marcinkiewicz_norm(SpectralModel::finite(v), 10.0) ==
        doctest::Approx(1.0 / std::log(2.0)));
}

TEST_CASE("dilation") {
  const StepFunction f({{0.0, 0.0}, {std::log(3.0), std::log(0.5)}});
  const StepFunction g = dilate(f, 2.0);
  CHECK(g.total_mass() == doctest::Approx(2.0 * f.total_mass()));
  CHECK(std::exp(g.log_value_at(std::log(1.5))) == doctest::Approx(1.0));
}

TEST_CASE("majorization of finite spectra") {
  const std::vector<double> a{1.0, 0.5, 0.5};
  const std::vector<double> b{0.8, 0.6};
  const SpectralModel ma = SpectralModel::finite(a);
  const SpectralModel mb = SpectralModel::finite(b);
  const LogGrid grid(-1.0, 2.0, 31);
  CHECK(majorizes(ma, mb, grid).verdict);
  CHECK_FALSE(majorizes(mb, ma, grid).verdict);
  const TailEquivalence t = tail_equivalence_check(ma, mb, grid);
  CHECK(t.majorized);
  CHECK(t.tail_dominated);
  const TailEquivalence r = tail_equivalence_check(mb, ma, grid);
  CHECK_FALSE(r.majorized);
  CHECK_FALSE(r.tail_dominated);
  // Every operator majorizes itself.
  CHECK(majorizes(ma, ma, grid).verdict);
}

TEST_CASE("majorization property: scaled-down mixtures are majorized") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const LogGrid grid(-1.0, 3.0, 41);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(5);
    for (double& x : a) x = u(rng);
    std::vector<double> b(a.size());
    const double mean = (a[0] + a[1]) / 2.0;
    b[0] = b[1] = 0.95 * mean;
    for (std::size_t i = 2; i < a.size(); ++i) b[i] = 0.95 * a[i];
    const TailEquivalence t =
        tail_equivalence_check(SpectralModel::finite(a), SpectralModel::finite(b), grid);
    CHECK(t.majorized);
    CHECK(t.tail_dominated);
  }
}

TEST_CASE("scaled models") {
  const std::vector<double> v{1.0, 0.5};
  const SpectralModel m = SpectralModel::finite(v).scaled(2.0);
  CHECK(mu_at(m, 0.0) == doctest::Approx(2.0));
  CHECK(partial_integral(SpectralModel::power_tail(1.0, 2.0).scaled(3.0), 1.0) ==
        doctest::Approx(1.5));
}
