#include <doctest.h>

#include <cmath>

#include "singtrace/counterexample.hpp"
#include "singtrace/stepfn.hpp"

using namespace singtrace;

TEST_CASE("plateau geometry") {
  CHECK(cx::log_right(1) == doctest::Approx(1.0 + std::exp(1.0)));
  CHECK(cx::log_left(1) == -INFINITY);
  CHECK(cx::log_left(3) == cx::log_right(2));
  CHECK(cx::log_value(2) == doctest::Approx(-std::exp(2.0)));
  CHECK(cx::plateau_index(0.0) == 1);
  CHECK(cx::plateau_index(cx::log_right(1)) == 2);
  CHECK(cx::plateau_index(std::nextafter(cx::log_right(1), 0.0)) == 1);
}

TEST_CASE("plateau masses") {
  CHECK(cx::plateau_mass(1) == doctest::Approx(2.7182818284590452).epsilon(1e-14));
  CHECK(cx::plateau_mass(2) == doctest::Approx(7.3635993470278350).epsilon(1e-14));
  CHECK(cx::plateau_mass(3) == doctest::Approx(20.085514298770387).epsilon(1e-14));
  CHECK(cx::cumulative_mass(2) == doctest::Approx(2.7182818284590452 + 7.3635993470278350));
  // Plateau masses approach e^k for large k.
  CHECK(cx::plateau_mass(20) / std::exp(20.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("partial integral and tail trace") {
  CHECK(cx::partial_integral(cx::log_right(2)) == doctest::Approx(cx::cumulative_mass(2)));
  // The tail trace is continuous at u = e^K.
  for (int k = 2; k <= 6; ++k) {
    const double u = std::exp(static_cast<double>(k));
    CHECK(cx::tail_trace(std::nextafter(u, 0.0)) ==
          doctest::Approx(cx::tail_trace(u)).epsilon(1e-12));
  }
  CHECK(cx::tail_trace(1.0) == 0.0);
}

TEST_CASE("generic model agrees with closed forms") {
  const SpectralModel m = SpectralModel::counterexample();
  for (double u : {0.5, 3.0, 8.0, 12.0, 30.0}) {
    CHECK(partial_integral_log(m, u) == doctest::Approx(cx::partial_integral(u)).epsilon(1e-12));
    CHECK(tail_trace_log(m, u) == doctest::Approx(cx::tail_trace(u)).epsilon(1e-12));
  }
  CHECK(log_mu_at(m, cx::log_right(3) - 1.0) == doctest::Approx(cx::log_value(3)));
}

TEST_CASE("truncation matches the closed forms") {
  const SpectralModel t = SpectralModel::explicit_steps(cx::truncation(4));
  for (double u = -3.0; u < cx::log_right(4); u += 0.37)
    CHECK(partial_integral_log(t, u) == doctest::Approx(cx::partial_integral(u)).epsilon(1e-12));
}

TEST_CASE("distribution") {
  // Level just below plateau 3's value covers plateaus 1..3.
  const double log_s = cx::log_value(3) - 1e-9;
  CHECK(cx::log_distribution(log_s) == doctest::Approx(cx::log_right(3)));
  CHECK(cx::log_distribution(0.0) == -INFINITY);
}

TEST_CASE("membership: Dixmier ideal but not weak-L1") {
  const cx::MembershipReport r = cx::membership_report();
  CHECK(r.max_ratio <= r.ratio_bound);
  CHECK(r.ratio_bound == doctest::Approx(std::exp(2.0) / (std::exp(1.0) - 1.0)));
  CHECK(r.witnesses_increasing);
  REQUIRE_FALSE(r.witnesses.empty());
  for (const auto& w : r.witnesses) CHECK(w.log_product >= w.k - 1 - 1e-9);
}

TEST_CASE("heat values against brute force") {
  for (double u : {1.0, 3.0, 10.0, 100.0, 1e3}) {
    double s = 0.0;
    for (int k = 1; k <= 30; ++k) {
      const double e = cx::log_length(k) - u - std::exp(std::exp(static_cast<double>(k)) - u);
      if (e > -745.0) s += std::exp(e);
    }
    CHECK(cx::heat(u, 1.0) == doctest::Approx(s).epsilon(1e-12));
  }
}
