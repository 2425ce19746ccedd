#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "singtrace/grid.hpp"
#include "singtrace/special.hpp"

using namespace singtrace;

TEST_CASE("harmonic numbers") {
  CHECK(harmonic_number(10) == doctest::Approx(2.9289682539682540).epsilon(1e-15));
  CHECK(harmonic_number(100) == doctest::Approx(5.1873775176396203).epsilon(1e-15));
  CHECK(harmonic_number(1e6) == doctest::Approx(14.392726722865724).epsilon(1e-15));
  CHECK(harmonic_number(0) == 0.0);
  CHECK(harmonic_sum_naive(10) == doctest::Approx(2.9289682539682540).epsilon(1e-15));
  CHECK_THROWS_AS(harmonic_number(-1), std::domain_error);
}

TEST_CASE("inverse square tail") {
  CHECK(inverse_square_tail(10) == doctest::Approx(0.10516633568168575).epsilon(1e-14));
  CHECK(inverse_square_tail(1) == doctest::Approx(1.6449340668482264).epsilon(1e-14));
  CHECK_THROWS_AS(inverse_square_tail(0), std::domain_error);
}

TEST_CASE("zeta function") {
  CHECK(riemann_zeta(2.0).value == doctest::Approx(1.6449340668482264).epsilon(1e-14));
  CHECK(riemann_zeta(1.5).value == doctest::Approx(2.6123753486854883).epsilon(1e-14));
  CHECK(scaled_zeta_near_one(1e-4).value == doctest::Approx(1.0000577222946438).epsilon(1e-14));
  // 1 + 1e-12 is still representable but the residue form must stay exact.
  CHECK(scaled_zeta_near_one(1e-12).value == doctest::Approx(1.0000000000005772).epsilon(1e-15));
  CHECK(scaled_zeta_near_one(1e-300).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(riemann_zeta(1.0), std::domain_error);
}

TEST_CASE("log-domain helpers") {
  CHECK(log1p_exp(0.0) == doctest::Approx(std::log(2.0)));
  CHECK(log1p_exp(800.0) == doctest::Approx(800.0));
  CHECK(log_diff_exp(std::log(3.0), std::log(1.0)) == doctest::Approx(std::log(2.0)));
  CHECK(log_diff_exp(1.0, -INFINITY) == 1.0);
}

TEST_CASE("log grid") {
  const LogGrid g(1.0, 10.0, 901);
  CHECK(g.count() == 901);
  CHECK(g.at(0) == 1.0);
  CHECK(g.at(900) == 10.0);
  CHECK(g.at(450) == doctest::Approx(5.5));
  const LogGrid s = LogGrid::with_spacing(0.0, 1.0, 0.1);
  CHECK(s.count() == 11);
  CHECK(s.at(10) == 1.0);
  CHECK_THROWS_AS(LogGrid(2.0, 1.0, 10), std::domain_error);
  CHECK_THROWS_AS(LogGrid(0.0, 1.0, 1), std::domain_error);
  CHECK_THROWS_AS(LogGrid(0.0, 1.0, LogGrid::kMaxCount + 1), std::domain_error);
  CHECK_THROWS_AS(LogGrid(0.0, INFINITY, 10), std::domain_error);
}
