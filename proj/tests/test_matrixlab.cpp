#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "singtrace/matrixlab.hpp"

using namespace singtrace;

namespace {

HermitianMatrix two_by_two(double a, double b, cplx c) {
  Matrix m(2);
  m(0, 0) = a;
  m(1, 1) = b;
  m(0, 1) = c;
  m(1, 0) = std::conj(c);
  return HermitianMatrix(m);
}

}  // namespace

TEST_CASE("hermitian construction") {
  Matrix m(2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianMatrix{m}, std::domain_error);
  CHECK_THROWS_AS(HermitianMatrix{Matrix(65)}, std::domain_error);
  CHECK_NOTHROW(HermitianMatrix{Matrix::identity(64)});
}

TEST_CASE("eigendecomposition") {
  const EigenDecomposition e = eigendecompose(two_by_two(2.0, 2.0, 1.0));
  REQUIRE(e.values.size() == 2);
  CHECK(e.values[0] == doctest::Approx(3.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  const EigenDecomposition c = eigendecompose(two_by_two(1.0, 1.0, cplx(0.0, 1.0)));
  CHECK(c.values[0] == doctest::Approx(2.0));
  CHECK(c.values[1] == doctest::Approx(0.0));
  for (std::size_t n : {3u, 6u, 17u}) {
    const HermitianMatrix a = random_psd(n, 11 + n);
    const EigenDecomposition d = eigendecompose(a);
    const Matrix r = a.matrix() * d.vectors - d.vectors * Matrix::diagonal(d.values);
    CHECK(r.frobenius() < 1e-12 * (1.0 + a.matrix().frobenius()));
    CHECK((d.vectors.adjoint() * d.vectors - Matrix::identity(n)).frobenius() < 1e-12);
    for (std::size_t i = 1; i < n; ++i) CHECK(d.values[i - 1] >= d.values[i]);
  }
}

TEST_CASE("matrix functions") {
  const HermitianMatrix a = random_psd(4, 3);
  const HermitianMatrix r = psd_power(a, 0.5);
  CHECK((r.matrix() * r.matrix() - a.matrix()).frobenius() < 1e-12);
  const std::vector<double> sv = singular_values(Matrix::diagonal({-3.0, 2.0}));
  CHECK(sv[0] == doctest::Approx(3.0));
  CHECK(sv[1] == doctest::Approx(2.0));
  const HermitianMatrix sq = matrix_function(a, [](double x) { return x * x; });
  CHECK((sq.matrix() - a.matrix() * a.matrix()).frobenius() < 1e-12);
}

TEST_CASE("random psd is reproducible and positive") {
  const HermitianMatrix a = random_psd(5, 99);
  const HermitianMatrix b = random_psd(5, 99);
  CHECK((a.matrix() - b.matrix()).frobenius() == 0.0);
  CHECK(eigendecompose(a).values.back() > -1e-14);
  CHECK(trial_seed(7, 0) != trial_seed(7, 1));
  CHECK(trial_seed(7, 3) == trial_seed(7, 3));
}

TEST_CASE("individual inequality checks") {
  const HermitianMatrix a = random_psd(4, 1);
  const HermitianMatrix c = random_psd(4, 2);
  for (double s : {0.1, 0.5, 1.0, 2.0}) CHECK(power_trace_bounds_check(a, c, s).pass());
  // Commuting case: both sides of the operator inequality coincide.
  const HermitianMatrix d = two_by_two(0.3, 0.7, 0.0);
  const HermitianMatrix bd = two_by_two(0.5, 1.0, 0.0);
  CHECK(loewner_cps_check(d, bd, 2.0).pass());
  CHECK_THROWS_AS(loewner_cps_check(a, c, -1.0), std::domain_error);
}

TEST_CASE("operator inequality holds for s <= 1") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 5;
    const HermitianMatrix a = random_psd(n, trial_seed(7, t));
    const HermitianMatrix b0 = random_psd(n, trial_seed(8, t));
    const EigenDecomposition e = eigendecompose(b0);
    const HermitianMatrix small((1.0 / e.values.front()) * b0.matrix());
    const HermitianMatrix large(b0.matrix() + (1.0 - e.values.back()) * Matrix::identity(n));
    for (double s : {0.1, 0.5, 1.0}) {
      CHECK(loewner_cps_check(a, small, s).pass());
      CHECK(loewner_cps_check(a, large, s).pass());
    }
  }
}

TEST_CASE("operator inequality has counterexamples at s = 2") {
  // x^3 is not operator convex, so the Loewner-order form fails for some pairs.
  int failures = 0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    const HermitianMatrix a = random_psd(3, trial_seed(7, t));
    const HermitianMatrix b0 = random_psd(3, trial_seed(8, t));
    const HermitianMatrix b((1.0 / eigendecompose(b0).values.front()) * b0.matrix());
    if (!loewner_cps_check(a, b, 2.0).pass()) ++failures;
  }
  CHECK(failures > 0);
}

TEST_CASE("suites are deterministic") {
  const InequalityReport x = run_inequality_suite(InequalityFamily::Convex, 40, 5, 123);
  const InequalityReport y = run_inequality_suite(InequalityFamily::Convex, 40, 5, 123);
  CHECK(x.worst_margin == y.worst_margin);
  CHECK(x.pass());
  CHECK(run_inequality_suite(InequalityFamily::Power, 40, 5, 1).pass());
  CHECK(run_inequality_suite(InequalityFamily::Sandwich, 40, 5, 1).pass());
  CHECK(parse_family("sandwich") == InequalityFamily::Sandwich);
  CHECK(family_name(InequalityFamily::Loewner) == "loewner");
  CHECK_THROWS_AS(parse_family("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(run_inequality_suite(InequalityFamily::Power, 0, 5, 1), std::domain_error);
}
