#include "singtrace/special.hpp"

#include <array>
#include <stdexcept>

namespace singtrace {

double harmonic_number(double n) {
  if (n < 0.0 || !std::isfinite(n)) throw std::domain_error("harmonic_number: n must be finite and >= 0");
  if (n < 64.0) {
    double s = 0.0;
    for (int k = static_cast<int>(n); k >= 1; --k) s += 1.0 / k;
    return s;
  }
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  return std::log(n) + kEulerGamma + 0.5 * inv -
         inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

double harmonic_sum_naive(std::uint64_t m) {
  double s = 0.0;
  for (std::uint64_t n = 1; n <= m; ++n) s += 1.0 / static_cast<double>(n);
  return s;
}

double inverse_square_tail(std::uint64_t m) {
  if (m == 0) throw std::domain_error("inverse_square_tail: m must be >= 1");
  constexpr std::uint64_t kDirect = 32;
  double head = 0.0;
  std::uint64_t n = m;
  for (; n < kDirect; ++n) head += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  // sum_{k >= n} k^-2 = 1/n + 1/(2n^2) + 1/(6n^3) - 1/(30n^5) + 1/(42n^7) - 1/(30n^9)
  const double x = 1.0 / static_cast<double>(n);
  const double x2 = x * x;
  const double tail =
      x + 0.5 * x2 + x * x2 * (1.0 / 6.0 - x2 * (1.0 / 30.0 - x2 * (1.0 / 42.0 - x2 / 30.0)));
  return tail + head;
}

namespace {

// zeta(1 + eps) split as head + N^-eps / eps + rest; returns {head + rest, rest}.
struct ZetaParts {
  double head_and_rest;
  double rest;
};

ZetaParts zeta_parts(double eps) {
  // B_{2j} / (2j)!
  static constexpr std::array<double, 7> kBernoulliOverFactorial = {
      1.0 / 12.0,          -1.0 / 720.0,          1.0 / 30240.0,           -1.0 / 1209600.0,
      1.0 / 47900160.0,    -691.0 / 1307674368000.0, 1.0 / 74724249600.0};
  constexpr int kDirect = 16;
  const double sigma = 1.0 + eps;
  double head = 0.0;
  for (int n = kDirect - 1; n >= 1; --n) head += std::exp(-sigma * std::log(static_cast<double>(n)));
  const double N = kDirect;
  double rest = 0.5 * std::exp(-sigma * std::log(N));
  // B_{2j}/(2j)! * sigma (sigma+1) ... (sigma+2j-2) * N^{-sigma-2j+1}
  double rising = sigma;
  double power = std::exp(-(sigma + 1.0) * std::log(N));
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    rest += kBernoulliOverFactorial[j] * rising * power;
    rising *= (sigma + 2.0 * j + 1.0) * (sigma + 2.0 * j + 2.0);
    power /= N * N;
  }
  return {head + rest, rest};
}

}  // namespace

ZetaEvaluation riemann_zeta(double sigma) {
  if (!(sigma > 1.0)) throw std::domain_error("riemann_zeta: sigma must exceed 1");
  const double eps = sigma - 1.0;
  const ZetaParts p = zeta_parts(eps);
  const double integral = std::exp(-eps * std::log(16.0)) / eps;
  return {p.head_and_rest + integral, p.rest + integral};
}

ZetaEvaluation scaled_zeta_near_one(double eps) {
  if (!(eps > 0.0)) throw std::domain_error("scaled_zeta_near_one: eps must be positive");
  const ZetaParts p = zeta_parts(eps);
  const double integral = std::exp(-eps * std::log(16.0));
  return {eps * p.head_and_rest + integral, eps * p.rest + integral};
}

}  // namespace singtrace
