#include "singtrace/matrixlab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "singtrace/errors.hpp"

namespace singtrace {

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx Matrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : a_) m = std::max(m, std::abs(z));
  return m;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (const cplx& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.n() != y.n()) throw std::domain_error("matrix product: dimension mismatch");
  const std::size_t n = x.n();
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx xik = x(i, k);
      for (std::size_t j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
  if (x.n() != y.n()) throw std::domain_error("matrix sum: dimension mismatch");
  Matrix r = x;
  for (std::size_t i = 0; i < x.n(); ++i)
    for (std::size_t j = 0; j < x.n(); ++j) r(i, j) += y(i, j);
  return r;
}

Matrix operator-(const Matrix& x, const Matrix& y) { return x + (-1.0) * y; }

Matrix operator*(double s, const Matrix& x) {
  Matrix r = x;
  for (std::size_t i = 0; i < x.n(); ++i)
    for (std::size_t j = 0; j < x.n(); ++j) r(i, j) *= s;
  return r;
}

// ---------------------------------------------------------------------------
// HermitianMatrix and spectral calculus

HermitianMatrix::HermitianMatrix(const Matrix& m) : m_(m) {
  const std::size_t n = m.n();
  if (n < 1 || n > kMaxDim) throw std::domain_error("hermitian matrix: dimension must be 1..64");
  const double tol = 1e-12 * std::max(1.0, m.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol)
        throw std::domain_error("hermitian matrix: entry (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") breaks self-adjointness");
      const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = avg;
      m_(j, i) = std::conj(avg);
    }
}

EigenDecomposition eigendecompose(const HermitianMatrix& h) {
  const std::size_t n = h.n();
  Matrix a = h.matrix();
  Matrix v = Matrix::identity(n);
  const double norm = a.frobenius();
  const double threshold = 1e-14 * norm;
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };
  bool converged = n == 1 || norm == 0.0;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    if (off_norm() <= threshold) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double b = std::abs(a(p, q));
        if (b == 0.0) continue;
        const cplx e = a(p, q) / b;  // phase of the pivot
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * b);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        const cplx ce = std::conj(e);
        // V = [[c, s], [-s conj(e), c conj(e)]] on the (p, q) plane; A <- V* A V.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - s * ce * akq;
          a(k, q) = s * akp + c * ce * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * apk + c * e * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - s * ce * vkq;
          v(k, q) = s * vkp + c * ce * vkq;
        }
      }
  }
  if (!converged && off_norm() > threshold)
    throw numeric_error("eigendecompose: Jacobi iteration did not converge in 100 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  EigenDecomposition out{std::vector<double>(n), Matrix(n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

namespace {

HermitianMatrix reassemble(const EigenDecomposition& e, const std::vector<double>& fvals) {
  const std::size_t n = fvals.size();
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += e.vectors(i, k) * fvals[k] * std::conj(e.vectors(j, k));
      r(i, j) = s;
    }
  return HermitianMatrix(r);
}

}  // namespace

HermitianMatrix matrix_function(const HermitianMatrix& h, const std::function<double(double)>& f) {
  const EigenDecomposition e = eigendecompose(h);
  std::vector<double> fv(e.values.size());
  for (std::size_t i = 0; i < fv.size(); ++i) {
    fv[i] = f(e.values[i]);
    if (!std::isfinite(fv[i]))
      throw std::domain_error("matrix_function: f is undefined at eigenvalue " +
                              std::to_string(e.values[i]));
  }
  return reassemble(e, fv);
}

HermitianMatrix psd_power(const HermitianMatrix& a, double r) {
  const EigenDecomposition e = eigendecompose(a);
  const double floor = -1e-10 * std::max(1.0, std::abs(e.values.front()));
  std::vector<double> fv(e.values.size());
  for (std::size_t i = 0; i < fv.size(); ++i) {
    if (e.values[i] < floor) throw std::domain_error("psd_power: matrix is not positive");
    fv[i] = e.values[i] > 0.0 ? std::pow(e.values[i], r) : 0.0;
  }
  return reassemble(e, fv);
}

std::vector<double> singular_values(const Matrix& m) {
  const EigenDecomposition e = eigendecompose(HermitianMatrix(m.adjoint() * m));
  std::vector<double> out;
  for (double l : e.values) out.push_back(std::sqrt(std::max(0.0, l)));
  return out;
}

HermitianMatrix sandwich(const HermitianMatrix& b_half, const HermitianMatrix& a) {
  return HermitianMatrix(b_half.matrix() * a.matrix() * b_half.matrix());
}

// ---------------------------------------------------------------------------
// Inequality checks

namespace {

double relative_slack(double lhs, double rhs) {
  // rhs - lhs >= 0 asserted
  return (rhs - lhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

InequalityReport single(const std::string& family, double margin) {
  InequalityReport r;
  r.family = family;
  r.trials = 1;
  r.worst_margin = margin;
  r.tolerance = kInequalityTol;
  return r;
}

enum class Branch { Below, Above };

Branch branch_of(const HermitianMatrix& b) {
  const EigenDecomposition e = eigendecompose(b);
  const double tol = 1e-12 * std::max(1.0, e.values.front());
  if (e.values.back() < -tol) throw std::domain_error("B must be positive");
  if (e.values.front() <= 1.0 + tol) return Branch::Below;
  if (e.values.back() >= 1.0 - tol) return Branch::Above;
  throw std::domain_error("B is neither <= 1 nor >= 1");
}

double spectral_norm(const HermitianMatrix& h) {
  const EigenDecomposition e = eigendecompose(h);
  return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.n() != b.n()) throw std::domain_error("dimension mismatch");
}

}  // namespace

InequalityReport power_trace_bounds_check(const HermitianMatrix& a, const HermitianMatrix& c,
                                          double s) {
  require_same_dim(a, c);
  if (!(s > 0.0)) throw std::domain_error("power bounds: s must be positive");
  const double r = 1.0 + s;
  const double sum_pow = psd_power(a, r).trace() + psd_power(c, r).trace();
  const double pow_sum = psd_power(HermitianMatrix(a.matrix() + c.matrix()), r).trace();
  const double lower = relative_slack(sum_pow, pow_sum);
  const double upper = relative_slack(pow_sum, std::pow(2.0, s) * sum_pow);
  return single("power", std::min(lower, upper));
}

InequalityReport loewner_cps_check(const HermitianMatrix& a, const HermitianMatrix& b, double s) {
  require_same_dim(a, b);
  if (!(s > 0.0)) throw std::domain_error("loewner: s must be positive");
  const Branch branch = branch_of(b);
  const HermitianMatrix bh = psd_power(b, 0.5);
  const HermitianMatrix lhs = psd_power(sandwich(bh, a), 1.0 + s);  // (B^1/2 A B^1/2)^{1+s}
  const HermitianMatrix rhs = sandwich(bh, psd_power(a, 1.0 + s));  // B^1/2 A^{1+s} B^1/2
  const Matrix diff =
      branch == Branch::Below ? rhs.matrix() - lhs.matrix() : lhs.matrix() - rhs.matrix();
  const double lambda_min = eigendecompose(HermitianMatrix(diff)).values.back();
  const double scale = std::max({spectral_norm(lhs), spectral_norm(rhs), 1.0});
  return single("loewner", lambda_min / scale);
}

InequalityReport convex_trace_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                    const std::function<double(double)>& f) {
  require_same_dim(a, b);
  const Branch branch = branch_of(b);
  const HermitianMatrix bh = psd_power(b, 0.5);
  const double outer = sandwich(bh, matrix_function(a, f)).trace();  // Tr B^1/2 f(A) B^1/2
  const double inner = matrix_function(sandwich(bh, a), f).trace();  // Tr f(B^1/2 A B^1/2)
  const double margin =
      branch == Branch::Below ? relative_slack(inner, outer) : relative_slack(outer, inner);
  return single("convex", margin);
}

InequalityReport zeta_sandwich_check(const HermitianMatrix& a, const HermitianMatrix& b, double m,
                                     double M, double s) {
  require_same_dim(a, b);
  if (!(s > 0.0)) throw std::domain_error("sandwich: s must be positive");
  if (!(m > 0.0) || !(M >= m)) throw std::domain_error("sandwich: need 0 < m <= M");
  const EigenDecomposition eb = eigendecompose(b);
  const double tol = 1e-12 * std::max(1.0, M);
  if (eb.values.back() < m - tol || eb.values.front() > M + tol)
    throw std::domain_error("sandwich: bounds m, M do not enclose the spectrum of B");
  const double r = 1.0 + s;
  const double base = (psd_power(a, r).matrix() * b.matrix()).trace().real();
  const double middle = psd_power(sandwich(psd_power(b, 0.5), a), r).trace();
  const double lower = relative_slack(std::pow(m, s) * base, middle);
  const double upper = relative_slack(middle, std::pow(M, s) * base);
  return single("sandwich", std::min(lower, upper));
}

// ---------------------------------------------------------------------------
// Randomized suites

InequalityFamily parse_family(const std::string& name) {
  if (name == "power") return InequalityFamily::Power;
  if (name == "loewner") return InequalityFamily::Loewner;
  if (name == "convex") return InequalityFamily::Convex;
  if (name == "sandwich") return InequalityFamily::Sandwich;
  throw std::invalid_argument("unknown inequality family '" + name + "'");
}

std::string family_name(InequalityFamily f) {
  switch (f) {
    case InequalityFamily::Power:
      return "power";
    case InequalityFamily::Loewner:
      return "loewner";
    case InequalityFamily::Convex:
      return "convex";
    case InequalityFamily::Sandwich:
      return "sandwich";
  }
  return {};
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  // splitmix64 finalizer on seed + (trial + 1) * golden gamma
  std::uint64_t z = seed + (trial + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

Matrix gaussian_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = cplx(normal(rng), normal(rng));
  return g;
}

HermitianMatrix psd_from(std::size_t n, std::mt19937_64& rng) {
  const Matrix g = gaussian_matrix(n, rng);
  return HermitianMatrix((1.0 / static_cast<double>(n)) * (g * g.adjoint()));
}

// B <= 1 (divide by the top eigenvalue) or B >= 1 (shift the bottom one to 1).
HermitianMatrix in_branch(const HermitianMatrix& b, Branch branch) {
  const EigenDecomposition e = eigendecompose(b);
  if (branch == Branch::Below) return HermitianMatrix((1.0 / e.values.front()) * b.matrix());
  return HermitianMatrix(b.matrix() + (1.0 - e.values.back()) * Matrix::identity(b.n()));
}

constexpr double kExponents[] = {0.1, 0.5, 1.0, 2.0};

double run_trial(InequalityFamily family, std::size_t trial, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double s = kExponents[trial % 4];
  const Branch branch = (trial / 4) % 2 == 0 ? Branch::Below : Branch::Above;
  switch (family) {
    case InequalityFamily::Power: {
      const HermitianMatrix a = psd_from(n, rng);
      const HermitianMatrix c = psd_from(n, rng);
      return power_trace_bounds_check(a, c, s).worst_margin;
    }
    case InequalityFamily::Loewner: {
      const HermitianMatrix a = psd_from(n, rng);
      const HermitianMatrix b = in_branch(psd_from(n, rng), branch);
      return loewner_cps_check(a, b, s).worst_margin;
    }
    case InequalityFamily::Convex: {
      const HermitianMatrix a = psd_from(n, rng);
      const HermitianMatrix b = in_branch(psd_from(n, rng), branch);
      std::function<double(double)> f;
      switch (trial % 4) {
        case 0:
          f = [](double x) { return std::max(0.0, x - 0.3); };
          break;
        case 1:
          f = [](double x) { return x * x; };
          break;
        case 2:
          f = [s](double x) { return std::pow(std::max(0.0, x), 1.0 + s); };
          break;
        default:
          f = [](double x) { return std::expm1(x); };
          break;
      }
      return convex_trace_check(a, b, f).worst_margin;
    }
    case InequalityFamily::Sandwich: {
      const HermitianMatrix a = psd_from(n, rng);
      const HermitianMatrix b(psd_from(n, rng).matrix() + 0.1 * Matrix::identity(n));
      const EigenDecomposition eb = eigendecompose(b);
      return zeta_sandwich_check(a, b, eb.values.back(), eb.values.front(), s).worst_margin;
    }
  }
  return 0.0;
}

}  // namespace

HermitianMatrix random_psd(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return psd_from(n, rng);
}

InequalityReport run_inequality_suite(InequalityFamily family, std::size_t trials,
                                      std::size_t dim_max, std::uint64_t seed) {
  if (trials == 0) throw std::domain_error("inequality suite: trials must be >= 1");
  if (dim_max < 2 || dim_max > HermitianMatrix::kMaxDim)
    throw std::domain_error("inequality suite: dim_max must be 2..64");
  std::vector<double> margins(trials);
  std::vector<std::uint64_t> seeds(trials);
  parallel_for(trials, [&](std::size_t i) {
    seeds[i] = trial_seed(seed, i);
    const std::size_t n = 2 + i % (dim_max - 1);
    margins[i] = run_trial(family, i, n, seeds[i]);
  });
  InequalityReport r;
  r.family = family_name(family);
  r.trials = trials;
  r.seed = seed;
  r.tolerance = kInequalityTol;
  r.worst_margin = *std::min_element(margins.begin(), margins.end());
  for (std::size_t i = 0; i < trials; ++i)
    if (!(margins[i] >= -kInequalityTol)) r.failures.push_back(seeds[i]);
  return r;
}

}  // namespace singtrace
