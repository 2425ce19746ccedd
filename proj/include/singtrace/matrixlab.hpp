#pragma once

// Dense complex matrices of small dimension and randomized checks of trace
// and operator inequalities for positive matrices.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace singtrace {

using cplx = std::complex<double>;

class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}
  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<double>& d);

  std::size_t n() const { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  Matrix adjoint() const;
  cplx trace() const;
  double max_abs() const;
  double frobenius() const;

  friend Matrix operator*(const Matrix& x, const Matrix& y);
  friend Matrix operator+(const Matrix& x, const Matrix& y);
  friend Matrix operator-(const Matrix& x, const Matrix& y);
  friend Matrix operator*(double s, const Matrix& x);

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

// Self-adjoint matrix, 1 <= n <= 64, with |M - M*|_max <= 1e-12 max(1, |M|_max).
// The stored matrix is symmetrized exactly on construction.
class HermitianMatrix {
 public:
  static constexpr std::size_t kMaxDim = 64;
  explicit HermitianMatrix(const Matrix& m);
  std::size_t n() const { return m_.n(); }
  const Matrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

 private:
  Matrix m_;
};

struct EigenDecomposition {
  std::vector<double> values;  // nonincreasing
  Matrix vectors;              // columns are eigenvectors
};

// Cyclic Jacobi: threshold 1e-14 |H|_F on the off-diagonal norm, at most 100 sweeps.
EigenDecomposition eigendecompose(const HermitianMatrix& h);

// U f(diag lambda) U*. Throws std::domain_error if f is not finite at an eigenvalue.
HermitianMatrix matrix_function(const HermitianMatrix& h, const std::function<double(double)>& f);

// A^r for positive semidefinite A; eigenvalues in [-1e-10 |A|, 0) are treated as 0.
HermitianMatrix psd_power(const HermitianMatrix& a, double r);

// Eigenvalues of (M*M)^{1/2}, nonincreasing.
std::vector<double> singular_values(const Matrix& m);

HermitianMatrix sandwich(const HermitianMatrix& b_half, const HermitianMatrix& a);  // B^1/2 A B^1/2

struct InequalityReport {
  std::string family;
  std::size_t trials = 0;
  // Smallest relative slack min(slack / max(|lhs|, |rhs|, 1)) over all checked inequalities.
  double worst_margin = 0.0;
  std::vector<std::uint64_t> failures;  // trial seeds with relative slack below -tolerance
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  bool pass() const { return worst_margin >= -tolerance && failures.empty(); }
};

inline constexpr double kInequalityTol = 1e-9;

// Tr(A^{1+s} + C^{1+s}) <= Tr((A+C)^{1+s}) <= 2^s Tr(A^{1+s} + C^{1+s})
InequalityReport power_trace_bounds_check(const HermitianMatrix& a, const HermitianMatrix& c,
                                          double s);
// (B^1/2 A B^1/2)^{1+s} <= B^1/2 A^{1+s} B^1/2 for B <= 1, reversed for B >= 1.
InequalityReport loewner_cps_check(const HermitianMatrix& a, const HermitianMatrix& b, double s);
// Tr(B^1/2 f(A) B^1/2) >= Tr f(B^1/2 A B^1/2) for B <= 1, reversed for B >= 1.
InequalityReport convex_trace_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                    const std::function<double(double)>& f);
// m^s Tr(A^{1+s} B) <= Tr((B^1/2 A B^1/2)^{1+s}) <= M^s Tr(A^{1+s} B) for m <= B <= M.
InequalityReport zeta_sandwich_check(const HermitianMatrix& a, const HermitianMatrix& b, double m,
                                     double M, double s);

enum class InequalityFamily { Power, Loewner, Convex, Sandwich };

InequalityFamily parse_family(const std::string& name);
std::string family_name(InequalityFamily f);

// Counter-based per-trial seed.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// Random A = G G* / n with a complex Gaussian factor G.
HermitianMatrix random_psd(std::size_t n, std::uint64_t seed);

// Runs `trials` independent trials with dimensions 2..dim_max and s cycling
// through {0.1, 0.5, 1, 2}; trial i uses trial_seed(seed, i).
InequalityReport run_inequality_suite(InequalityFamily family, std::size_t trials,
                                      std::size_t dim_max, std::uint64_t seed);

}  // namespace singtrace
