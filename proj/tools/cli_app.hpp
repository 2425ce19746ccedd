#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace singtrace::cli {

enum class Command { Curve, Verify, Majorize, Counterexample, MatrixSuite };

struct RunConfig {
  Command command = Command::Verify;
  std::string model;    // curve; first operand of majorize
  std::string model_b;  // majorize: the operand tested for b << a
  std::string functional = "zeta";
  std::string f_spec;
  std::vector<double> qs;
  double u_min = 1.0;
  double u_max = 10.0;
  std::size_t points = 1001;
  std::string suite = "all";
  int k_min = 14;
  int k_max = 20;
  std::size_t trials = 500;
  std::size_t dim_max = 6;
  std::uint64_t seed = 7;
  std::string family = "all";
  std::string format = "csv";
  std::string output;  // empty: stdout
  std::string csv_output;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// Parses argv into `config`. Returns the exit code to stop with (help,
// usage errors) or nullopt to continue.
std::optional<int> parse_args(int argc, char** argv, RunConfig& config);

int run(const RunConfig& config);

}  // namespace singtrace::cli
