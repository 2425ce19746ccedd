#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace singtrace {

enum class CheckStatus { Pass, Fail, Skip };

// status == Pass iff |measured - expected| <= tolerance. One-sided bounds
// x <= b are reported as measured = max(0, x - b), expected = 0, with the raw
// value in `detail`.
struct VerifyResult {
  std::string check_name;
  int criterion = 0;
  CheckStatus status = CheckStatus::Skip;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::int64_t runtime_ms = 0;
  std::string detail;
};

struct VerifyOptions {
  std::vector<double> qs = {0.5, 1.0, 2.0};  // counterexample suite
  std::size_t trials = 500;                  // matrix and majorization suites
  std::size_t dim_max = 6;
  std::uint64_t seed = 7;
};

// counterexample, envelope, convergent, weights, matrix, majorization, pi,
// dichotomy, karamata, oracles, or all. Throws std::invalid_argument for an
// unknown suite; numerical failures inside a check become Fail entries.
std::vector<VerifyResult> run_suite(const std::string& suite, const VerifyOptions& options = {});

const std::vector<std::string>& suite_names();
std::string status_name(CheckStatus s);
std::string results_to_json(const std::vector<VerifyResult>& results);

}  // namespace singtrace
