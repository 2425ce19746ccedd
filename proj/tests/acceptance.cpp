// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "singtrace/io.hpp"
#include "singtrace/verify.hpp"

using namespace singtrace;

namespace {

struct Criterion {
  int id;
  const char* suite;
  const char* title;
};

const Criterion kCriteria[] = {
    {1, "counterexample", "counterexample gap, q in {0.5, 1, 2}"},
    {2, "envelope", "limit-point envelope of tail and Dixmier curves"},
    {3, "convergent", "harmonic model zeta/heat/generalized heat agreement"},
    {4, "weights", "weight integrals"},
    {5, "matrix", "matrix inequality suites, 500 trials each"},
    {6, "majorization", "majorization vs tail-trace equivalence"},
    {7, "pi", "pi functional probes"},
    {8, "dichotomy", "raw heat unbounded, Cesaro mean bounded"},
    {9, "karamata", "Karamata comparison"},
    {10, "oracles", "closed forms vs generic implementations"},
};

}  // namespace

int main() {
  int failed = 0;
  for (const Criterion& c : kCriteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<VerifyResult> results;
    std::string error;
    try {
      results = run_suite(c.suite);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::size_t passed = 0;
    std::string failures;
    for (const auto& r : results) {
      if (r.criterion != c.id) continue;
      if (r.status == CheckStatus::Pass) {
        ++passed;
      } else {
        failures += "\n    " + r.check_name + ": measured " + format_number(r.measured) +
                    ", expected " + format_number(r.expected) + " +- " +
                    format_number(r.tolerance) + (r.detail.empty() ? "" : " (" + r.detail + ")");
      }
    }
    const bool ok = error.empty() && failures.empty() && passed > 0;
    if (!ok) ++failed;
    std::printf("criterion %2d %s: %s  [%zu checks passed, %.2f s]%s%s\n", c.id, c.title,
                ok ? "PASS" : "FAIL", passed, secs, failures.c_str(),
                error.empty() ? "" : ("\n    error: " + error).c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, std::size(kCriteria));
  return failed == 0 ? 0 : 1;
}
