// Acceptance suite: runs every criterion and prints one pass/fail line each.
// Exit code 0 iff all pass.

#include <cstdio>

#include "ifstk/verify.hpp"

int main() {
  const std::vector<ifstk::CriterionResult> results = ifstk::run_acceptance();
  int passed = 0;
  for (const ifstk::CriterionResult& r : results) {
    std::printf("[%s] C%-2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str());
    std::fflush(stdout);
    if (r.pass) ++passed;
  }
  std::printf("%d/%zu acceptance criteria passed\n", passed, results.size());
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}
