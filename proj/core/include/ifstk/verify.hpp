#pragma once

#include <string>
#include <vector>

namespace ifstk {

// One acceptance experiment: an exact finite-level identity or a banded
// empirical check. Each runs in seconds at the desk budget.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail; // measured values against the declared band
};

std::vector<CriterionResult> run_acceptance();

} // namespace ifstk
