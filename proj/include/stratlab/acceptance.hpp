#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stratlab {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::vector<int> criteria;  // empty → all
  std::uint64_t seed = 1;
};

/// Runs the acceptance battery (criteria 1–9), one result per criterion.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

}  // namespace stratlab
