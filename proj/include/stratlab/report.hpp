#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stratlab/lipschitz.hpp"
#include "stratlab/maximal.hpp"
#include "stratlab/scenario.hpp"

namespace stratlab {

struct Assertion {
  std::string name;
  double tolerance = 0.0;
  double value = 0.0;
  bool pass = false;
};

struct QuantityResult {
  std::string name;
  std::optional<CharacterizationReport> characterization;  // base-resolution report
  std::vector<std::pair<std::string, double>> scalars;     // named values (sweep sups, residuals)
  std::optional<RatioSweep> ratios;
  std::string verdict;  // "finite" | "divergent" | "indeterminate" | ""
  std::vector<std::pair<std::string, std::string>> csv_files;  // filename → bytes
};

/// Everything one scenario run produced. Wall-clock goes to stderr, not
/// into the canonical JSON, which must be bit-identical across runs and
/// worker counts.
struct RunReport {
  Scenario scenario;
  std::vector<QuantityResult> quantities;
  std::vector<Assertion> assertions;
  std::vector<std::string> warnings;
  int workers = 1;
  std::vector<std::pair<std::string, double>> timings_sec;

  bool all_assertions_pass() const {
    for (const auto& a : assertions)
      if (!a.pass) return false;
    return true;
  }
};

/// Canonical JSON bytes (deterministic key order and number formatting).
std::string report_json(const RunReport& report);

/// CSV: ball_id, center coordinates, radius, value.
std::string characterization_csv(const CharacterizationReport& rep, const BallFamily& family);

/// CSV: fixture_id, p_norm, q_norm, ratio.
std::string ratio_csv(const RatioSweep& sweep);

/// CSV: node coordinates, value, argmax ball id (uncovered nodes flagged -1).
std::string maximal_field_csv(const LatticeDomain& domain, const MaximalField& field);

/// Atomic write: temp file in the same directory, then rename.
void atomic_write(const std::string& path, const std::string& content);

/// Writes <dir>/report.json plus every CSV the quantities carry. Creates
/// the directory when needed.
void write_report_files(const RunReport& report, const std::string& dir);

}  // namespace stratlab
