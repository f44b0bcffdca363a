#pragma once

#include "stratlab/report.hpp"

namespace stratlab {

/// Executes every requested quantity; deterministic given the scenario
/// seed. Writes CSV/JSON atomically when the scenario names an output dir.
RunReport run_scenario(const Scenario& s);

/// Built-in scenarios, runnable by name ("thm12-positive",
/// "lemma212-identities", "hls-probe").
const std::vector<std::pair<std::string, std::string>>& builtin_scenarios();

/// Resolves a name against the built-ins, then the filesystem.
Scenario load_scenario(const std::string& name_or_path);

struct FixtureCatalogEntry {
  std::string id;
  std::string role;
  std::string analytic_tag;
  bool needs_beta;
  std::string description;
};

std::vector<FixtureCatalogEntry> list_fixtures();

}  // namespace stratlab
