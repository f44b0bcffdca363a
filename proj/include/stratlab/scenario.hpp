#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stratlab/config.hpp"
#include "stratlab/group.hpp"
#include "stratlab/grid.hpp"

namespace stratlab {

struct DomainSpec {
  std::vector<double> lo;       // broadcast when a single entry
  std::vector<double> hi;
  std::vector<double> spacing;
  double padding = 0.0;
};

struct FamilySpec {
  std::int64_t stride = 1;
  double r_min = 0.0;
  double r_max = 0.0;
  double gamma = 1.1;
  bool interior_only = true;
};

/// One reproducible verification run: everything the runner needs, echoed
/// verbatim into the report.
struct Scenario {
  std::string name;
  std::string group_id;
  DomainSpec domain;
  FamilySpec family;
  std::string exponent_p = "constant:2";  // p(·) for ratio probes
  std::string exponent_s = "constant:2";  // s(·) for characterizations
  double pair_gamma = 0.0;                // γ for sobolev pairing; 0 → α(+β)
  std::string symbol_id = "gauge-beta";
  double beta = 0.3;
  double alpha = 0.5;
  std::vector<std::string> input_ids;
  std::vector<std::string> quantities;    // mean | maximal | nonneg | hls | identities
  bool sweep = false;
  std::uint64_t seed = 1;
  std::string output_dir;                 // empty → no files written
};

Scenario parse_scenario(Config& cfg);
std::string scenario_to_config_text(const Scenario& s);

/// Theorem hypotheses, checked up front; errors name the violated one.
void validate_scenario(const Scenario& s, const GroupModel& model);

LatticeDomain build_domain(const Scenario& s, const GroupModel& model);
BallFamily build_family(const Scenario& s, const LatticeDomain& domain);

}  // namespace stratlab
