#pragma once

#include <string>
#include <vector>

#include "stratlab/exponents.hpp"
#include "stratlab/lipschitz.hpp"
#include "stratlab/rng.hpp"

namespace stratlab {

struct FixtureInfo {
  std::string id;
  std::string role;  // "symbol" | "input"
  std::string analytic_tag;
  bool needs_beta = false;
  std::string description;
};

/// Stable catalog of named analytic fixtures.
const std::vector<FixtureInfo>& fixture_catalog();

/// Builds a symbol b by id; beta is required for the gauge fixtures.
SymbolFixture make_symbol(const std::string& id, const GroupModel& model, double beta);

/// Builds an input f by id (all inputs are supported in the unit gauge ball
/// or a small shift of it, so they stay inside any core with margin ≥ 1.6).
std::function<double(const GroupPoint&)> make_input(const std::string& id,
                                                    const GroupModel& model);

/// Exponent presets from a spec string:
///   constant:<p> | radial-log:<base>,<amp> | bump:<base>,<amp> | jump:<lo>,<hi>
/// radial-log and bump declare p_inf = base; jump declares none.
VariableExponent exponent_preset(const std::string& spec, const GroupModel& model);

/// Seeded smooth random fixture: a small sum of gauge Gaussians with
/// centers in the unit ball. Used by the norm/Hölder batteries.
std::function<double(const GroupPoint&)> random_smooth_input(const GroupModel& model, Rng& rng);

/// Seeded random exponent with p₋ > 1, drawn from the preset families.
VariableExponent random_exponent(const GroupModel& model, Rng& rng);

}  // namespace stratlab
