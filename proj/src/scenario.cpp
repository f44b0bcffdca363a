#include "stratlab/scenario.hpp"

#include <algorithm>
#include <sstream>

namespace stratlab {

namespace {

std::vector<double> broadcast(std::vector<double> v, int n, const char* what) {
  if (v.size() == 1) v.assign(static_cast<std::size_t>(n), v[0]);
  if (static_cast<int>(v.size()) != n)
    contract_violation("scenario", std::string(what) + " needs 1 or dim entries");
  return v;
}

}  // namespace

Scenario parse_scenario(Config& cfg) {
  Scenario s;
  s.name = cfg.take("scenario.name").value_or("unnamed");
  s.group_id = cfg.require("scenario.group");
  s.seed = static_cast<std::uint64_t>(cfg.take_int_or("scenario.seed", 1));

  auto bounds = cfg.take_doubles("domain.bounds");
  if (bounds.size() == 2) {
    s.domain.lo = {bounds[0]};
    s.domain.hi = {bounds[1]};
  } else if (!bounds.empty() && bounds.size() % 2 == 0) {
    for (std::size_t k = 0; k < bounds.size(); k += 2) {
      s.domain.lo.push_back(bounds[k]);
      s.domain.hi.push_back(bounds[k + 1]);
    }
  } else {
    contract_violation("scenario", "domain.bounds needs lo,hi (or per-axis lo,hi pairs)");
  }
  s.domain.spacing = cfg.take_doubles("domain.spacing");
  if (s.domain.spacing.empty()) contract_violation("scenario", "domain.spacing is required");
  s.domain.padding = cfg.take_double_or("domain.padding", 0.0);

  s.family.stride = cfg.take_int_or("family.stride", 1);
  s.family.r_min = cfg.require_double("family.r_min");
  s.family.r_max = cfg.require_double("family.r_max");
  s.family.gamma = cfg.take_double_or("family.gamma", 1.1);
  s.family.interior_only = cfg.take_bool_or("family.interior_only", true);

  if (auto v = cfg.take("exponents.p")) s.exponent_p = *v;
  if (auto v = cfg.take("exponents.s")) s.exponent_s = *v;
  s.pair_gamma = cfg.take_double_or("exponents.gamma", 0.0);

  if (auto v = cfg.take("symbol.id")) s.symbol_id = *v;
  s.beta = cfg.take_double_or("symbol.beta", 0.3);

  s.alpha = cfg.take_double_or("quantities.alpha", 0.5);
  s.quantities = cfg.take_strings("quantities.list");
  if (s.quantities.empty()) contract_violation("scenario", "quantities.list is required");

  s.input_ids = cfg.take_strings("inputs.ids");
  s.sweep = cfg.take_bool_or("sweep.enable", false);
  if (auto v = cfg.take("output.dir")) s.output_dir = *v;

  cfg.finish();
  return s;
}

std::string scenario_to_config_text(const Scenario& s) {
  std::ostringstream os;
  os << "[scenario]\nname = " << s.name << "\ngroup = " << s.group_id << "\nseed = " << s.seed
     << "\n[domain]\nbounds =";
  for (std::size_t k = 0; k < s.domain.lo.size(); ++k)
    os << (k ? "," : " ") << s.domain.lo[k] << ", " << s.domain.hi[k];
  os << "\nspacing =";
  for (std::size_t k = 0; k < s.domain.spacing.size(); ++k)
    os << (k ? "," : " ") << s.domain.spacing[k];
  os << "\npadding = " << s.domain.padding << "\n[family]\nstride = " << s.family.stride
     << "\nr_min = " << s.family.r_min << "\nr_max = " << s.family.r_max
     << "\ngamma = " << s.family.gamma
     << "\ninterior_only = " << (s.family.interior_only ? "true" : "false")
     << "\n[exponents]\np = " << s.exponent_p << "\ns = " << s.exponent_s
     << "\ngamma = " << s.pair_gamma << "\n[symbol]\nid = " << s.symbol_id
     << "\nbeta = " << s.beta << "\n[quantities]\nalpha = " << s.alpha << "\nlist =";
  for (std::size_t k = 0; k < s.quantities.size(); ++k) os << (k ? "," : " ") << s.quantities[k];
  os << "\n[inputs]\nids =";
  for (std::size_t k = 0; k < s.input_ids.size(); ++k) os << (k ? "," : " ") << s.input_ids[k];
  os << "\n[sweep]\nenable = " << (s.sweep ? "true" : "false") << "\n";
  if (!s.output_dir.empty()) os << "[output]\ndir = " << s.output_dir << "\n";
  return os.str();
}

void validate_scenario(const Scenario& s, const GroupModel& model) {
  const double Q = model.Q;
  if (!(s.beta > 0.0 && s.beta < 1.0))
    contract_violation("scenario", "hypothesis violated: 0<beta<1 (beta=" + std::to_string(s.beta) +
                                       ")");
  const bool needs_alpha =
      std::any_of(s.quantities.begin(), s.quantities.end(), [](const std::string& q) {
        return q == "maximal" || q == "hls" || q == "identities";
      });
  if (needs_alpha) {
    if (!(s.alpha > 0.0))
      contract_violation("scenario", "hypothesis violated: 0<alpha");
    if (!(s.alpha + s.beta < Q))
      contract_violation("scenario", "hypothesis violated: alpha+beta<Q (alpha+beta=" +
                                         std::to_string(s.alpha + s.beta) +
                                         ", Q=" + std::to_string(Q) + ")");
  }
  for (const auto& q : s.quantities)
    if (q != "mean" && q != "maximal" && q != "nonneg" && q != "hls" && q != "identities")
      contract_violation("scenario", "unknown quantity \"" + q + "\"");
}

LatticeDomain build_domain(const Scenario& s, const GroupModel& model) {
  const int n = model.dim;
  auto lo = broadcast(s.domain.lo, n, "domain.lo");
  auto hi = broadcast(s.domain.hi, n, "domain.hi");
  auto h = broadcast(s.domain.spacing, n, "domain.spacing");
  Coords clo = Coords::zeros(n), chi = Coords::zeros(n), ch = Coords::zeros(n);
  for (int k = 0; k < n; ++k) {
    clo[k] = lo[static_cast<std::size_t>(k)];
    chi[k] = hi[static_cast<std::size_t>(k)];
    ch[k] = h[static_cast<std::size_t>(k)];
  }
  return LatticeDomain(model, clo, chi, ch, s.domain.padding);
}

BallFamily build_family(const Scenario& s, const LatticeDomain& domain) {
  return build_ball_family(domain, s.family.stride, s.family.r_min, s.family.r_max,
                           s.family.gamma, s.family.interior_only);
}

}  // namespace stratlab
