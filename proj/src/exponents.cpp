#include "stratlab/exponents.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "stratlab/rng.hpp"

namespace stratlab {

VariableExponent::VariableExponent(std::string description, ExponentKind kind,
                                   std::function<double(const GroupPoint&)> eval,
                                   std::optional<double> p_inf)
    : description_(std::move(description)), kind_(kind), eval_(std::move(eval)), p_inf_(p_inf) {}

VariableExponent::Bounds VariableExponent::bounds(const LatticeDomain& domain) const {
  Bounds b{std::numeric_limits<double>::infinity(), 0.0};
  for (std::int64_t i = 0; i < domain.node_count(); ++i) {
    const double v = eval_(domain.node(i));
    if (!std::isfinite(v) || v < 1.0)
      contract_violation("VariableExponent",
                         "exponent must be finite and >= 1 on every node (got " +
                             std::to_string(v) + " for " + description_ + ")");
    b.p_minus = std::min(b.p_minus, v);
    b.p_plus = std::max(b.p_plus, v);
  }
  return b;
}

std::vector<double> VariableExponent::field(const LatticeDomain& domain) const {
  std::vector<double> out(static_cast<std::size_t>(domain.node_count()));
  for (std::int64_t i = 0; i < domain.node_count(); ++i) {
    const double v = eval_(domain.node(i));
    if (!std::isfinite(v) || v < 1.0)
      contract_violation("VariableExponent", "exponent must be finite and >= 1 on every node");
    out[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

VariableExponent constant_exponent(double p) {
  if (!(p >= 1.0)) contract_violation("constant_exponent", "need p >= 1");
  std::ostringstream os;
  os << "constant:" << p;
  return VariableExponent(os.str(), ExponentKind::Constant,
                          [p](const GroupPoint&) { return p; },
                          p);
}

VariableExponent conjugate(const VariableExponent& p) {
  auto inner = p;
  return VariableExponent(
      "conjugate(" + p.description() + ")",
      p.kind() == ExponentKind::Constant ? ExponentKind::Constant : ExponentKind::Analytic,
      [inner](const GroupPoint& x) {
        const double v = inner(x);
        if (!(v > 1.0))
          contract_violation("conjugate", "p(x) = 1 makes the conjugate unbounded");
        return v / (v - 1.0);
      },
      p.p_inf() && *p.p_inf() > 1.0 ? std::optional<double>(*p.p_inf() / (*p.p_inf() - 1.0))
                                    : std::nullopt);
}

VariableExponent scaled_exponent(const VariableExponent& p, double s) {
  if (!(s > 0.0)) contract_violation("scaled_exponent", "need s > 0");
  auto inner = p;
  std::ostringstream os;
  os << s << "*" << p.description();
  return VariableExponent(os.str(),
                          p.kind() == ExponentKind::Constant ? ExponentKind::Constant
                                                             : ExponentKind::Analytic,
                          [inner, s](const GroupPoint& x) { return s * inner(x); },
                          p.p_inf() ? std::optional<double>(s * *p.p_inf()) : std::nullopt);
}

ExponentPair sobolev_pair(const VariableExponent& p, double gamma, const LatticeDomain& domain) {
  const double Q = domain.model().Q;
  if (!(gamma > 0.0) || !(gamma < Q))
    contract_violation("sobolev_pair", "need 0 < gamma < Q = " + std::to_string(Q));
  const auto b = p.bounds(domain);
  if (!(b.p_plus < Q / gamma)) {
    std::ostringstream os;
    os << "requires p_plus < Q/gamma: p_plus = " << b.p_plus << ", Q/gamma = " << Q / gamma
       << " (margin " << Q / gamma - b.p_plus << ")";
    contract_violation("sobolev_pair", os.str());
  }
  auto inner = p;
  VariableExponent q(
      "sobolev(" + p.description() + ",gamma=" + std::to_string(gamma) + ")",
      p.kind() == ExponentKind::Constant ? ExponentKind::Constant : ExponentKind::Analytic,
      [inner, gamma, Q](const GroupPoint& x) { return 1.0 / (1.0 / inner(x) - gamma / Q); },
      p.p_inf() ? std::optional<double>(1.0 / (1.0 / *p.p_inf() - gamma / Q)) : std::nullopt);
  return ExponentPair{p, q, gamma};
}

LogHolderConstants log_holder_constants(const VariableExponent& p, const LatticeDomain& domain,
                                        std::size_t max_pairs, std::uint64_t seed) {
  LogHolderConstants out;
  const auto& model = domain.model();
  const std::int64_t n = domain.node_count();
  const std::vector<double> pf = p.field(domain);

  auto ratio = [&](std::int64_t i, std::int64_t j) {
    const double rho = quasi_distance(model, domain.node(i), domain.node(j));
    if (!(rho > 0.0)) return 0.0;
    return std::abs(pf[static_cast<std::size_t>(i)] - pf[static_cast<std::size_t>(j)]) *
           std::log(std::numbers::e + 1.0 / rho);
  };

  const auto all_pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  if (all_pairs <= max_pairs) {
    for (std::int64_t i = 0; i < n; ++i)
      for (std::int64_t j = i + 1; j < n; ++j) {
        out.c_local = std::max(out.c_local, ratio(i, j));
        ++out.pairs_sampled;
      }
  } else {
    Rng rng(seed);
    // Half the sample is near-diagonal (adjacent nodes), where jump-type
    // exponents reveal divergence; the rest is uniform.
    for (std::size_t k = 0; k < max_pairs; ++k) {
      const auto i = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
      std::int64_t j;
      if (k % 2 == 0) {
        auto idx = domain.multi_index(i);
        const int axis = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(domain.dim())));
        const std::int64_t step = (rng.next_u64() & 1) ? 1 : -1;
        auto& c = idx[static_cast<std::size_t>(axis)];
        c = std::clamp<std::int64_t>(c + step, 0, domain.extent(axis) - 1);
        j = domain.flat_index(idx);
      } else {
        j = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
      }
      if (i == j) continue;
      out.c_local = std::max(out.c_local, ratio(i, j));
      ++out.pairs_sampled;
    }
  }

  if (p.p_inf()) {
    const GroupPoint theta = group_identity(model);
    double worst = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      const double rho = quasi_distance(model, theta, domain.node(i));
      worst = std::max(worst, std::abs(pf[static_cast<std::size_t>(i)] - *p.p_inf()) *
                                  std::log(std::numbers::e + rho));
    }
    out.c_decay = worst;
  }
  return out;
}

ClassBVerdict in_class_B_heuristic(const VariableExponent& p, const LatticeDomain& domain) {
  ClassBVerdict v;
  const auto b = p.bounds(domain);
  v.p_minus = b.p_minus;

  LatticeDomain d1 = domain;
  for (int level = 0; level < 3; ++level) {
    const auto c = log_holder_constants(p, d1);
    v.c_local_sweep.push_back(c.c_local);
    if (c.c_decay) v.c_decay_sweep.push_back(*c.c_decay);
    if (level < 2) d1 = d1.refined();
  }

  // Stability: successive ratios within [0.5, 2] and no sustained growth.
  // A bounded jump grows only like log(e+2/h)/log(e+1/h) ≈ 1.2 per halving,
  // so the growth gate has to be tighter than the stability envelope.
  auto stable = [](const std::vector<double>& sweep, std::string& notes) {
    constexpr double kTiny = 1e-9;
    constexpr double kGrowth = 1.08;
    bool in_envelope = true;
    bool sustained_growth = true;
    for (std::size_t k = 0; k + 1 < sweep.size(); ++k) {
      const double a = sweep[k], b2 = sweep[k + 1];
      if (a <= kTiny && b2 <= kTiny) {
        sustained_growth = false;
        continue;
      }
      if (a <= kTiny) {
        in_envelope = false;
        continue;
      }
      const double r = b2 / a;
      if (r < 0.5 || r > 2.0) in_envelope = false;
      if (r < kGrowth) sustained_growth = false;
    }
    if (!in_envelope) notes += "constants outside the [0.5,2] refinement envelope; ";
    if (sustained_growth) notes += "constants grow monotonically under refinement; ";
    return in_envelope && !sustained_growth;
  };

  bool ok = b.p_minus > 1.0;
  if (!ok) v.notes += "p_minus <= 1; ";
  ok = stable(v.c_local_sweep, v.notes) && ok;
  if (!v.c_decay_sweep.empty()) ok = stable(v.c_decay_sweep, v.notes) && ok;

  v.sufficient_condition_met = ok;
  v.verdict = ok ? "sufficient-condition-met" : "inconclusive";
  return v;
}

}  // namespace stratlab
