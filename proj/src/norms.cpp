#include "stratlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stratlab/summation.hpp"

namespace stratlab {

namespace {

double modular_support(double cell_volume, std::span<const double> amplitudes,
                       std::span<const double> exponents, double eta) {
  std::vector<double> terms(amplitudes.size());
  for (std::size_t i = 0; i < amplitudes.size(); ++i)
    terms[i] = std::pow(amplitudes[i] / eta, exponents[i]);
  return cell_volume * pairwise_sum(terms);
}

}  // namespace

double modular(const GridFunction& f, const VariableExponent& p, double eta) {
  if (!(eta > 0.0)) contract_violation("modular", "eta must be positive");
  const auto pf = p.field(f.domain());
  std::vector<double> terms(static_cast<std::size_t>(f.size()));
  for (std::int64_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    terms[static_cast<std::size_t>(i)] =
        a == 0.0 ? 0.0 : std::pow(a / eta, pf[static_cast<std::size_t>(i)]);
  }
  return f.domain().cell_volume() * pairwise_sum(terms);
}

double luxemburg_norm_support(double cell_volume, std::span<const double> amplitudes,
                              std::span<const double> exponents, const NormOptions& opt) {
  if (amplitudes.size() != exponents.size())
    contract_violation("luxemburg_norm_support", "amplitude/exponent size mismatch");
  std::vector<double> a;
  std::vector<double> p;
  a.reserve(amplitudes.size());
  p.reserve(amplitudes.size());
  double a_max = 0.0;
  double p_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    const double ai = std::abs(amplitudes[i]);
    if (ai == 0.0) continue;
    a.push_back(ai);
    p.push_back(exponents[i]);
    a_max = std::max(a_max, ai);
    p_min = std::min(p_min, exponents[i]);
  }
  if (a.empty()) return 0.0;

  const double support = cell_volume * static_cast<double>(a.size());
  double eta = a_max * std::pow(support, 1.0 / p_min);
  if (!(eta > 0.0) || !std::isfinite(eta)) eta = a_max;

  auto mod = [&](double e) { return modular_support(cell_volume, a, p, e); };

  // Bracket so that mod(lo) > 1 >= mod(hi).
  double lo = 0.0, hi = 0.0;
  if (mod(eta) <= 1.0) {
    hi = eta;
    for (int k = 0; k < opt.max_bracket_steps; ++k) {
      const double cand = hi * 0.5;
      if (mod(cand) > 1.0) {
        lo = cand;
        break;
      }
      hi = cand;
    }
    if (lo == 0.0)
      contract_violation("luxemburg_norm",
                         "bracket expansion failed after " +
                             std::to_string(opt.max_bracket_steps) +
                             " halvings (modular stays <= 1; f may be numerically 0)");
  } else {
    lo = eta;
    bool found = false;
    for (int k = 0; k < opt.max_bracket_steps; ++k) {
      const double cand = lo * 2.0;
      if (mod(cand) <= 1.0) {
        hi = cand;
        found = true;
        break;
      }
      lo = cand;
    }
    if (!found)
      contract_violation("luxemburg_norm",
                         "bracket expansion failed after " +
                             std::to_string(opt.max_bracket_steps) +
                             " doublings (modular stays > 1)");
  }

  while ((hi - lo) > opt.bisect_rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mod(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double luxemburg_norm(const GridFunction& f, const VariableExponent& p, const NormOptions& opt) {
  const auto pf = p.field(f.domain());
  return luxemburg_norm_support(f.domain().cell_volume(), f.values(), pf, opt);
}

double weak_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0)) contract_violation("weak_norm", "p must be a constant >= 1");
  std::vector<double> mags(f.values().size());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(f.values()[i]);
  std::sort(mags.begin(), mags.end());
  const double vol = f.domain().cell_volume();
  double best = 0.0;
  const std::size_t n = mags.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (mags[i] == 0.0) continue;
    if (i > 0 && mags[i] == mags[i - 1]) continue;  // distinct values only
    const auto count_ge = static_cast<double>(n - i);
    best = std::max(best, mags[i] * std::pow(vol * count_ge, 1.0 / p));
  }
  return best;
}

std::optional<double> holder_ratio(const GridFunction& f, const GridFunction& g,
                                   const VariableExponent& p, const NormOptions& opt) {
  if (!f.domain().same_layout(g.domain()))
    contract_violation("holder_ratio", "f and g live on different lattices");
  std::vector<double> terms(static_cast<std::size_t>(f.size()));
  for (std::int64_t i = 0; i < f.size(); ++i)
    terms[static_cast<std::size_t>(i)] = std::abs(f[i] * g[i]);
  const double prod = f.domain().cell_volume() * pairwise_sum(terms);
  const double nf = luxemburg_norm(f, p, opt);
  const double ng = luxemburg_norm(g, conjugate(p), opt);
  if (nf == 0.0 || ng == 0.0) return std::nullopt;
  return prod / (nf * ng);
}

double power_identity_residual(const GridFunction& f, const VariableExponent& p, double s,
                               const NormOptions& opt) {
  if (!(s > 0.0)) contract_violation("power_identity_residual", "s must be positive");
  const auto b = p.bounds(f.domain());
  if (s * b.p_minus < 1.0 - 1e-12)
    contract_violation("power_identity_residual",
                       "s*p_minus must be >= 1 (got " + std::to_string(s * b.p_minus) + ")");
  const auto pf = p.field(f.domain());
  std::vector<double> powered(static_cast<std::size_t>(f.size()));
  for (std::int64_t i = 0; i < f.size(); ++i)
    powered[static_cast<std::size_t>(i)] = std::pow(std::abs(f[i]), s);
  const double lhs = luxemburg_norm_support(f.domain().cell_volume(), powered, pf, opt);

  std::vector<double> sp(pf.size());
  for (std::size_t i = 0; i < pf.size(); ++i) sp[i] = s * pf[i];
  const double rhs =
      std::pow(luxemburg_norm_support(f.domain().cell_volume(), f.values(), sp, opt), s);
  return std::abs(lhs - rhs);
}

DualityProduct char_duality_product(const LatticeDomain& domain, const Ball& ball,
                                    const VariableExponent& p, const NormOptions& opt) {
  DualityProduct out;
  const auto members = ball_node_indices(domain, ball);
  if (members.empty()) {
    out.sub_resolution = true;
    return out;
  }
  std::vector<double> ones(members.size(), 1.0);
  std::vector<double> pv(members.size());
  std::vector<double> pc(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    const double v = p(domain.node(members[k]));
    if (!(v > 1.0))
      contract_violation("char_duality_product", "requires p > 1 on the ball");
    pv[k] = v;
    pc[k] = v / (v - 1.0);
  }
  const double vol = domain.cell_volume();
  const double n1 = luxemburg_norm_support(vol, ones, pv, opt);
  const double n2 = luxemburg_norm_support(vol, ones, pc, opt);
  out.value = n1 * n2 / ball_measure(domain.model(), ball.radius);
  return out;
}

}  // namespace stratlab
