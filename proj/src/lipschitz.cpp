#include "stratlab/lipschitz.hpp"

#include <algorithm>
#include <cmath>

#include "stratlab/parallel.hpp"
#include "stratlab/rng.hpp"
#include "stratlab/summation.hpp"

namespace stratlab {

namespace {

void check_beta(double beta, const char* where) {
  if (!(beta > 0.0) || !(beta < 1.0)) contract_violation(where, "beta must lie in (0,1)");
}

double measure_pow(const GroupModel& model, double radius, double expo) {
  return std::pow(ball_measure(model, radius), expo);
}

/// Discrete mean of b over the member nodes.
double ball_mean(const GridFunction& b, const std::vector<std::int64_t>& members) {
  std::vector<double> terms(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) terms[k] = b[members[k]];
  return pairwise_sum(terms) / static_cast<double>(members.size());
}

/// Shared supremum fold: per-ball values computed in parallel, folded in
/// canonical order so the report is identical for any worker count.
CharacterizationReport fold_report(
    std::string quantity, const BallFamily& family,
    const std::function<std::optional<double>(std::size_t)>& value_of_ball) {
  const std::size_t m = family.balls.size();
  std::vector<std::optional<double>> values(m);
  parallel_for(m, [&](std::size_t j) { values[j] = value_of_ball(j); });

  CharacterizationReport rep;
  rep.quantity = std::move(quantity);
  rep.family_descriptor = family.policy.describe();
  bool any = false;
  for (std::size_t j = 0; j < m; ++j) {
    if (!values[j]) {
      ++rep.skipped_sub_resolution;
      continue;
    }
    rep.per_ball.push_back({static_cast<std::int64_t>(j), *values[j]});
    if (!any || *values[j] > rep.supremum) {
      rep.supremum = *values[j];
      rep.argmax_ball = static_cast<std::int64_t>(j);
      any = true;
    }
  }
  return rep;
}

}  // namespace

double lambda_seminorm(const GridFunction& b, double beta, std::size_t sample_pairs,
                       std::uint64_t seed) {
  check_beta(beta, "lambda_seminorm");
  const LatticeDomain& domain = b.domain();
  const GroupModel& model = domain.model();
  const std::int64_t n = domain.node_count();

  auto quotient = [&](std::int64_t i, std::int64_t j) {
    const double rho = quasi_distance(model, domain.node(i), domain.node(j));
    if (!(rho > 0.0)) return 0.0;
    return std::abs(b[i] - b[j]) / std::pow(rho, beta);
  };

  if (n <= 4096) {
    // All pairs; rows are independent, folded in row order.
    std::vector<double> row_best(static_cast<std::size_t>(n), 0.0);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
      double best = 0.0;
      for (std::int64_t j = static_cast<std::int64_t>(i) + 1; j < n; ++j)
        best = std::max(best, quotient(static_cast<std::int64_t>(i), j));
      row_best[i] = best;
    });
    double best = 0.0;
    for (double v : row_best) best = std::max(best, v);
    return best;
  }

  // Seeded sample in index space (so matched grids sample matched pairs);
  // half the pairs are near-diagonal where Hölder quotients peak.
  Rng rng(seed);
  double best = 0.0;
  for (std::size_t k = 0; k < sample_pairs; ++k) {
    const auto i = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
    std::int64_t j;
    if (k % 2 == 0) {
      auto idx = domain.multi_index(i);
      for (int axis = 0; axis < domain.dim(); ++axis) {
        const double u = rng.next_double();
        const auto span = static_cast<double>(domain.extent(axis) - 1);
        auto step = static_cast<std::int64_t>(std::floor(span * u * u * u));
        if (rng.next_u64() & 1) step = -step;
        auto& c = idx[static_cast<std::size_t>(axis)];
        c = std::clamp<std::int64_t>(c + step, 0, domain.extent(axis) - 1);
      }
      j = domain.flat_index(idx);
    } else {
      j = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n)));
    }
    if (i == j) continue;
    best = std::max(best, quotient(i, j));
  }
  return best;
}

CharacterizationReport lip_seminorm(const GridFunction& b, double beta, double p,
                                    const BallFamily& family) {
  check_beta(beta, "lip_seminorm");
  if (!(p >= 1.0)) contract_violation("lip_seminorm", "p must be >= 1");
  const GroupModel& model = b.domain().model();
  const double Q = model.Q;

  return fold_report("lip_seminorm", family, [&](std::size_t j) -> std::optional<double> {
    const Ball& ball = family.balls[j];
    const auto members = ball_node_indices(b.domain(), ball);
    if (members.empty()) return std::nullopt;
    const double mean = ball_mean(b, members);
    std::vector<double> terms(members.size());
    for (std::size_t k = 0; k < members.size(); ++k)
      terms[k] = std::pow(std::abs(b[members[k]] - mean), p);
    const double avg = pairwise_sum(terms) / static_cast<double>(members.size());
    return measure_pow(model, ball.radius, -beta / Q) * std::pow(avg, 1.0 / p);
  });
}

std::pair<GridFunction, GridFunction> split_pos_neg(const GridFunction& b) {
  std::vector<double> plus(static_cast<std::size_t>(b.size()));
  std::vector<double> minus(static_cast<std::size_t>(b.size()));
  for (std::int64_t i = 0; i < b.size(); ++i) {
    const double m = std::max(-b[i], 0.0);
    minus[static_cast<std::size_t>(i)] = m;
    plus[static_cast<std::size_t>(i)] = std::abs(b[i]) - m;
  }
  return {GridFunction(b.domain(), std::move(plus)), GridFunction(b.domain(), std::move(minus))};
}

CharacterizationReport mean_oscillation_char(const GridFunction& b, double beta,
                                             const VariableExponent& s, const BallFamily& family,
                                             const NormOptions& opt) {
  check_beta(beta, "mean_oscillation_char");
  const GroupModel& model = b.domain().model();
  const double Q = model.Q;
  const std::vector<double> sf = s.field(b.domain());

  return fold_report("mean_oscillation", family, [&](std::size_t j) -> std::optional<double> {
    const Ball& ball = family.balls[j];
    const auto members = ball_node_indices(b.domain(), ball);
    if (members.empty()) return std::nullopt;
    const double mean = ball_mean(b, members);
    const double vol = b.domain().cell_volume();
    std::vector<double> amp(members.size());
    std::vector<double> expo(members.size());
    std::vector<double> ones(members.size(), 1.0);
    for (std::size_t k = 0; k < members.size(); ++k) {
      amp[k] = std::abs(b[members[k]] - mean);
      expo[k] = sf[static_cast<std::size_t>(members[k])];
    }
    const double denom = luxemburg_norm_support(vol, ones, expo, opt);
    if (denom == 0.0) return std::nullopt;
    const double numer = luxemburg_norm_support(vol, amp, expo, opt);
    return measure_pow(model, ball.radius, -beta / Q) * numer / denom;
  });
}

namespace {

/// Engine shared by maximal_oscillation_char and nonneg_char: for each
/// family ball B*, the restricted field M_{α,B*}(b) on B*'s nodes, then a
/// caller-supplied oscillation value. Member lists and per-ball weights are
/// precomputed once; each worker range owns its scratch buffers.
CharacterizationReport restricted_oscillation(
    const std::string& quantity, const GridFunction& b, double alpha, const BallFamily& family,
    const std::function<double(const Ball&, const std::vector<std::int64_t>&,
                               const std::vector<double>&)>& value_fn) {
  const LatticeDomain& domain = b.domain();
  MaximalOperator op(b, family, alpha);

  const std::size_t m = family.balls.size();
  std::vector<std::optional<double>> values(m);

  parallel_for_ranges(m, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> scratch(static_cast<std::size_t>(domain.node_count()), -1.0);
    std::vector<std::int64_t> touched;
    std::vector<double> restricted;
    for (std::size_t j = lo; j < hi; ++j) {
      const auto& members = op.members(j);
      if (members.empty()) continue;
      const auto r = op.restrict_to(family.balls[j]);
      touched.clear();
      op.restricted_field(r, scratch, touched);
      restricted.resize(members.size());
      for (std::size_t k = 0; k < members.size(); ++k)
        restricted[k] = scratch[static_cast<std::size_t>(members[k])];
      values[j] = value_fn(family.balls[j], members, restricted);
      for (std::int64_t i : touched) scratch[static_cast<std::size_t>(i)] = -1.0;
    }
  });

  CharacterizationReport rep;
  rep.quantity = quantity;
  rep.family_descriptor = family.policy.describe();
  bool any = false;
  for (std::size_t j = 0; j < m; ++j) {
    if (!values[j]) {
      ++rep.skipped_sub_resolution;
      continue;
    }
    rep.per_ball.push_back({static_cast<std::int64_t>(j), *values[j]});
    if (!any || *values[j] > rep.supremum) {
      rep.supremum = *values[j];
      rep.argmax_ball = static_cast<std::int64_t>(j);
      any = true;
    }
  }
  return rep;
}

}  // namespace

CharacterizationReport maximal_oscillation_char(const GridFunction& b, double alpha, double beta,
                                                const VariableExponent& s,
                                                const BallFamily& family,
                                                const NormOptions& opt) {
  check_beta(beta, "maximal_oscillation_char");
  if (!(alpha > 0.0)) contract_violation("maximal_oscillation_char", "alpha must be positive");
  const GroupModel& model = b.domain().model();
  const double Q = model.Q;
  if (!(alpha + beta < Q))
    contract_violation("maximal_oscillation_char", "alpha + beta < Q required");
  const std::vector<double> sf = s.field(b.domain());
  const double vol = b.domain().cell_volume();

  return restricted_oscillation(
      "maximal_oscillation", b, alpha, family,
      [&](const Ball& ball, const std::vector<std::int64_t>& members,
          const std::vector<double>& restricted) {
        const double scale = measure_pow(model, ball.radius, -alpha / Q);
        std::vector<double> amp(members.size());
        std::vector<double> expo(members.size());
        std::vector<double> ones(members.size(), 1.0);
        for (std::size_t k = 0; k < members.size(); ++k) {
          amp[k] = std::abs(b[members[k]] - scale * restricted[k]);
          expo[k] = sf[static_cast<std::size_t>(members[k])];
        }
        const double denom = luxemburg_norm_support(vol, ones, expo, opt);
        const double numer = luxemburg_norm_support(vol, amp, expo, opt);
        return measure_pow(model, ball.radius, -beta / Q) * numer / denom;
      });
}

CharacterizationReport nonneg_char(const GridFunction& b, double beta, double s,
                                   const BallFamily& family) {
  check_beta(beta, "nonneg_char");
  if (!(s >= 1.0)) contract_violation("nonneg_char", "s must be a constant >= 1");
  const GroupModel& model = b.domain().model();
  const double Q = model.Q;

  return restricted_oscillation(
      "nonneg_oscillation", b, 0.0, family,
      [&](const Ball& ball, const std::vector<std::int64_t>& members,
          const std::vector<double>& restricted) {
        std::vector<double> terms(members.size());
        for (std::size_t k = 0; k < members.size(); ++k)
          terms[k] = std::pow(std::abs(b[members[k]] - restricted[k]), s);
        const double avg = pairwise_sum(terms) / static_cast<double>(members.size());
        return measure_pow(model, ball.radius, -beta / Q) * std::pow(avg, 1.0 / s);
      });
}

double ef_oscillation_residual(const GridFunction& b, const Ball& ball) {
  const auto members = ball_node_indices(b.domain(), ball);
  if (members.empty()) contract_violation("ef_oscillation_residual", "ball is sub-resolution");
  const double mean = ball_mean(b, members);
  std::vector<double> e_terms, f_terms;
  for (std::int64_t i : members) {
    const double dev = b[i] - mean;
    if (b[i] <= mean)
      e_terms.push_back(-dev);
    else
      f_terms.push_back(dev);
  }
  const double vol = b.domain().cell_volume();
  return std::abs(vol * pairwise_sum(e_terms) - vol * pairwise_sum(f_terms));
}

}  // namespace stratlab
