#include "stratlab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stratlab/parallel.hpp"
#include "stratlab/summation.hpp"

namespace stratlab {

namespace {

void check_alpha(double alpha, const GroupModel& model, const char* where) {
  if (!(alpha >= 0.0) || !(alpha <= static_cast<double>(model.Q)))
    contract_violation(where, "alpha must lie in [0, Q] with Q = " + std::to_string(model.Q));
}

double pow_measure(const GroupModel& model, double radius, double alpha) {
  if (alpha == 0.0) return 1.0;
  return std::pow(ball_measure(model, radius), alpha / static_cast<double>(model.Q));
}

}  // namespace

MaximalOperator::MaximalOperator(const GridFunction& f, const BallFamily& family, double alpha)
    : f_(&f), family_(&family), alpha_(alpha) {
  check_alpha(alpha, f.domain().model(), "MaximalOperator");
  if (family.balls.empty()) contract_violation("MaximalOperator", "empty ball family");
  const std::size_t m = family.balls.size();
  members_.resize(m);
  mean_abs_.assign(m, 0.0);
  weight_.assign(m, 0.0);

  const GroupModel& model = f.domain().model();
  parallel_for(m, [&](std::size_t j) {
    const Ball& ball = family.balls[j];
    auto idx = ball_node_indices(f.domain(), ball);
    if (!idx.empty()) {
      std::vector<double> terms(idx.size());
      for (std::size_t k = 0; k < idx.size(); ++k) terms[k] = std::abs((*f_)[idx[k]]);
      const double mean = pairwise_sum(terms) / static_cast<double>(idx.size());
      mean_abs_[j] = mean;
      weight_[j] = pow_measure(model, ball.radius, alpha_) * mean;
    }
    members_[j] = std::move(idx);
  });
  for (std::size_t j = 0; j < m; ++j)
    if (members_[j].empty()) ++sub_resolution_;
}

PointMax MaximalOperator::at(const GroupPoint& x) const {
  PointMax out;
  const GroupModel& model = f_->domain().model();
  for (std::size_t j = 0; j < family_->balls.size(); ++j) {
    if (members_[j].empty()) continue;
    if (!ball_contains(model, family_->balls[j], x)) continue;
    if (!out.covered || weight_[j] > out.value) {
      out.value = weight_[j];
      out.argmax_ball = static_cast<std::int64_t>(j);
    }
    out.covered = true;
  }
  if (!out.covered) out.value = 0.0;
  return out;
}

MaximalField MaximalOperator::field() const {
  const auto n = static_cast<std::size_t>(f_->domain().node_count());
  MaximalField out;
  out.value.assign(n, -1.0);
  out.argmax.assign(n, -1);
  out.covered.assign(n, 0);
  // Scatter in canonical order; strict > keeps the first maximizer.
  for (std::size_t j = 0; j < members_.size(); ++j) {
    const double w = weight_[j];
    for (std::int64_t i : members_[j]) {
      auto ui = static_cast<std::size_t>(i);
      out.covered[ui] = 1;
      if (w > out.value[ui]) {
        out.value[ui] = w;
        out.argmax[ui] = static_cast<std::int64_t>(j);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!out.covered[i]) {
      out.value[i] = 0.0;
      ++out.uncovered;
    }
  }
  return out;
}

MaximalOperator::Restricted MaximalOperator::restrict_to(const Ball& bstar) const {
  Restricted out;
  const GroupModel& model = f_->domain().model();
  const auto star_members = ball_node_indices(f_->domain(), bstar);
  std::vector<std::uint64_t> bits((static_cast<std::size_t>(f_->domain().node_count()) + 63) / 64,
                                  0);
  for (std::int64_t i : star_members)
    bits[static_cast<std::size_t>(i) >> 6] |= (1ULL << (static_cast<std::size_t>(i) & 63));

  // Containment: the metric test d + r ≤ c0·r* certifies B ⊆ B*; balls near
  // the boundary that fail it get nodewise verification, since the discrete
  // operator only sees lattice members anyway.
  const double certain = model.c0 * bstar.radius * (1.0 + 1e-12);
  bool bstar_in_family = false;
  for (std::size_t j = 0; j < family_->balls.size(); ++j) {
    const Ball& b = family_->balls[j];
    if (members_[j].empty()) continue;
    const double dist = quasi_distance(model, b.center, bstar.center);
    if (dist >= model.c0 * (b.radius + bstar.radius)) continue;  // cannot even intersect
    if (dist + b.radius > certain) {
      bool inside = true;
      for (std::int64_t i : members_[j]) {
        if (!(bits[static_cast<std::size_t>(i) >> 6] >> (static_cast<std::size_t>(i) & 63) &
              1ULL)) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
    }
    out.family_balls.push_back(j);
    if (b.center == bstar.center && b.radius == bstar.radius) bstar_in_family = true;
  }
  if (!bstar_in_family && !star_members.empty()) {
    std::vector<double> terms(star_members.size());
    for (std::size_t k = 0; k < star_members.size(); ++k)
      terms[k] = std::abs((*f_)[star_members[k]]);
    const double mean = pairwise_sum(terms) / static_cast<double>(star_members.size());
    out.appended_bstar = bstar;
    out.appended_weight = pow_measure(model, bstar.radius, alpha_) * mean;
    out.appended_members = star_members;
  }
  return out;
}

PointMax MaximalOperator::at_restricted(const GroupPoint& x, const Ball& bstar) const {
  const Restricted r = restrict_to(bstar);
  PointMax out;
  const GroupModel& model = f_->domain().model();
  for (std::size_t j : r.family_balls) {
    if (!ball_contains(model, family_->balls[j], x)) continue;
    if (!out.covered || weight_[j] > out.value) {
      out.value = weight_[j];
      out.argmax_ball = static_cast<std::int64_t>(j);
    }
    out.covered = true;
  }
  if (r.appended_bstar && ball_contains(model, *r.appended_bstar, x)) {
    if (!out.covered || r.appended_weight > out.value) {
      out.value = r.appended_weight;
      out.argmax_ball = -1;
    }
    out.covered = true;
  }
  if (!out.covered) out.value = 0.0;
  return out;
}

void MaximalOperator::restricted_field(const Restricted& r, std::vector<double>& scratch,
                                       std::vector<std::int64_t>& touched) const {
  for (std::size_t j : r.family_balls) {
    const double w = weight_[j];
    for (std::int64_t i : members_[j]) {
      auto ui = static_cast<std::size_t>(i);
      if (scratch[ui] < 0.0) touched.push_back(i);
      if (w > scratch[ui]) scratch[ui] = w;
    }
  }
  if (r.appended_bstar) {
    const double w = r.appended_weight;
    for (std::int64_t i : r.appended_members) {
      auto ui = static_cast<std::size_t>(i);
      if (scratch[ui] < 0.0) touched.push_back(i);
      if (w > scratch[ui]) scratch[ui] = w;
    }
  }
}

namespace {

const BallFamily& family_of(const MaximalConfig& cfg, const char* where) {
  if (!cfg.family) contract_violation(where, "config carries no ball family");
  return *cfg.family;
}

}  // namespace

PointMax maximal(const GridFunction& f, const MaximalConfig& cfg, const GroupPoint& x) {
  MaximalOperator op(f, family_of(cfg, "maximal"), cfg.alpha);
  return cfg.restriction ? op.at_restricted(x, *cfg.restriction) : op.at(x);
}

MaximalField maximal_field(const GridFunction& f, const MaximalConfig& cfg) {
  MaximalOperator op(f, family_of(cfg, "maximal_field"), cfg.alpha);
  if (!cfg.restriction) return op.field();
  const auto n = static_cast<std::size_t>(f.domain().node_count());
  MaximalField out;
  out.value.assign(n, 0.0);
  out.argmax.assign(n, -1);
  out.covered.assign(n, 0);
  std::vector<double> scratch(n, -1.0);
  std::vector<std::int64_t> touched;
  const auto r = op.restrict_to(*cfg.restriction);
  op.restricted_field(r, scratch, touched);
  for (std::int64_t i : touched) {
    out.value[static_cast<std::size_t>(i)] = scratch[static_cast<std::size_t>(i)];
    out.covered[static_cast<std::size_t>(i)] = 1;
  }
  out.uncovered = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(touched.size());
  return out;
}

PointMax maximal_restricted(const GridFunction& b, double alpha, const Ball& bstar,
                            const BallFamily& family, const GroupPoint& x) {
  MaximalOperator op(b, family, alpha);
  return op.at_restricted(x, bstar);
}

CommutatorOperator::CommutatorOperator(const GridFunction& b, const GridFunction& f,
                                       const BallFamily& family, double alpha)
    : b_(&b), domain_(&f.domain()), alpha_(alpha) {
  if (!b.domain().same_layout(f.domain()))
    contract_violation("CommutatorOperator", "b and f live on different lattices");
  check_alpha(alpha, domain_->model(), "CommutatorOperator");
  const std::size_t m = family.balls.size();
  ball_count_ = m;
  pow_measure_.assign(m, 0.0);
  counts_.assign(m, 0);
  table_offset_.assign(m + 1, 0);

  std::vector<std::vector<std::int64_t>> members(m);
  parallel_for(m, [&](std::size_t j) {
    members[j] = ball_node_indices(*domain_, family.balls[j]);
    pow_measure_[j] = pow_measure(domain_->model(), family.balls[j].radius, alpha_);
  });

  std::size_t total = 0;
  for (std::size_t j = 0; j < m; ++j) {
    counts_[j] = static_cast<std::int64_t>(members[j].size());
    table_offset_[j] = total;
    total += members[j].size();
  }
  table_offset_[m] = total;
  sorted_b_.assign(total, 0.0);
  prefix_w_.assign(total, 0.0);
  prefix_bw_.assign(total, 0.0);

  parallel_for(m, [&](std::size_t j) {
    const auto& idx = members[j];
    if (idx.empty()) return;
    std::vector<std::pair<double, double>> rows(idx.size());  // (b(y), |f(y)|)
    for (std::size_t k = 0; k < idx.size(); ++k)
      rows[k] = {(*b_)[idx[k]], std::abs(f[idx[k]])};
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& c) { return a.first < c.first; });
    const std::size_t off = table_offset_[j];
    double w_acc = 0.0, bw_acc = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      sorted_b_[off + k] = rows[k].first;
      w_acc += rows[k].second;
      bw_acc += rows[k].first * rows[k].second;
      prefix_w_[off + k] = w_acc;
      prefix_bw_[off + k] = bw_acc;
    }
  });

  // CSR of covering balls per node, ball ids ascending.
  const auto n = static_cast<std::size_t>(domain_->node_count());
  csr_offset_.assign(n + 1, 0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::int64_t i : members[j]) ++csr_offset_[static_cast<std::size_t>(i) + 1];
  for (std::size_t i = 0; i < n; ++i) csr_offset_[i + 1] += csr_offset_[i];
  csr_ball_.assign(csr_offset_[n], 0);
  std::vector<std::size_t> cursor(csr_offset_.begin(), csr_offset_.end() - 1);
  for (std::size_t j = 0; j < m; ++j)
    for (std::int64_t i : members[j])
      csr_ball_[cursor[static_cast<std::size_t>(i)]++] = static_cast<std::int32_t>(j);
}

double CommutatorOperator::query(std::size_t ball, double bx) const {
  const std::size_t off = table_offset_[ball];
  const auto n = static_cast<std::size_t>(counts_[ball]);
  const double* bv = sorted_b_.data() + off;
  const std::size_t k =
      static_cast<std::size_t>(std::lower_bound(bv, bv + n, bx) - bv);  // first b(y) >= b(x)
  const double w_total = prefix_w_[off + n - 1];
  const double bw_total = prefix_bw_[off + n - 1];
  const double w_lo = k == 0 ? 0.0 : prefix_w_[off + k - 1];
  const double bw_lo = k == 0 ? 0.0 : prefix_bw_[off + k - 1];
  // Σ_{b(y)<b(x)} (b(x)−b(y))|f| + Σ_{b(y)≥b(x)} (b(y)−b(x))|f|
  const double s = bx * w_lo - bw_lo + (bw_total - bw_lo) - bx * (w_total - w_lo);
  // Nonnegative by construction; rounding in the prefix differences can
  // leave a tiny negative residue.
  return std::max(0.0, pow_measure_[ball] * s / static_cast<double>(counts_[ball]));
}

PointMax CommutatorOperator::at_node(std::int64_t node) const {
  PointMax out;
  const double bx = (*b_)[node];
  const auto ui = static_cast<std::size_t>(node);
  for (std::size_t c = csr_offset_[ui]; c < csr_offset_[ui + 1]; ++c) {
    const auto j = static_cast<std::size_t>(csr_ball_[c]);
    const double v = query(j, bx);
    if (!out.covered || v > out.value) {
      out.value = v;
      out.argmax_ball = static_cast<std::int64_t>(j);
    }
    out.covered = true;
  }
  if (!out.covered) out.value = 0.0;
  return out;
}

MaximalField CommutatorOperator::field() const {
  const auto n = static_cast<std::size_t>(domain_->node_count());
  MaximalField out;
  out.value.assign(n, 0.0);
  out.argmax.assign(n, -1);
  out.covered.assign(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const PointMax pm = at_node(static_cast<std::int64_t>(i));
    out.value[i] = pm.value;
    out.argmax[i] = pm.argmax_ball;
    out.covered[i] = pm.covered ? 1 : 0;
  });
  for (std::size_t i = 0; i < n; ++i)
    if (!out.covered[i]) ++out.uncovered;
  return out;
}

PointMax maximal_commutator(const GridFunction& b, const GridFunction& f,
                            const MaximalConfig& cfg, std::int64_t node) {
  CommutatorOperator op(b, f, family_of(cfg, "maximal_commutator"), cfg.alpha);
  return op.at_node(node);
}

MaximalField maximal_commutator_field(const GridFunction& b, const GridFunction& f,
                                      const MaximalConfig& cfg) {
  CommutatorOperator op(b, f, family_of(cfg, "maximal_commutator_field"), cfg.alpha);
  return op.field();
}

SignedField nonlinear_commutator_field(const GridFunction& b, const GridFunction& f,
                                       const MaximalConfig& cfg) {
  if (!b.domain().same_layout(f.domain()))
    contract_violation("nonlinear_commutator", "b and f live on different lattices");
  const BallFamily& family = family_of(cfg, "nonlinear_commutator");
  MaximalOperator m_f(f, family, cfg.alpha);

  std::vector<double> bf(static_cast<std::size_t>(f.size()));
  for (std::int64_t i = 0; i < f.size(); ++i)
    bf[static_cast<std::size_t>(i)] = b[i] * f[i];
  GridFunction bf_grid(f.domain(), std::move(bf));
  MaximalOperator m_bf(bf_grid, family, cfg.alpha);

  const MaximalField ff = m_f.field();
  const MaximalField fbf = m_bf.field();
  SignedField out;
  const auto n = static_cast<std::size_t>(f.domain().node_count());
  out.value.assign(n, 0.0);
  out.covered.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (ff.covered[i]) {
      out.covered[i] = 1;
      out.value[i] = b[static_cast<std::int64_t>(i)] * ff.value[i] - fbf.value[i];
    } else {
      ++out.uncovered;
    }
  }
  return out;
}

double nonlinear_commutator(const GridFunction& b, const GridFunction& f,
                            const MaximalConfig& cfg, std::int64_t node) {
  const BallFamily& family = family_of(cfg, "nonlinear_commutator");
  MaximalOperator m_f(f, family, cfg.alpha);
  std::vector<double> bf(static_cast<std::size_t>(f.size()));
  for (std::int64_t i = 0; i < f.size(); ++i)
    bf[static_cast<std::size_t>(i)] = b[i] * f[i];
  GridFunction bf_grid(f.domain(), std::move(bf));
  MaximalOperator m_bf(bf_grid, family, cfg.alpha);
  const GroupPoint x = f.domain().node(node);
  return b[node] * m_f.at(x).value - m_bf.at(x).value;
}

RatioSweep operator_norm_ratio(const OperatorHandle& op, const VariableExponent& p,
                               const VariableExponent& q, std::span<const RatioCase> cases,
                               const NormOptions& opt) {
  if (cases.empty()) contract_violation("operator_norm_ratio", "no fixtures");
  RatioSweep sweep;
  for (const RatioCase& c : cases) {
    if (!c.f || !c.family) contract_violation("operator_norm_ratio", "incomplete fixture");
    const double pn = luxemburg_norm(*c.f, p, opt);
    if (pn == 0.0)
      contract_violation("operator_norm_ratio", "fixture \"" + c.id + "\" has zero p-norm");
    const GridFunction g = op(*c.f, *c.family);
    const double qn = luxemburg_norm(g, q, opt);
    sweep.entries.push_back({c.id, pn, qn, qn / pn});
    sweep.max_ratio = std::max(sweep.max_ratio, qn / pn);
  }
  return sweep;
}

GridFunction maximal_as_grid(const GridFunction& f, const BallFamily& family, double alpha) {
  MaximalOperator op(f, family, alpha);
  MaximalField mf = op.field();
  return GridFunction(f.domain(), std::move(mf.value));
}

}  // namespace stratlab
