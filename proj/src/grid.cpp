#include "stratlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stratlab/summation.hpp"

namespace stratlab {

LatticeDomain::LatticeDomain(GroupModel model, Coords lo, Coords hi, Coords spacing,
                             double padding)
    : model_(std::move(model)), lo_(lo), hi_(hi), h_(spacing), padding_(padding) {
  const int n = model_.dim;
  if (lo.size() != n || hi.size() != n || spacing.size() != n)
    contract_violation("LatticeDomain", "bounds/spacing dimension does not match the group");
  if (padding_ < 0.0) contract_violation("LatticeDomain", "padding must be >= 0");
  node_count_ = 1;
  for (int k = 0; k < n; ++k) {
    if (!(hi_[k] > lo_[k]))
      contract_violation("LatticeDomain", "hi must exceed lo on axis " + std::to_string(k));
    if (!(h_[k] > 0.0))
      contract_violation("LatticeDomain", "spacing must be positive on axis " + std::to_string(k));
    const double cells = (hi_[k] - lo_[k]) / h_[k];
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, rounded))
      contract_violation("LatticeDomain", "(hi-lo)/h is not integral on axis " + std::to_string(k));
    const auto m = static_cast<std::int64_t>(rounded);
    if (m < 2)
      contract_violation("LatticeDomain", "need at least 2 nodes per axis, got " +
                                              std::to_string(m) + " on axis " + std::to_string(k));
    shape_[static_cast<std::size_t>(k)] = m;
    node_count_ *= m;
    cell_volume_ *= h_[k];
  }
  // Row-major strides, last axis fastest.
  std::int64_t s = 1;
  for (int k = n - 1; k >= 0; --k) {
    stride_[static_cast<std::size_t>(k)] = s;
    s *= shape_[static_cast<std::size_t>(k)];
  }
}

namespace {
Coords splat(double v, int n) {
  Coords c = Coords::zeros(n);
  for (int k = 0; k < n; ++k) c[k] = v;
  return c;
}
}  // namespace

LatticeDomain::LatticeDomain(GroupModel model, double lo, double hi, double spacing,
                             double padding)
    : LatticeDomain(model, splat(lo, model.dim), splat(hi, model.dim), splat(spacing, model.dim),
                    padding) {}

GroupPoint LatticeDomain::node(std::int64_t flat) const {
  const auto idx = multi_index(flat);
  GroupPoint p = Coords::zeros(model_.dim);
  for (int k = 0; k < model_.dim; ++k) p[k] = axis_coord(k, idx[static_cast<std::size_t>(k)]);
  return p;
}

std::int64_t LatticeDomain::flat_index(const std::array<std::int64_t, kMaxDim>& idx) const {
  std::int64_t flat = 0;
  for (int k = 0; k < model_.dim; ++k)
    flat += idx[static_cast<std::size_t>(k)] * stride_[static_cast<std::size_t>(k)];
  return flat;
}

std::array<std::int64_t, kMaxDim> LatticeDomain::multi_index(std::int64_t flat) const {
  std::array<std::int64_t, kMaxDim> idx{};
  for (int k = 0; k < model_.dim; ++k) {
    idx[static_cast<std::size_t>(k)] = flat / stride_[static_cast<std::size_t>(k)];
    flat %= stride_[static_cast<std::size_t>(k)];
  }
  return idx;
}

std::int64_t LatticeDomain::axis_lower(int axis, double x) const {
  // smallest i with axis_coord(i) >= x  <=>  i >= (x - lo)/h - 1/2
  const double t = (x - lo_[axis]) / h_[axis] - 0.5;
  auto i = static_cast<std::int64_t>(std::ceil(t - 1e-12));
  return std::clamp<std::int64_t>(i, 0, extent(axis));
}

std::int64_t LatticeDomain::axis_upper(int axis, double x) const {
  const double t = (x - lo_[axis]) / h_[axis] - 0.5;
  auto i = static_cast<std::int64_t>(std::floor(t + 1e-12)) + 1;
  return std::clamp<std::int64_t>(i, 0, extent(axis));
}

LatticeDomain LatticeDomain::refined() const {
  Coords h2 = h_;
  for (int k = 0; k < model_.dim; ++k) h2[k] = 0.5 * h_[k];
  return LatticeDomain(model_, lo_, hi_, h2, padding_);
}

bool LatticeDomain::in_core(const GroupPoint& p) const {
  for (int k = 0; k < model_.dim; ++k)
    if (p[k] < lo_[k] + padding_ || p[k] > hi_[k] - padding_) return false;
  return true;
}

bool LatticeDomain::same_layout(const LatticeDomain& other) const {
  return model_.name == other.model_.name && lo_ == other.lo_ && hi_ == other.hi_ &&
         h_ == other.h_;
}

GridFunction::GridFunction(const LatticeDomain& domain, std::vector<double> values)
    : domain_(&domain), values_(std::move(values)) {
  if (static_cast<std::int64_t>(values_.size()) != domain.node_count())
    contract_violation("GridFunction", "value count does not match node count");
  for (double v : values_)
    if (!std::isfinite(v)) contract_violation("GridFunction", "non-finite value");
}

void ball_bounding_box(const GroupModel& model, const Ball& ball, Coords& box_lo, Coords& box_hi) {
  const int n = model.dim;
  box_lo = Coords::zeros(n);
  box_hi = Coords::zeros(n);
  const double r = ball.radius;
  for (int k = 0; k < n; ++k) {
    box_lo[k] = ball.center[k] - r;
    box_hi[k] = ball.center[k] + r;
  }
  if (model.kind == GroupKind::Heisenberg1) {
    const double cxy = std::hypot(ball.center[0], ball.center[1]);
    const double text = 0.25 * r * r + 0.5 * cxy * r;
    box_lo[2] = ball.center[2] - text;
    box_hi[2] = ball.center[2] + text;
  }
}

bool ball_contains(const GroupModel& model, const Ball& ball, const GroupPoint& p) {
  return quasi_distance(model, ball.center, p) < ball.radius;
}

void for_each_ball_node(const LatticeDomain& domain, const Ball& ball,
                        const std::function<void(std::int64_t)>& fn) {
  const GroupModel& model = domain.model();
  if (ball.center.size() != model.dim)
    contract_violation("for_each_ball_node", "ball center dimension mismatch");
  if (!(ball.radius > 0.0)) contract_violation("for_each_ball_node", "radius must be positive");
  Coords blo, bhi;
  ball_bounding_box(model, ball, blo, bhi);
  const int n = model.dim;
  std::array<std::int64_t, kMaxDim> first{}, last{}, idx{};
  for (int k = 0; k < n; ++k) {
    first[static_cast<std::size_t>(k)] = domain.axis_lower(k, blo[k]);
    last[static_cast<std::size_t>(k)] = domain.axis_upper(k, bhi[k]);
    if (first[static_cast<std::size_t>(k)] >= last[static_cast<std::size_t>(k)]) return;
  }
  idx = first;
  GroupPoint p = Coords::zeros(n);
  while (true) {
    for (int k = 0; k < n; ++k) p[k] = domain.axis_coord(k, idx[static_cast<std::size_t>(k)]);
    if (ball_contains(model, ball, p)) fn(domain.flat_index(idx));
    int k = n - 1;
    while (k >= 0) {
      if (++idx[static_cast<std::size_t>(k)] < last[static_cast<std::size_t>(k)]) break;
      idx[static_cast<std::size_t>(k)] = first[static_cast<std::size_t>(k)];
      --k;
    }
    if (k < 0) break;
  }
}

std::vector<std::int64_t> ball_node_indices(const LatticeDomain& domain, const Ball& ball) {
  std::vector<std::int64_t> out;
  for_each_ball_node(domain, ball, [&out](std::int64_t i) { out.push_back(i); });
  return out;
}

std::int64_t ball_node_count(const LatticeDomain& domain, const Ball& ball) {
  std::int64_t c = 0;
  for_each_ball_node(domain, ball, [&c](std::int64_t) { ++c; });
  return c;
}

std::string FamilyPolicy::describe() const {
  std::ostringstream os;
  os << "stride=" << stride << " r_min=" << r_min << " r_max=" << r_max << " gamma=" << gamma
     << " interior_only=" << (interior_only ? 1 : 0) << " dropped=" << dropped;
  return os.str();
}

std::vector<double> radius_ladder(double r_min, double r_max, double gamma) {
  if (!(r_min > 0.0) || !(r_max >= r_min))
    contract_violation("radius_ladder", "need 0 < r_min <= r_max");
  if (gamma < 1.01 || gamma > 1.2)
    contract_violation("radius_ladder", "gamma must lie in [1.01, 1.2] (got " +
                                            std::to_string(gamma) + ")");
  std::vector<double> out;
  double r = r_min;
  while (r <= r_max * (1.0 + 1e-12)) {
    out.push_back(std::min(r, r_max));
    r *= gamma;
  }
  return out;
}

BallFamily build_ball_family(const LatticeDomain& domain, std::int64_t stride, double r_min,
                             double r_max, double gamma, bool interior_only) {
  if (stride < 1) contract_violation("build_ball_family", "stride must be >= 1");
  double hmax = 0.0;
  for (int k = 0; k < domain.dim(); ++k) hmax = std::max(hmax, domain.spacing()[k]);
  if (r_min < 3.0 * hmax - 1e-12)
    contract_violation("build_ball_family",
                       "r_min must be >= 3h (sub-resolution balls excluded); r_min=" +
                           std::to_string(r_min) + ", h=" + std::to_string(hmax));
  double diam = 0.0;
  for (int k = 0; k < domain.dim(); ++k) diam += std::pow(domain.hi()[k] - domain.lo()[k], 2);
  diam = std::sqrt(diam);
  if (r_max > diam)
    contract_violation("build_ball_family", "r_max exceeds the domain diameter");

  const std::vector<double> radii = radius_ladder(r_min, r_max, gamma);
  BallFamily family;
  family.policy = {stride, r_min, r_max, gamma, interior_only, 0};

  const int n = domain.dim();
  std::array<std::int64_t, kMaxDim> idx{};
  std::vector<Ball> balls;
  // Centers on every stride-th node of the core sub-lattice.
  std::function<void(int)> emit = [&](int axis) {
    if (axis == n) {
      GroupPoint c = Coords::zeros(n);
      for (int k = 0; k < n; ++k) c[k] = domain.axis_coord(k, idx[static_cast<std::size_t>(k)]);
      if (!domain.in_core(c)) return;
      for (double r : radii) {
        Ball b{c, r};
        if (interior_only) {
          Coords blo, bhi;
          ball_bounding_box(domain.model(), b, blo, bhi);
          bool inside = true;
          for (int k = 0; k < n; ++k)
            if (blo[k] < domain.lo()[k] - 1e-12 || bhi[k] > domain.hi()[k] + 1e-12) {
              inside = false;
              break;
            }
          if (!inside) {
            ++family.policy.dropped;
            continue;
          }
        }
        balls.push_back(b);
      }
      return;
    }
    for (std::int64_t i = 0; i < domain.extent(axis); i += stride) {
      idx[static_cast<std::size_t>(axis)] = i;
      emit(axis + 1);
    }
  };
  emit(0);

  std::sort(balls.begin(), balls.end(), [](const Ball& a, const Ball& b) {
    if (a.center == b.center) return a.radius < b.radius;
    return lex_less(a.center, b.center);
  });
  family.balls = std::move(balls);
  if (family.balls.empty()) contract_violation("build_ball_family", "empty family");
  return family;
}

GridFunction sample(const LatticeDomain& domain,
                    const std::function<double(const GroupPoint&)>& expr) {
  std::vector<double> values(static_cast<std::size_t>(domain.node_count()));
  for (std::int64_t i = 0; i < domain.node_count(); ++i) {
    const GroupPoint p = domain.node(i);
    const double v = expr(p);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "non-finite sample at node " << i << " = (";
      for (int k = 0; k < domain.dim(); ++k) os << (k ? "," : "") << p[k];
      os << ")";
      contract_violation("sample", os.str());
    }
    values[static_cast<std::size_t>(i)] = v;
  }
  return GridFunction(domain, std::move(values));
}

double integrate(const GridFunction& f) {
  return f.domain().cell_volume() * pairwise_sum(f.values());
}

BallIntegral ball_integral(const GridFunction& f, const Ball& ball, bool use_abs) {
  std::vector<double> terms;
  for_each_ball_node(f.domain(), ball, [&](std::int64_t i) {
    const double v = f[i];
    terms.push_back(use_abs ? std::abs(v) : v);
  });
  BallIntegral out;
  out.nodes = static_cast<std::int64_t>(terms.size());
  out.value = f.domain().cell_volume() * pairwise_sum(terms);
  return out;
}

GridFunction indicator(const LatticeDomain& domain, const Ball& ball) {
  std::vector<double> values(static_cast<std::size_t>(domain.node_count()), 0.0);
  for_each_ball_node(domain, ball,
                     [&values](std::int64_t i) { values[static_cast<std::size_t>(i)] = 1.0; });
  return GridFunction(domain, std::move(values));
}

}  // namespace stratlab
