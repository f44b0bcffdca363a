#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stratlab/group.hpp"

namespace stratlab {

/// Uniform lattice over a box in exponential coordinates. Nodes are
/// cell-centered: node index (i0,…) sits at lo_k + (i_k + ½)·h_k, so the
/// indicator quadrature has first-order, sign-balanced boundary error.
///
/// `padding` reserves a margin of the box so balls around core points can
/// stay inside the lattice; test functions are supported in the core.
class LatticeDomain {
 public:
  LatticeDomain(GroupModel model, Coords lo, Coords hi, Coords spacing, double padding = 0.0);

  /// Convenience: same bounds and scalar spacing on every axis.
  LatticeDomain(GroupModel model, double lo, double hi, double spacing, double padding = 0.0);

  const GroupModel& model() const { return model_; }
  int dim() const { return model_.dim; }
  const Coords& lo() const { return lo_; }
  const Coords& hi() const { return hi_; }
  const Coords& spacing() const { return h_; }
  double padding() const { return padding_; }
  std::int64_t extent(int axis) const { return shape_[static_cast<std::size_t>(axis)]; }
  std::int64_t node_count() const { return node_count_; }

  /// Volume element h_0·h_1·…·h_{n−1}.
  double cell_volume() const { return cell_volume_; }

  GroupPoint node(std::int64_t flat) const;
  std::int64_t flat_index(const std::array<std::int64_t, kMaxDim>& idx) const;
  std::array<std::int64_t, kMaxDim> multi_index(std::int64_t flat) const;

  /// Axis coordinate of lattice line i on the given axis.
  double axis_coord(int axis, std::int64_t i) const {
    return lo_[axis] + (static_cast<double>(i) + 0.5) * h_[axis];
  }

  /// Smallest node index at or above coordinate x on the axis (clamped to [0, extent]).
  std::int64_t axis_lower(int axis, double x) const;
  /// One past the largest node index at or below x on the axis (clamped).
  std::int64_t axis_upper(int axis, double x) const;

  /// A lattice with the same box and halved spacing (refinement sweeps).
  LatticeDomain refined() const;

  /// True when p lies inside the un-padded core box.
  bool in_core(const GroupPoint& p) const;

  bool same_layout(const LatticeDomain& other) const;

 private:
  GroupModel model_;
  Coords lo_, hi_, h_;
  double padding_ = 0.0;
  std::array<std::int64_t, kMaxDim> shape_{};
  std::array<std::int64_t, kMaxDim> stride_{};
  std::int64_t node_count_ = 0;
  double cell_volume_ = 1.0;
};

/// A real-valued function sampled on a lattice.
class GridFunction {
 public:
  GridFunction(const LatticeDomain& domain, std::vector<double> values);

  const LatticeDomain& domain() const { return *domain_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

 private:
  const LatticeDomain* domain_;  // domains outlive the functions sampled on them
  std::vector<double> values_;
};

/// Open metric ball {y : ρ(center⁻¹y) < radius}.
struct Ball {
  GroupPoint center;
  double radius = 0.0;
};

/// Coordinate box certainly containing the ball (model-aware; on H¹ the
/// t-extent is r²/4 + |c_xy|·r/2 because of the group twist).
void ball_bounding_box(const GroupModel& model, const Ball& ball, Coords& box_lo, Coords& box_hi);

bool ball_contains(const GroupModel& model, const Ball& ball, const GroupPoint& p);

/// Enumerates lattice nodes inside the ball in ascending flat-index order.
void for_each_ball_node(const LatticeDomain& domain, const Ball& ball,
                        const std::function<void(std::int64_t)>& fn);

std::vector<std::int64_t> ball_node_indices(const LatticeDomain& domain, const Ball& ball);

std::int64_t ball_node_count(const LatticeDomain& domain, const Ball& ball);

/// Descriptor of how a family was generated; echoed into every report so
/// suprema are reproducible and comparable.
struct FamilyPolicy {
  std::int64_t stride = 1;
  double r_min = 0.0;
  double r_max = 0.0;
  double gamma = 1.1;
  bool interior_only = true;
  std::int64_t dropped = 0;  // balls discarded by the interior filter

  std::string describe() const;
};

/// Finite surrogate for "the supremum over all balls": centers on every
/// stride-th node of the core sub-lattice, radii on a geometric ladder,
/// sorted canonically (center lex, then radius).
struct BallFamily {
  std::vector<Ball> balls;
  FamilyPolicy policy;

  std::size_t size() const { return balls.size(); }
};

/// Radii {r_min·γ^k : r_min·γ^k ≤ r_max (within 1e−12 slack)}.
std::vector<double> radius_ladder(double r_min, double r_max, double gamma);

BallFamily build_ball_family(const LatticeDomain& domain, std::int64_t stride, double r_min,
                             double r_max, double gamma, bool interior_only = true);

/// Samples a pointwise expression; non-finite samples are input-contract
/// errors naming the node.
GridFunction sample(const LatticeDomain& domain,
                    const std::function<double(const GroupPoint&)>& expr);

/// h^n · Σ values, accumulated by pairwise summation.
double integrate(const GridFunction& f);

struct BallIntegral {
  double value = 0.0;
  std::int64_t nodes = 0;  // 0 marks a sub-resolution ball
};

/// h^n · Σ over member nodes of |f| (or f when use_abs is off). Nodes
/// outside the stored lattice contribute 0.
BallIntegral ball_integral(const GridFunction& f, const Ball& ball, bool use_abs = true);

/// Characteristic function of the ball on the lattice.
GridFunction indicator(const LatticeDomain& domain, const Ball& ball);

}  // namespace stratlab
