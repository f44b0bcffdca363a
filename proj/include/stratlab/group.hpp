#pragma once

#include <string>

#include "stratlab/common.hpp"

namespace stratlab {

enum class GroupKind { Euclidean, Heisenberg1 };

/// A point of the group in exponential coordinates.
using GroupPoint = Coords;

/// A stratified group instance. Two are shipped: the abelian ℝⁿ and the
/// first Heisenberg group H¹ in coordinates (x, y, t) with group law
/// (x,y,t)·(x',y',t') = (x+x', y+y', t+t'+(xy'−yx')/2.
///
/// Geometry is carried entirely by exponential coordinates; the Haar
/// measure is Lebesgue measure there, so quadrature needs no Jacobian.
struct GroupModel {
  std::string name;   // "euclidean:n" or "heisenberg1"
  GroupKind kind = GroupKind::Euclidean;
  int dim = 1;        // number of coordinates
  int Q = 1;          // homogeneous dimension
  double c1 = 2.0;    // |B(x,r)| = c1 * r^Q
  double c0 = 1.0;    // quasi-triangle constant (both shipped gauges are true metrics)

  /// Per-coordinate dilation weight: layer-k coordinates scale by r^k.
  int layer_weight(int axis) const {
    return (kind == GroupKind::Heisenberg1 && axis == 2) ? 2 : 1;
  }
};

/// Builds a model from its identifier ("euclidean:n" with 1 ≤ n ≤ 8, or
/// "heisenberg1"). Unknown identifiers are input-contract errors.
GroupModel make_group(const std::string& id);

GroupPoint group_identity(const GroupModel& model);

/// Group multiplication g·h.
GroupPoint compose(const GroupModel& model, const GroupPoint& g, const GroupPoint& h);

/// Group inverse; coordinate-wise negation for both shipped instances.
GroupPoint inverse(const GroupModel& model, const GroupPoint& g);

/// Dilation δ_r: layer-k coordinates scale by r^k. Requires r > 0.
GroupPoint dilate(const GroupModel& model, double r, const GroupPoint& g);

/// Homogeneous norm ρ. Euclidean norm for ℝⁿ; the Korányi gauge
/// ((x²+y²)² + 16t²)^{1/4} for H¹ (the 16 matches the (xy'−yx')/2 law,
/// which makes the gauge a true metric).
double hom_norm(const GroupModel& model, const GroupPoint& g);

/// Quasi-distance ρ(g,h) = ρ(g⁻¹h).
double quasi_distance(const GroupModel& model, const GroupPoint& g, const GroupPoint& h);

/// Haar measure of a ball: c1 · r^Q, center-independent. Requires r > 0.
double ball_measure(const GroupModel& model, double r);

/// Empirical quasi-triangle constant: max over seeded triples of
/// ρ(x,y)/(ρ(x,z)+ρ(z,y)). Every 16th triple is degenerate (z = x) so the
/// ratio 1 is attained exactly. Deterministic for a fixed seed.
double estimate_c0(const GroupModel& model, std::size_t sample_count,
                   std::uint64_t seed = 0x5eed0c0ULL);

}  // namespace stratlab
