#pragma once

#include <functional>
#include <optional>
#include <span>

#include "stratlab/exponents.hpp"
#include "stratlab/grid.hpp"
#include "stratlab/norms.hpp"

namespace stratlab {

/// Discretization convention for every operator here: the ball average
/// |B|^{α/Q−1}∫_B g dy becomes measure(B)^{α/Q} · (Σ_{nodes∈B} g)/N_B with
/// measure(B) = c₁ r^Q. Constants average to themselves exactly and the
/// χ_B identity M_α(χ_B) = |B|^{α/Q} is exact at B itself.
struct MaximalConfig {
  double alpha = 0.0;
  const BallFamily* family = nullptr;
  std::optional<Ball> restriction;  // restricted mode: only balls B ⊆ B* contribute
};

struct PointMax {
  double value = 0.0;
  std::int64_t argmax_ball = -1;  // family index; -1 when uncovered or B* appended
  bool covered = false;
};

struct MaximalField {
  std::vector<double> value;
  std::vector<std::int64_t> argmax;
  std::vector<std::uint8_t> covered;
  std::int64_t uncovered = 0;
};

/// Fractional maximal operator of one fixed function over one family.
/// Ball integrals are precomputed once and shared by every query.
class MaximalOperator {
 public:
  MaximalOperator(const GridFunction& f, const BallFamily& family, double alpha);

  double alpha() const { return alpha_; }
  const BallFamily& family() const { return *family_; }
  const LatticeDomain& domain() const { return f_->domain(); }
  std::int64_t sub_resolution_count() const { return sub_resolution_; }

  const std::vector<std::int64_t>& members(std::size_t ball) const { return members_[ball]; }
  double weight(std::size_t ball) const { return weight_[ball]; }
  /// Σ|f|/N over the ball (the discrete mean), 0 for sub-resolution balls.
  double mean_abs(std::size_t ball) const { return mean_abs_[ball]; }

  PointMax at(const GroupPoint& x) const;
  MaximalField field() const;

  /// Family balls admissible inside B*: metric prefilter
  /// d(c_B, c_B*) + r_B ≤ c0·r_B* plus nodewise member containment.
  /// B* always admits itself; when absent from the family it is appended
  /// (reported with index -1).
  struct Restricted {
    std::vector<std::size_t> family_balls;
    std::optional<Ball> appended_bstar;
    double appended_weight = 0.0;
    std::vector<std::int64_t> appended_members;
  };
  Restricted restrict_to(const Ball& bstar) const;

  PointMax at_restricted(const GroupPoint& x, const Ball& bstar) const;

  /// M_{α,B*}(f) at every member node of B*, written into scratch (sized
  /// node_count, holding -1 outside). touched lists the written indices so
  /// the caller can reset scratch between balls.
  void restricted_field(const Restricted& r, std::vector<double>& scratch,
                        std::vector<std::int64_t>& touched) const;

 private:
  const GridFunction* f_;
  const BallFamily* family_;
  double alpha_;
  std::vector<std::vector<std::int64_t>> members_;
  std::vector<double> mean_abs_;
  std::vector<double> weight_;
  std::int64_t sub_resolution_ = 0;
};

PointMax maximal(const GridFunction& f, const MaximalConfig& cfg, const GroupPoint& x);
MaximalField maximal_field(const GridFunction& f, const MaximalConfig& cfg);

PointMax maximal_restricted(const GridFunction& b, double alpha, const Ball& bstar,
                            const BallFamily& family, const GroupPoint& x);

/// Maximal commutator M_{α,b}: sup over balls B ∋ x of
/// measure^{α/Q}·mean_B(|b(x)−b(y)|·|f(y)|). Per-ball sorted prefix tables
/// make each (node, ball) query O(log N_B).
class CommutatorOperator {
 public:
  CommutatorOperator(const GridFunction& b, const GridFunction& f, const BallFamily& family,
                     double alpha);

  PointMax at_node(std::int64_t node) const;
  MaximalField field() const;

 private:
  double query(std::size_t ball, double bx) const;

  const GridFunction* b_;
  const LatticeDomain* domain_;
  double alpha_;
  std::size_t ball_count_ = 0;
  std::vector<double> pow_measure_;            // measure^{α/Q} per ball
  std::vector<std::int64_t> counts_;           // N per ball
  std::vector<std::size_t> table_offset_;      // into the sorted arrays
  std::vector<double> sorted_b_;               // b values ascending per ball
  std::vector<double> prefix_w_;               // prefix sums of |f|
  std::vector<double> prefix_bw_;              // prefix sums of b·|f|
  std::vector<std::size_t> csr_offset_;        // node -> covering balls
  std::vector<std::int32_t> csr_ball_;
};

PointMax maximal_commutator(const GridFunction& b, const GridFunction& f,
                            const MaximalConfig& cfg, std::int64_t node);
MaximalField maximal_commutator_field(const GridFunction& b, const GridFunction& f,
                                      const MaximalConfig& cfg);

/// Nonlinear commutator [b,M_α]f = b·M_α(f) − M_α(bf), both terms over the
/// same family. Signed; nodes uncovered by the family are flagged.
struct SignedField {
  std::vector<double> value;
  std::vector<std::uint8_t> covered;
  std::int64_t uncovered = 0;
};
SignedField nonlinear_commutator_field(const GridFunction& b, const GridFunction& f,
                                       const MaximalConfig& cfg);
double nonlinear_commutator(const GridFunction& b, const GridFunction& f,
                            const MaximalConfig& cfg, std::int64_t node);

/// One fixture for an operator-norm probe; each case carries its own
/// lattice and family (matched-grid dilation needs that).
struct RatioCase {
  std::string id;
  const GridFunction* f = nullptr;
  const BallFamily* family = nullptr;
};

struct RatioEntry {
  std::string fixture_id;
  double p_norm = 0.0;
  double q_norm = 0.0;
  double ratio = 0.0;
};

struct RatioSweep {
  std::vector<RatioEntry> entries;
  double max_ratio = 0.0;
};

using OperatorHandle = std::function<GridFunction(const GridFunction&, const BallFamily&)>;

/// max over fixtures of ‖op f‖_{q(·)} / ‖f‖_{p(·)}; fixture order is the
/// case order, fixed by the caller.
RatioSweep operator_norm_ratio(const OperatorHandle& op, const VariableExponent& p,
                               const VariableExponent& q, std::span<const RatioCase> cases,
                               const NormOptions& opt = {});

/// The maximal operator as a GridFunction producer (uncovered nodes → 0).
GridFunction maximal_as_grid(const GridFunction& f, const BallFamily& family, double alpha);

}  // namespace stratlab
