#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stratlab/maximal.hpp"

namespace stratlab {

/// A symbol b with its analytic ground truth, so acceptance scenarios can
/// select positive/negative cases without re-deriving membership.
struct SymbolFixture {
  std::string id;
  std::string analytic_tag;  // lipschitz-gauge | constant | affine | signed | log-spike | jump
  std::optional<double> declared_beta;
  std::function<double(const GroupPoint&)> eval;
};

struct PerBallValue {
  std::int64_t ball_id = -1;
  double value = 0.0;
};

/// Per-ball values and the running supremum of one characterization
/// functional. The supremum is a lower bound of the paper's sup over all
/// balls and grows with family richness; the descriptor is always carried.
struct CharacterizationReport {
  std::string quantity;
  std::vector<PerBallValue> per_ball;  // canonical ball order
  double supremum = 0.0;
  std::int64_t argmax_ball = -1;
  std::string family_descriptor;
  std::int64_t skipped_sub_resolution = 0;
  std::optional<double> refinement_trend;  // sup(h/2)/sup(h), filled by sweep drivers
};

/// Sampled Hölder quotient sup |b(x)−b(y)|/ρ(y⁻¹x)^β: all node pairs when
/// the lattice has ≤ 4096 nodes, otherwise a seeded sample biased toward
/// near-diagonal pairs. A lower bound of the true seminorm.
double lambda_seminorm(const GridFunction& b, double beta, std::size_t sample_pairs = 1000000,
                       std::uint64_t seed = 0x11b5eedULL);

/// sup_B |B|^{−β/Q} (|B|^{−1}∫_B |b−b_B|^p)^{1/p}; p = 1 is ‖b‖_{lip_β}.
CharacterizationReport lip_seminorm(const GridFunction& b, double beta, double p,
                                    const BallFamily& family);

/// b = b⁺ − b⁻ with b⁻ = max(−b, 0), b⁺ = |b| − b⁻; both nonnegative.
std::pair<GridFunction, GridFunction> split_pos_neg(const GridFunction& b);

/// sup_B |B|^{−β/Q} ‖(b − b_B)χ_B‖_{s(·)} / ‖χ_B‖_{s(·)}.
CharacterizationReport mean_oscillation_char(const GridFunction& b, double beta,
                                             const VariableExponent& s, const BallFamily& family,
                                             const NormOptions& opt = {});

/// sup_B |B|^{−β/Q} ‖(b − |B|^{−α/Q} M_{α,B}(b)) χ_B‖_{s(·)} / ‖χ_B‖_{s(·)},
/// M_{α,B}(b) evaluated at every node of B over the same family.
CharacterizationReport maximal_oscillation_char(const GridFunction& b, double alpha, double beta,
                                                const VariableExponent& s,
                                                const BallFamily& family,
                                                const NormOptions& opt = {});

/// sup_B |B|^{−β/Q} (|B|^{−1}∫_B |b − M_B(b)|^s)^{1/s} with constant s ≥ 1.
CharacterizationReport nonneg_char(const GridFunction& b, double beta, double s,
                                   const BallFamily& family);

/// |∫_E |b−b_B| − ∫_F |b−b_B|| with E = {b ≤ b_B}, F = B∖E. Vanishes to
/// rounding because b_B is the discrete mean.
double ef_oscillation_residual(const GridFunction& b, const Ball& ball);

}  // namespace stratlab
