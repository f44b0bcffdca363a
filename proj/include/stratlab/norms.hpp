#pragma once

#include <optional>
#include <span>

#include "stratlab/exponents.hpp"
#include "stratlab/grid.hpp"

namespace stratlab {

struct NormOptions {
  double bisect_rel_tol = 1e-10;  // relative width of the final η bracket
  int max_bracket_steps = 200;    // doublings/halvings before giving up
};

/// Modular ∫ (|f|/η)^{p(x)} dx by lattice quadrature.
double modular(const GridFunction& f, const VariableExponent& p, double eta);

/// Luxemburg norm inf{η > 0 : modular ≤ 1} by bracket expansion around
/// η₀ = max|f|·|support|^{1/p₋} and bisection. Returns 0 for f ≡ 0.
double luxemburg_norm(const GridFunction& f, const VariableExponent& p,
                      const NormOptions& opt = {});

/// Core bisection on an explicit support list (amplitude, exponent) with
/// the given volume element. Zero amplitudes are ignored. This is what the
/// per-ball characterization loops call; luxemburg_norm wraps it.
double luxemburg_norm_support(double cell_volume, std::span<const double> amplitudes,
                              std::span<const double> exponents, const NormOptions& opt = {});

/// Weak L^p norm for constant p: sup over the distinct sampled values v of
/// v · |{|f| ≥ v}|^{1/p}. Exact for lattice functions.
double weak_norm(const GridFunction& f, double p);

/// ∫|fg| / (‖f‖_{p(·)} ‖g‖_{p'(·)}). Empty when the denominator vanishes.
std::optional<double> holder_ratio(const GridFunction& f, const GridFunction& g,
                                   const VariableExponent& p, const NormOptions& opt = {});

/// | ‖|f|^s‖_{p(·)} − ‖f‖_{s·p(·)}^s |; requires s > 0 and s·p₋ ≥ 1.
double power_identity_residual(const GridFunction& f, const VariableExponent& p, double s,
                               const NormOptions& opt = {});

struct DualityProduct {
  double value = 0.0;
  bool sub_resolution = false;
};

/// (1/|B|) ‖χ_B‖_{p(·)} ‖χ_B‖_{p'(·)} with |B| = c₁ r^Q.
DualityProduct char_duality_product(const LatticeDomain& domain, const Ball& ball,
                                    const VariableExponent& p, const NormOptions& opt = {});

}  // namespace stratlab
