#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stratlab/grid.hpp"

namespace stratlab {

enum class ExponentKind { Constant, Analytic, Tabulated };

/// A variable exponent p(·): 𝔾 → [1, ∞). Presets keep the log-Hölder
/// constants analytically controllable; see exponent_preset() in fixtures.
class VariableExponent {
 public:
  VariableExponent(std::string description, ExponentKind kind,
                   std::function<double(const GroupPoint&)> eval,
                   std::optional<double> p_inf = std::nullopt);

  double operator()(const GroupPoint& x) const { return eval_(x); }
  const std::string& description() const { return description_; }
  ExponentKind kind() const { return kind_; }
  std::optional<double> p_inf() const { return p_inf_; }

  /// Essential inf/sup over the lattice (one pass; also validates ≥ 1).
  struct Bounds {
    double p_minus = 1.0;
    double p_plus = 1.0;
  };
  Bounds bounds(const LatticeDomain& domain) const;

  /// p sampled on every node.
  std::vector<double> field(const LatticeDomain& domain) const;

 private:
  std::string description_;
  ExponentKind kind_;
  std::function<double(const GroupPoint&)> eval_;
  std::optional<double> p_inf_;
};

VariableExponent constant_exponent(double p);

/// p'(x) = p(x)/(p(x)−1). Rejected when p₋(domain) = 1 would make it
/// unbounded; the check runs lazily at the first bounds()/field() call if
/// no domain is supplied here.
VariableExponent conjugate(const VariableExponent& p);

/// s·p(x) for the power identity (Lemma-style rescaling).
VariableExponent scaled_exponent(const VariableExponent& p, double s);

struct ExponentPair {
  VariableExponent p;
  VariableExponent q;
  double gamma = 0.0;
};

/// Sobolev pairing 1/q = 1/p − γ/Q. Requires 0 < γ < Q and p₊ < Q/γ on
/// the given domain; the error message names the violated margin.
ExponentPair sobolev_pair(const VariableExponent& p, double gamma, const LatticeDomain& domain);

struct LogHolderConstants {
  double c_local = 0.0;                 // max |p(x)−p(y)|·log(e + 1/ρ(x,y))
  std::optional<double> c_decay;        // max |p(x)−p_inf|·log(e + ρ(θ,x)); needs declared p_inf
  std::size_t pairs_sampled = 0;
};

/// Deterministic for a fixed seed; all node pairs when the lattice is
/// small, otherwise a seeded sample.
LogHolderConstants log_holder_constants(const VariableExponent& p, const LatticeDomain& domain,
                                        std::size_t max_pairs = 200000,
                                        std::uint64_t seed = 0x10f601deULL);

struct ClassBVerdict {
  bool sufficient_condition_met = false;
  std::string verdict;  // "sufficient-condition-met" | "inconclusive"
  double p_minus = 0.0;
  // Constants at h, h/2, h/4 (c_decay entries only when p_inf is declared).
  std::vector<double> c_local_sweep;
  std::vector<double> c_decay_sweep;
  std::string notes;
};

/// Probes the sufficient condition for p(·) ∈ 𝓑(𝔾): p₋ > 1 and log-Hölder
/// constants stable under refinement. Never claims non-membership.
ClassBVerdict in_class_B_heuristic(const VariableExponent& p, const LatticeDomain& domain);

}  // namespace stratlab
