#include "stratlab/group.hpp"

#include <cmath>
#include <numbers>

#include "stratlab/rng.hpp"

namespace stratlab {

namespace {

void check_dim(const GroupModel& model, const GroupPoint& g, const char* where) {
  if (g.size() != model.dim)
    contract_violation(where, "dimension mismatch (expected " + std::to_string(model.dim) +
                                  ", got " + std::to_string(g.size()) + ")");
}

double euclidean_unit_ball_volume(int n) {
  // π^{n/2} / Γ(n/2 + 1)
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

}  // namespace

GroupModel make_group(const std::string& id) {
  GroupModel m;
  if (id == "heisenberg1") {
    m.name = id;
    m.kind = GroupKind::Heisenberg1;
    m.dim = 3;
    m.Q = 4;
    // Volume of the Korányi unit ball: ∫₀¹ πs√(1−s⁴) ds = π²/8.
    m.c1 = std::numbers::pi * std::numbers::pi / 8.0;
    m.c0 = 1.0;
    return m;
  }
  if (id.rfind("euclidean:", 0) == 0) {
    const std::string tail = id.substr(10);
    int n = 0;
    try {
      std::size_t pos = 0;
      n = std::stoi(tail, &pos);
      if (pos != tail.size()) n = 0;
    } catch (...) {
      n = 0;
    }
    if (n < 1 || n > kMaxDim)
      contract_violation("make_group",
                         "euclidean:n requires 1 <= n <= " + std::to_string(kMaxDim) +
                             ", got \"" + tail + "\"");
    m.name = id;
    m.kind = GroupKind::Euclidean;
    m.dim = n;
    m.Q = n;
    m.c1 = euclidean_unit_ball_volume(n);
    m.c0 = 1.0;
    return m;
  }
  contract_violation("make_group", "unknown group identifier \"" + id +
                                       "\" (expected euclidean:n or heisenberg1)");
}

GroupPoint group_identity(const GroupModel& model) { return Coords::zeros(model.dim); }

GroupPoint compose(const GroupModel& model, const GroupPoint& g, const GroupPoint& h) {
  check_dim(model, g, "compose");
  check_dim(model, h, "compose");
  GroupPoint out = Coords::zeros(model.dim);
  for (int i = 0; i < model.dim; ++i) out[i] = g[i] + h[i];
  if (model.kind == GroupKind::Heisenberg1)
    out[2] += 0.5 * (g[0] * h[1] - g[1] * h[0]);
  return out;
}

GroupPoint inverse(const GroupModel& model, const GroupPoint& g) {
  check_dim(model, g, "inverse");
  GroupPoint out = Coords::zeros(model.dim);
  for (int i = 0; i < model.dim; ++i) out[i] = -g[i];
  return out;
}

GroupPoint dilate(const GroupModel& model, double r, const GroupPoint& g) {
  check_dim(model, g, "dilate");
  if (!(r > 0.0)) contract_violation("dilate", "scale must be positive, got " + std::to_string(r));
  GroupPoint out = Coords::zeros(model.dim);
  for (int i = 0; i < model.dim; ++i) {
    double s = r;
    if (model.layer_weight(i) == 2) s = r * r;
    out[i] = s * g[i];
  }
  return out;
}

double hom_norm(const GroupModel& model, const GroupPoint& g) {
  check_dim(model, g, "hom_norm");
  if (model.kind == GroupKind::Heisenberg1) {
    const double z2 = g[0] * g[0] + g[1] * g[1];
    return std::pow(z2 * z2 + 16.0 * g[2] * g[2], 0.25);
  }
  double s = 0.0;
  for (int i = 0; i < model.dim; ++i) s += g[i] * g[i];
  return std::sqrt(s);
}

double quasi_distance(const GroupModel& model, const GroupPoint& g, const GroupPoint& h) {
  return hom_norm(model, compose(model, inverse(model, g), h));
}

double ball_measure(const GroupModel& model, double r) {
  if (!(r > 0.0))
    contract_violation("ball_measure", "radius must be positive, got " + std::to_string(r));
  return model.c1 * std::pow(r, static_cast<double>(model.Q));
}

double estimate_c0(const GroupModel& model, std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 1000)
    contract_violation("estimate_c0", "sample_count must be >= 1000");
  Rng rng(seed);
  auto random_point = [&] {
    GroupPoint p = Coords::zeros(model.dim);
    for (int i = 0; i < model.dim; ++i) p[i] = rng.uniform(-2.0, 2.0);
    return p;
  };
  double worst = 0.0;
  for (std::size_t k = 0; k < sample_count; ++k) {
    GroupPoint x = random_point();
    GroupPoint y = random_point();
    GroupPoint z = (k % 16 == 0) ? x : random_point();  // degenerate triple: ratio exactly 1
    const double denom = quasi_distance(model, x, z) + quasi_distance(model, z, y);
    if (!(denom > 0.0)) continue;
    const double ratio = quasi_distance(model, x, y) / denom;
    if (ratio > worst) worst = ratio;
  }
  return worst;
}

}  // namespace stratlab
