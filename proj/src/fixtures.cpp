#include "stratlab/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace stratlab {

namespace {

GroupPoint shift_point(const GroupModel& model) {
  GroupPoint p = Coords::zeros(model.dim);
  const double base[3] = {0.4, -0.3, 0.2};
  for (int k = 0; k < model.dim && k < 3; ++k) p[k] = base[k];
  return p;
}

double gauge_from(const GroupModel& model, const GroupPoint& center, const GroupPoint& x) {
  return quasi_distance(model, center, x);
}

}  // namespace

const std::vector<FixtureInfo>& fixture_catalog() {
  static const std::vector<FixtureInfo> catalog = {
      {"constant", "symbol", "constant", false, "b = 1.5"},
      {"affine", "symbol", "affine", false, "b(x) = x_1 (sign-changing, Lipschitz on bounded sets)"},
      {"gauge-beta", "symbol", "lipschitz-gauge", true, "b = rho(x)^beta, nonnegative Lipschitz"},
      {"shifted-gauge-beta", "symbol", "lipschitz-gauge", true,
       "b = rho(x0^-1 x)^beta with a fixed off-origin x0"},
      {"neg-gauge-beta", "symbol", "signed", true, "b = -rho(x)^beta (Lipschitz, negative)"},
      {"log-spike", "symbol", "log-spike", false, "b = max(0, -log rho): integrable, not Lipschitz"},
      {"jump", "symbol", "jump", false, "b = 1 on {x_1 > 0}, else 0: bounded, not Lipschitz"},
      {"chi-unit-ball", "input", "indicator", false, "f = chi_{B(0,1)}"},
      {"bump", "input", "smooth", false, "f = (1 - rho^2)_+^2"},
      {"two-bumps", "input", "smooth", false, "bump plus a half-height shifted bump"},
  };
  return catalog;
}

SymbolFixture make_symbol(const std::string& id, const GroupModel& model, double beta) {
  const GroupPoint theta = group_identity(model);
  SymbolFixture s;
  s.id = id;
  if (id == "constant") {
    s.analytic_tag = "constant";
    s.eval = [](const GroupPoint&) { return 1.5; };
    return s;
  }
  if (id == "affine") {
    s.analytic_tag = "affine";
    s.eval = [](const GroupPoint& x) { return x[0]; };
    return s;
  }
  if (id == "gauge-beta" || id == "shifted-gauge-beta" || id == "neg-gauge-beta") {
    if (!(beta > 0.0) || !(beta < 1.0))
      contract_violation("make_symbol", id + " requires beta in (0,1)");
    s.declared_beta = beta;
    const GroupPoint center = id == "shifted-gauge-beta" ? shift_point(model) : theta;
    const double sign = id == "neg-gauge-beta" ? -1.0 : 1.0;
    s.analytic_tag = id == "neg-gauge-beta" ? "signed" : "lipschitz-gauge";
    GroupModel m = model;
    s.eval = [m, center, beta, sign](const GroupPoint& x) {
      return sign * std::pow(gauge_from(m, center, x), beta);
    };
    return s;
  }
  if (id == "log-spike") {
    s.analytic_tag = "log-spike";
    GroupModel m = model;
    GroupPoint c = theta;
    s.eval = [m, c](const GroupPoint& x) {
      const double rho = gauge_from(m, c, x);
      return rho >= 1.0 ? 0.0 : -std::log(rho);
    };
    return s;
  }
  if (id == "jump") {
    s.analytic_tag = "jump";
    s.eval = [](const GroupPoint& x) { return x[0] > 0.0 ? 1.0 : 0.0; };
    return s;
  }
  contract_violation("make_symbol", "unknown symbol fixture \"" + id + "\"");
}

std::function<double(const GroupPoint&)> make_input(const std::string& id,
                                                    const GroupModel& model) {
  const GroupPoint theta = group_identity(model);
  GroupModel m = model;
  if (id == "chi-unit-ball")
    return [m, theta](const GroupPoint& x) {
      return gauge_from(m, theta, x) < 1.0 ? 1.0 : 0.0;
    };
  if (id == "bump")
    return [m, theta](const GroupPoint& x) {
      const double r = gauge_from(m, theta, x);
      const double t = std::max(0.0, 1.0 - r * r);
      return t * t;
    };
  if (id == "two-bumps") {
    const GroupPoint c2 = shift_point(model);
    return [m, theta, c2](const GroupPoint& x) {
      const double r1 = gauge_from(m, theta, x);
      const double r2 = gauge_from(m, c2, x);
      const double t1 = std::max(0.0, 1.0 - r1 * r1);
      const double t2 = std::max(0.0, 1.0 - r2 * r2);
      return t1 * t1 + 0.5 * t2 * t2;
    };
  }
  contract_violation("make_input", "unknown input fixture \"" + id + "\"");
}

VariableExponent exponent_preset(const std::string& spec, const GroupModel& model) {
  const auto colon = spec.find(':');
  const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::istringstream in(spec.substr(colon + 1));
    std::string item;
    while (std::getline(in, item, ','))
      if (!item.empty()) args.push_back(std::stod(item));
  }
  const GroupPoint theta = group_identity(model);
  GroupModel m = model;

  if (kind == "constant") {
    if (args.size() != 1) contract_violation("exponent_preset", "constant:<p>");
    return constant_exponent(args[0]);
  }
  if (kind == "radial-log") {
    if (args.size() != 2) contract_violation("exponent_preset", "radial-log:<base>,<amp>");
    const double base = args[0], amp = args[1];
    if (!(base >= 1.0) || !(base + std::min(0.0, amp) >= 1.0))
      contract_violation("exponent_preset", "radial-log exponent dips below 1");
    return VariableExponent(
        "radial-log:" + std::to_string(base) + "," + std::to_string(amp), ExponentKind::Analytic,
        [m, theta, base, amp](const GroupPoint& x) {
          return base + amp / std::log(std::numbers::e + gauge_from(m, theta, x));
        },
        base);
  }
  if (kind == "bump") {
    if (args.size() != 2) contract_violation("exponent_preset", "bump:<base>,<amp>");
    const double base = args[0], amp = args[1];
    if (!(base >= 1.0) || !(base + std::min(0.0, amp) >= 1.0))
      contract_violation("exponent_preset", "bump exponent dips below 1");
    return VariableExponent(
        "bump:" + std::to_string(base) + "," + std::to_string(amp), ExponentKind::Analytic,
        [m, theta, base, amp](const GroupPoint& x) {
          const double r = gauge_from(m, theta, x);
          return base + amp * std::exp(-r * r);
        },
        base);
  }
  if (kind == "jump") {
    if (args.size() != 2) contract_violation("exponent_preset", "jump:<lo>,<hi>");
    const double lo = args[0], hi = args[1];
    if (!(lo >= 1.0) || !(hi >= 1.0)) contract_violation("exponent_preset", "jump values below 1");
    return VariableExponent("jump:" + std::to_string(lo) + "," + std::to_string(hi),
                            ExponentKind::Analytic,
                            [lo, hi](const GroupPoint& x) { return x[0] > 0.0 ? hi : lo; });
  }
  contract_violation("exponent_preset", "unknown exponent preset \"" + spec + "\"");
}

std::function<double(const GroupPoint&)> random_smooth_input(const GroupModel& model, Rng& rng) {
  struct Blob {
    GroupPoint center;
    double amp;
    double decay;
  };
  std::vector<Blob> blobs;
  const int count = 2 + static_cast<int>(rng.next_below(2));
  for (int k = 0; k < count; ++k) {
    Blob blob;
    blob.center = Coords::zeros(model.dim);
    for (int a = 0; a < model.dim; ++a) blob.center[a] = rng.uniform(-0.6, 0.6);
    blob.amp = rng.uniform(0.3, 2.0) * (rng.next_u64() & 1 ? 1.0 : -1.0);
    blob.decay = rng.uniform(1.0, 4.0);
    blobs.push_back(blob);
  }
  GroupModel m = model;
  return [m, blobs](const GroupPoint& x) {
    double v = 0.0;
    for (const auto& blob : blobs) {
      const double r = quasi_distance(m, blob.center, x);
      v += blob.amp * std::exp(-blob.decay * r * r);
    }
    return v;
  };
}

VariableExponent random_exponent(const GroupModel& model, Rng& rng) {
  const int pick = static_cast<int>(rng.next_below(3));
  std::ostringstream spec;
  if (pick == 0)
    spec << "constant:" << rng.uniform(1.3, 4.0);
  else if (pick == 1)
    spec << "radial-log:" << rng.uniform(1.5, 3.0) << "," << rng.uniform(0.2, 0.8);
  else
    spec << "bump:" << rng.uniform(1.5, 3.0) << "," << rng.uniform(0.2, 0.8);
  return exponent_preset(spec.str(), model);
}

}  // namespace stratlab
