// stratlab: scenario-driven verification runs for maximal operators,
// commutators, and variable-exponent norms on stratified groups.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "stratlab/acceptance.hpp"
#include "stratlab/fixtures.hpp"
#include "stratlab/parallel.hpp"
#include "stratlab/runner.hpp"

namespace {

using namespace stratlab;

void print_report_summary(const RunReport& rep) {
  for (const auto& q : rep.quantities) {
    std::cout << "quantity " << q.name;
    if (q.characterization)
      std::cout << ": sup=" << q.characterization->supremum
                << " argmax_ball=" << q.characterization->argmax_ball;
    if (q.ratios) std::cout << ": max_ratio=" << q.ratios->max_ratio;
    if (!q.verdict.empty()) std::cout << " verdict=" << q.verdict;
    std::cout << "\n";
  }
  for (const auto& a : rep.assertions)
    std::cout << (a.pass ? "[PASS] " : "[FAIL] ") << a.name << " value=" << a.value
              << " tolerance=" << a.tolerance << "\n";
  for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
  for (const auto& [stage, sec] : rep.timings_sec)
    std::fprintf(stderr, "timing %s %.3fs\n", stage.c_str(), sec);
}

Scenario scenario_from_flags(const std::string& group, const std::string& quantity,
                             double alpha, double beta, const std::string& exponent,
                             const std::string& symbol, bool sweep, double bound, double spacing,
                             std::int64_t stride, double r_min, double r_max, double gamma,
                             const std::string& out_dir, std::uint64_t seed) {
  Scenario s;
  s.name = "cli-" + quantity;
  s.group_id = group;
  s.domain.lo = {-bound};
  s.domain.hi = {bound};
  s.domain.spacing = {spacing};
  s.family = {stride, r_min, r_max, gamma, true};
  s.exponent_s = exponent;
  s.exponent_p = exponent;
  s.symbol_id = symbol;
  s.beta = beta;
  s.alpha = alpha;
  s.quantities = {quantity};
  s.sweep = sweep;
  s.seed = seed;
  s.output_dir = out_dir;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for fractional maximal operators on stratified groups"};
  app.require_subcommand(1);

  int workers = 0;
  std::uint64_t seed = 1;
  app.add_option("--workers", workers, "worker count (default: STRATLAB_WORKERS or 1)");
  app.add_option("--seed", seed, "seed for all sampled quantities");

  // verify
  auto* verify = app.add_subcommand("verify", "run the acceptance battery");
  std::vector<int> criteria;
  verify->add_option("--criterion", criteria, "criterion indices to run (default: all)");

  // characterize
  auto* ch = app.add_subcommand("characterize", "characterization functional over a ball family");
  std::string ch_quantity = "mean", ch_group = "heisenberg1", ch_exponent = "constant:2";
  std::string ch_symbol = "gauge-beta", ch_out;
  double ch_alpha = 0.5, ch_beta = 0.3, ch_bound = 2.4, ch_spacing = 0.3;
  double ch_rmin = 1.8, ch_rmax = 2.0, ch_gamma = 1.1;
  std::int64_t ch_stride = 2;
  bool ch_sweep = false;
  ch->add_option("--quantity", ch_quantity, "mean | maximal | nonneg")->capture_default_str();
  ch->add_option("--group", ch_group, "group id")->capture_default_str();
  ch->add_option("--alpha", ch_alpha)->capture_default_str();
  ch->add_option("--beta", ch_beta)->capture_default_str();
  ch->add_option("--exponent", ch_exponent, "s(.) preset")->capture_default_str();
  ch->add_option("--symbol", ch_symbol)->capture_default_str();
  ch->add_flag("--sweep", ch_sweep, "run the h-halving / r_min-shrink sweep");
  ch->add_option("--bound", ch_bound)->capture_default_str();
  ch->add_option("--spacing", ch_spacing)->capture_default_str();
  ch->add_option("--stride", ch_stride)->capture_default_str();
  ch->add_option("--r-min", ch_rmin)->capture_default_str();
  ch->add_option("--r-max", ch_rmax)->capture_default_str();
  ch->add_option("--gamma", ch_gamma)->capture_default_str();
  ch->add_option("--out", ch_out, "output directory for CSV/JSON");

  // maximal
  auto* mx = app.add_subcommand("maximal", "per-node maximal / commutator field as CSV");
  std::string mx_group = "euclidean:1", mx_function = "chi-unit-ball", mx_symbol, mx_out;
  std::string mx_operator = "maximal";
  double mx_alpha = 0.5, mx_bound = 2.0, mx_spacing = 0.01;
  double mx_rmin = 0.05, mx_rmax = 1.5, mx_gamma = 1.15;
  std::int64_t mx_stride = 4;
  mx->add_option("--group", mx_group)->capture_default_str();
  mx->add_option("--alpha", mx_alpha)->capture_default_str();
  mx->add_option("--function", mx_function, "input fixture id")->capture_default_str();
  mx->add_option("--symbol", mx_symbol, "symbol fixture id (commutator operators)");
  mx->add_option("--operator", mx_operator, "maximal | commutator | nonlinear")
      ->capture_default_str();
  mx->add_option("--bound", mx_bound)->capture_default_str();
  mx->add_option("--spacing", mx_spacing)->capture_default_str();
  mx->add_option("--stride", mx_stride)->capture_default_str();
  mx->add_option("--r-min", mx_rmin)->capture_default_str();
  mx->add_option("--r-max", mx_rmax)->capture_default_str();
  mx->add_option("--gamma", mx_gamma)->capture_default_str();
  mx->add_option("--out", mx_out, "CSV path (default: stdout)");
  double mx_beta = 0.3;
  mx->add_option("--beta", mx_beta, "beta for gauge symbols")->capture_default_str();

  // norm
  auto* nm = app.add_subcommand("norm", "Luxemburg and weak norms of a fixture");
  std::string nm_group = "euclidean:1", nm_function = "bump", nm_exponent = "constant:2";
  double nm_bound = 2.0, nm_spacing = 0.005;
  nm->add_option("--group", nm_group)->capture_default_str();
  nm->add_option("--function", nm_function)->capture_default_str();
  nm->add_option("--exponent", nm_exponent)->capture_default_str();
  nm->add_option("--bound", nm_bound)->capture_default_str();
  nm->add_option("--spacing", nm_spacing)->capture_default_str();

  // scenario run
  auto* sc = app.add_subcommand("scenario", "scenario file operations");
  auto* sc_run = sc->add_subcommand("run", "run a scenario (built-in name or file path)");
  std::string sc_name;
  sc_run->add_option("file", sc_name, "scenario file or built-in name")->required();

  // fixtures list
  auto* fx = app.add_subcommand("fixtures", "fixture catalog");
  fx->add_subcommand("list", "list registered fixtures");

  CLI11_PARSE(app, argc, argv);

  if (workers > 0) set_worker_count(workers);

  try {
    if (*verify) {
      AcceptanceOptions opt;
      opt.criteria = criteria;
      opt.seed = seed;
      const auto results = run_acceptance(opt);
      bool all = true;
      for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.index << " — " << r.name
                  << " (" << r.seconds << "s)\n";
        if (!r.details.empty()) std::cout << "       " << r.details << "\n";
        all = all && r.pass;
      }
      return all ? 0 : 1;
    }
    if (*ch) {
      Scenario s = scenario_from_flags(ch_group, ch_quantity, ch_alpha, ch_beta, ch_exponent,
                                       ch_symbol, ch_sweep, ch_bound, ch_spacing, ch_stride,
                                       ch_rmin, ch_rmax, ch_gamma, ch_out, seed);
      const RunReport rep = run_scenario(s);
      print_report_summary(rep);
      if (ch_out.empty()) std::cout << report_json(rep);
      return rep.all_assertions_pass() ? 0 : 1;
    }
    if (*mx) {
      const GroupModel model = make_group(mx_group);
      const LatticeDomain domain(model, -mx_bound, mx_bound, mx_spacing);
      const auto family =
          build_ball_family(domain, mx_stride, mx_rmin, mx_rmax, mx_gamma, true);
      const GridFunction f = sample(domain, make_input(mx_function, model));
      MaximalConfig cfg{mx_alpha, &family, std::nullopt};
      MaximalField field;
      if (mx_operator == "maximal") {
        field = maximal_field(f, cfg);
      } else if (mx_operator == "commutator") {
        const GridFunction b = sample(domain, make_symbol(mx_symbol, model, mx_beta).eval);
        field = maximal_commutator_field(b, f, cfg);
      } else if (mx_operator == "nonlinear") {
        const GridFunction b = sample(domain, make_symbol(mx_symbol, model, mx_beta).eval);
        const SignedField sf = nonlinear_commutator_field(b, f, cfg);
        field.value = sf.value;
        field.covered = sf.covered;
        field.argmax.assign(sf.value.size(), -1);
        field.uncovered = sf.uncovered;
      } else {
        throw std::runtime_error("unknown --operator " + mx_operator);
      }
      const std::string csv = maximal_field_csv(domain, field);
      if (mx_out.empty())
        std::cout << csv;
      else
        atomic_write(mx_out, csv);
      std::fprintf(stderr, "uncovered nodes: %lld\n",
                   static_cast<long long>(field.uncovered));
      return 0;
    }
    if (*nm) {
      const GroupModel model = make_group(nm_group);
      const LatticeDomain domain(model, -nm_bound, nm_bound, nm_spacing);
      const GridFunction f = sample(domain, make_input(nm_function, model));
      const VariableExponent p = exponent_preset(nm_exponent, model);
      std::cout << "luxemburg_norm = " << luxemburg_norm(f, p) << "\n";
      if (p.kind() == ExponentKind::Constant)
        std::cout << "weak_norm = " << weak_norm(f, p(group_identity(model))) << "\n";
      std::cout << "modular(eta=1) = " << modular(f, p, 1.0) << "\n";
      return 0;
    }
    if (*sc_run) {
      Scenario s = load_scenario(sc_name);
      s.seed = seed;
      const RunReport rep = run_scenario(s);
      print_report_summary(rep);
      if (s.output_dir.empty()) std::cout << report_json(rep);
      return rep.all_assertions_pass() ? 0 : 1;
    }
    if (*fx) {
      for (const auto& e : list_fixtures())
        std::cout << e.id << "  [" << e.role << ", tag=" << e.analytic_tag
                  << (e.needs_beta ? ", needs beta" : "") << "]  " << e.description << "\n";
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
