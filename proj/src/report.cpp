#include "stratlab/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace stratlab {

namespace {

using ordered_json = nlohmann::ordered_json;

/// Fixed-format doubles for CSV cells: round-trip exact, locale-free.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json scenario_json(const Scenario& s) {
  ordered_json j;
  j["name"] = s.name;
  j["group"] = s.group_id;
  j["seed"] = s.seed;
  j["domain"] = {{"lo", s.domain.lo},
                 {"hi", s.domain.hi},
                 {"spacing", s.domain.spacing},
                 {"padding", s.domain.padding}};
  j["family"] = {{"stride", s.family.stride},
                 {"r_min", s.family.r_min},
                 {"r_max", s.family.r_max},
                 {"gamma", s.family.gamma},
                 {"interior_only", s.family.interior_only}};
  j["exponents"] = {{"p", s.exponent_p}, {"s", s.exponent_s}, {"gamma", s.pair_gamma}};
  j["symbol"] = {{"id", s.symbol_id}, {"beta", s.beta}};
  j["alpha"] = s.alpha;
  j["inputs"] = s.input_ids;
  j["quantities"] = s.quantities;
  j["sweep"] = s.sweep;
  return j;
}

}  // namespace

std::string report_json(const RunReport& report) {
  ordered_json j;
  j["scenario"] = scenario_json(report.scenario);
  j["quantities"] = ordered_json::array();
  for (const auto& q : report.quantities) {
    ordered_json qj;
    qj["name"] = q.name;
    if (!q.verdict.empty()) qj["verdict"] = q.verdict;
    if (q.characterization) {
      const auto& c = *q.characterization;
      qj["supremum"] = c.supremum;
      qj["argmax_ball"] = c.argmax_ball;
      qj["family"] = c.family_descriptor;
      qj["skipped_sub_resolution"] = c.skipped_sub_resolution;
      if (c.refinement_trend) qj["refinement_trend"] = *c.refinement_trend;
      qj["balls_evaluated"] = c.per_ball.size();
    }
    if (q.ratios) {
      ordered_json entries = ordered_json::array();
      for (const auto& e : q.ratios->entries)
        entries.push_back({{"fixture", e.fixture_id},
                           {"p_norm", e.p_norm},
                           {"q_norm", e.q_norm},
                           {"ratio", e.ratio}});
      qj["ratios"] = entries;
      qj["max_ratio"] = q.ratios->max_ratio;
    }
    if (!q.scalars.empty()) {
      ordered_json sj;
      for (const auto& [k, v] : q.scalars) sj[k] = v;
      qj["scalars"] = sj;
    }
    j["quantities"].push_back(qj);
  }
  j["assertions"] = ordered_json::array();
  for (const auto& a : report.assertions)
    j["assertions"].push_back(
        {{"name", a.name}, {"tolerance", a.tolerance}, {"value", a.value}, {"pass", a.pass}});
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

std::string characterization_csv(const CharacterizationReport& rep, const BallFamily& family) {
  std::string out = "ball_id";
  const int dim = family.balls.empty() ? 0 : family.balls.front().center.size();
  for (int k = 0; k < dim; ++k) out += ",c" + std::to_string(k);
  out += ",radius,value\n";
  for (const auto& pb : rep.per_ball) {
    const Ball& ball = family.balls[static_cast<std::size_t>(pb.ball_id)];
    out += std::to_string(pb.ball_id);
    for (int k = 0; k < dim; ++k) out += "," + num(ball.center[k]);
    out += "," + num(ball.radius) + "," + num(pb.value) + "\n";
  }
  return out;
}

std::string ratio_csv(const RatioSweep& sweep) {
  std::string out = "fixture_id,p_norm,q_norm,ratio\n";
  for (const auto& e : sweep.entries)
    out += e.fixture_id + "," + num(e.p_norm) + "," + num(e.q_norm) + "," + num(e.ratio) + "\n";
  return out;
}

std::string maximal_field_csv(const LatticeDomain& domain, const MaximalField& field) {
  std::string out;
  for (int k = 0; k < domain.dim(); ++k) out += (k ? ",x" : "x") + std::to_string(k);
  out += ",value,argmax_ball\n";
  for (std::int64_t i = 0; i < domain.node_count(); ++i) {
    const GroupPoint p = domain.node(i);
    for (int k = 0; k < domain.dim(); ++k) out += (k ? "," : "") + num(p[k]);
    const auto ui = static_cast<std::size_t>(i);
    out += "," + num(field.value[ui]) + "," +
           std::to_string(field.covered[ui] ? field.argmax[ui] : -1) + "\n";
  }
  return out;
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("atomic_write: write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_report_files(const RunReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  atomic_write((fs::path(dir) / "report.json").string(), report_json(report));
  for (const auto& q : report.quantities)
    for (const auto& [name, bytes] : q.csv_files)
      atomic_write((fs::path(dir) / name).string(), bytes);
}

}  // namespace stratlab
