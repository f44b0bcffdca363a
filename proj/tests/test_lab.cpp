#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "stratlab/parallel.hpp"
#include "stratlab/runner.hpp"

using namespace stratlab;

TEST_CASE("config parser") {
  const std::string text = R"(
# comment
[scenario]
name = demo
group = euclidean:1
[domain]
bounds = -2, 2
spacing = 0.1
)";
  Config cfg = Config::parse_string(text);
  CHECK(cfg.require("scenario.name") == "demo");
  CHECK(cfg.require("scenario.group") == "euclidean:1");
  const auto bounds = cfg.take_doubles("domain.bounds");
  REQUIRE(bounds.size() == 2);
  CHECK(bounds[0] == -2.0);
  CHECK(cfg.require_double("domain.spacing") == 0.1);
  CHECK_NOTHROW(cfg.finish());

  // Unknown keys are errors.
  Config cfg2 = Config::parse_string("[scenario]\nname = x\ntypo_key = 1\n");
  (void)cfg2.take("scenario.name");
  CHECK_THROWS_WITH_AS(cfg2.finish(), doctest::Contains("unknown keys"), std::runtime_error);

  CHECK_THROWS_AS(Config::parse_string("[a]\nk = 1\nk = 2\n"), std::runtime_error);
  CHECK_THROWS_AS(Config::parse_string("novalue\n"), std::runtime_error);
}

TEST_CASE("scenario validation names the violated hypothesis") {
  Scenario s;
  s.group_id = "euclidean:1";
  s.domain.lo = {-2.0};
  s.domain.hi = {2.0};
  s.domain.spacing = {0.1};
  s.family = {1, 0.3, 1.0, 1.1, true};
  s.beta = 0.6;
  s.alpha = 0.7;  // alpha + beta >= Q on R^1
  s.quantities = {"maximal"};
  const GroupModel m = make_group(s.group_id);
  CHECK_THROWS_WITH_AS(validate_scenario(s, m), doctest::Contains("alpha+beta<Q"),
                       std::invalid_argument);

  s.beta = 1.2;
  CHECK_THROWS_WITH_AS(validate_scenario(s, m), doctest::Contains("0<beta<1"),
                       std::invalid_argument);

  s.beta = 0.2;
  s.alpha = 0.3;
  CHECK_NOTHROW(validate_scenario(s, m));
}

TEST_CASE("fixture catalog") {
  const auto cat = list_fixtures();
  auto find = [&](const std::string& id) {
    for (const auto& e : cat)
      if (e.id == id) return true;
    return false;
  };
  CHECK(find("gauge-beta"));
  CHECK(find("jump"));
  CHECK(find("chi-unit-ball"));
  // Tags as registered.
  for (const auto& e : cat) {
    if (e.id == "jump") CHECK(e.analytic_tag == "jump");
    if (e.id == "gauge-beta") {
      CHECK(e.analytic_tag == "lipschitz-gauge");
      CHECK(e.needs_beta);
    }
  }
  // Stable across calls.
  const auto cat2 = list_fixtures();
  REQUIRE(cat.size() == cat2.size());
  for (std::size_t k = 0; k < cat.size(); ++k) CHECK(cat[k].id == cat2[k].id);
}

TEST_CASE("built-in scenarios run and report") {
  SUBCASE("lemma212-identities") {
    Scenario s = load_scenario("lemma212-identities");
    const RunReport rep = run_scenario(s);
    REQUIRE(!rep.assertions.empty());
    for (const auto& a : rep.assertions) {
      INFO(a.name, " value=", a.value, " tol=", a.tolerance);
      CHECK(a.pass);
    }
  }
  SUBCASE("thm12-positive") {
    Scenario s = load_scenario("thm12-positive");
    const RunReport rep = run_scenario(s);
    REQUIRE(rep.quantities.size() == 1);
    CHECK(rep.quantities[0].verdict == "finite");
    REQUIRE(rep.quantities[0].characterization.has_value());
    CHECK(rep.quantities[0].characterization->supremum > 0.0);
  }
}

TEST_CASE("malformed scenario is rejected up front") {
  Scenario s = load_scenario("thm12-positive");
  s.alpha = 3.5;
  s.beta = 0.6;  // alpha + beta = 4.1 >= Q = 4
  CHECK_THROWS_WITH_AS(run_scenario(s), doctest::Contains("alpha+beta<Q"),
                       std::invalid_argument);
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  Scenario s = load_scenario("lemma212-identities");
  set_worker_count(1);
  const std::string a = report_json(run_scenario(s));
  const std::string b = report_json(run_scenario(s));
  CHECK(a == b);
  set_worker_count(4);
  const std::string c = report_json(run_scenario(s));
  set_worker_count(0);
  CHECK(a == c);
  CHECK(a.find("\"scenario\"") != std::string::npos);
  CHECK(a.find("lemma212-identities") != std::string::npos);
}

TEST_CASE("scenario files round-trip and outputs are written atomically") {
  Scenario s = load_scenario("lemma212-identities");
  const std::string dir = (std::filesystem::temp_directory_path() / "stratlab_test_out").string();
  std::filesystem::remove_all(dir);
  s.output_dir = dir;

  // Round-trip through the config text form.
  Config cfg = Config::parse_string(scenario_to_config_text(s), "roundtrip");
  const Scenario s2 = parse_scenario(cfg);
  CHECK(s2.group_id == s.group_id);
  CHECK(s2.family.r_min == s.family.r_min);
  CHECK(s2.quantities == s.quantities);
  CHECK(s2.output_dir == s.output_dir);

  const RunReport rep = run_scenario(s);
  CHECK(std::filesystem::exists(dir + "/report.json"));
  // No temp file survives.
  CHECK_FALSE(std::filesystem::exists(dir + "/report.json.tmp"));
  std::ifstream in(dir + "/report.json");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(bytes == report_json(rep));
  std::filesystem::remove_all(dir);
}

TEST_CASE("characterization CSV schema") {
  const GroupModel m = make_group("euclidean:1");
  const LatticeDomain d(m, -2.0, 2.0, 0.01);
  const auto family = build_ball_family(d, 50, 0.2, 1.0, 1.2, true);
  const GridFunction b = sample(d, [](const GroupPoint& x) { return x[0]; });
  const auto rep = lip_seminorm(b, 0.5, 1.0, family);
  const std::string csv = characterization_csv(rep, family);
  CHECK(csv.rfind("ball_id,c0,radius,value\n", 0) == 0);
  // One row per evaluated ball plus the header.
  const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  CHECK(rows == rep.per_ball.size() + 1);
}

TEST_CASE("hls quantity emits ratio sweep with bounded spread") {
  Scenario s = load_scenario("hls-probe");
  const RunReport rep = run_scenario(s);
  REQUIRE(rep.quantities.size() == 1);
  REQUIRE(rep.quantities[0].ratios.has_value());
  CHECK(rep.quantities[0].ratios->entries.size() == 3);
  for (const auto& a : rep.assertions) {
    INFO(a.name, " value=", a.value);
    CHECK(a.pass);
  }
  const std::string csv = ratio_csv(*rep.quantities[0].ratios);
  CHECK(csv.rfind("fixture_id,p_norm,q_norm,ratio\n", 0) == 0);
}
