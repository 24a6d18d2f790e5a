#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>

#include "nonlocality/report.hpp"

namespace nl = nonlocality;

namespace {

// Small grids so that repeated runs stay quick.
nl::ReproductionConfig quick_config() {
  nl::ReproductionConfig c;
  c.timestamp = false;
  c.chsh_grid = 8;
  c.detection_grid = 4;
  c.cglmp_samples = 40;
  c.correlator_samples = 80;
  c.kl_samples = 4;
  c.kl.grid_points = 6;
  c.kl.gamma_grid = 5;
  c.efficiency_starts = 8;
  return c;
}

std::map<std::string, bool> verdicts(const nl::ReproductionReport& r) {
  std::map<std::string, bool> out;
  for (const auto& e : r.entries) out[e.claim] = e.pass;
  return out;
}

}  // namespace

TEST_CASE("default run") {
  const auto report = nl::reproduce_all();
  REQUIRE(report.entries.size() == nl::claim_ids().size());
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    CHECK(report.entries[i].claim == nl::claim_ids()[i]);
  }
  CHECK(report.criteria() == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
  for (const auto& e : report.entries) {
    INFO(e.claim, " computed ", e.computed);
    if (e.criterion != 6) {
      CHECK(e.pass);
    } else if (!e.pass) {
      // A failing KL claim carries the alternative weightings.
      CHECK(e.details.contains("convention_sweep"));
      CHECK(e.details["convention_sweep"].size() == 3);
    }
  }
  CHECK(report.passed() == report.criterion_passed(6));
  const auto j = nl::to_json(report);
  CHECK(j.at("metadata").contains("timestamp"));
  CHECK_FALSE(j.at("entries").at(0).contains("runtime_seconds"));
  CHECK(nl::to_json(report, true).at("entries").at(0).contains("runtime_seconds"));
  CHECK(nl::to_table(report).find("chsh.gisin_curve") != std::string::npos);
}

TEST_CASE("zero tolerance fails only the targeted claim") {
  const auto config = quick_config();
  const auto baseline = nl::reproduce_all(config);
  auto tightened = config;
  tightened.tolerance_overrides["kl.maximally_entangled"] = 0.0;
  const auto report = nl::reproduce_all(tightened);
  auto expected = verdicts(baseline);
  expected["kl.maximally_entangled"] = false;
  CHECK(verdicts(report) == expected);
  CHECK_FALSE(report.passed());
  CHECK_FALSE(report.criterion_passed(6));

  SUBCASE("same seed, same bytes") {
    CHECK(nl::to_json(nl::reproduce_all(config)).dump() == nl::to_json(baseline).dump());
  }
}

TEST_CASE("strict profile scales tolerances") {
  auto config = quick_config();
  config.profile = nl::ToleranceProfile::Strict;
  config.tolerance_overrides["kl.global_gamma"] = 0.5;
  const auto strict = nl::reproduce_all(config);
  for (const auto& e : strict.entries) {
    if (e.claim == "detection.small_theta") CHECK(e.tolerance == doctest::Approx(0.001));
    if (e.claim == "kl.global_gamma") CHECK(e.tolerance == 0.5);
  }
  CHECK(nl::to_json(strict).at("metadata").at("tolerance_profile") == "strict");
}

TEST_CASE("config parsing") {
  const auto c = nl::config_from_json(
      {{"seed", 5}, {"tolerance_profile", "strict"}, {"tolerances", {{"kl.global_value", 0.01}}}, {"chsh_grid", 7}});
  CHECK(c.seed == 5);
  CHECK(c.profile == nl::ToleranceProfile::Strict);
  CHECK(c.tolerance_overrides.at("kl.global_value") == 0.01);
  CHECK(c.chsh_grid == 7);

  CHECK_THROWS_AS(nl::config_from_json({{"bogus", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(nl::config_from_json({{"tolerances", {{"no.such.claim", 1}}}}), std::invalid_argument);
  CHECK_THROWS_AS(nl::config_from_json({{"tolerances", {{"kl.global_value", -1}}}}), std::invalid_argument);
  CHECK_THROWS_AS(nl::config_from_json({{"chsh_grid", 0}}), std::invalid_argument);
  CHECK_THROWS_AS(nl::config_from_json({{"seed", "x"}}), std::invalid_argument);
  CHECK_THROWS_AS(nl::config_from_json(nlohmann::json::array()), std::invalid_argument);
  CHECK_THROWS_AS(nl::load_config("/nonexistent/config.json"), std::invalid_argument);

  CHECK(nl::parse_tolerance_profile("default") == nl::ToleranceProfile::Default);
  CHECK_FALSE(nl::parse_tolerance_profile("loose").has_value());
}
