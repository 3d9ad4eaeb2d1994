/*
 * Copyright 2026 The PGOT Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <filesystem>
#include <set>
#include <fstream>

#include "pgot/errors.hpp"
#include "pgot/scenario.hpp"

using namespace pgot;
using namespace pgot::sim;

namespace {

ScenarioConfig tiny(const std::string& adversary = "none") {
  ScenarioConfig cfg;
  cfg.name = "tiny-" + adversary;
  cfg.adversary = adversary;
  cfg.rounds = 4;
  cfg.contributors = 6;
  cfg.dim = 12;
  cfg.validators = 8;
  cfg.seed = 21;
  cfg.dp_noise_scale = 0.0;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE_BEGIN("sim");

TEST_CASE("an honest scenario accepts and audits every round") {
  ScenarioResult r = run_scenario(tiny(), std::nullopt);
  CHECK(r.accepted_rounds == 4);
  CHECK(r.failed_rounds == 0);
  CHECK(r.all_audits_pass);
}

TEST_CASE("equal seeds reproduce byte-identical artifacts") {
  namespace fs = std::filesystem;
  fs::path base = fs::temp_directory_path() / "pgot_determinism";
  fs::remove_all(base);
  ScenarioConfig cfg = tiny();
  run_scenario(cfg, (base / "a").string());
  run_scenario(cfg, (base / "b").string());

  CHECK(slurp((base / "a" / "summary.json").string()) ==
        slurp((base / "b" / "summary.json").string()));
  // the content stores match file for file
  std::set<std::string> names_a, names_b;
  for (const auto& e : fs::directory_iterator(base / "a" / "store"))
    names_a.insert(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(base / "b" / "store"))
    names_b.insert(e.path().filename().string());
  REQUIRE(names_a == names_b);
  CHECK(!names_a.empty());
  for (const auto& n : names_a) {
    CHECK(slurp((base / "a" / "store" / n).string()) ==
          slurp((base / "b" / "store" / n).string()));
  }
  // a different seed diverges
  ScenarioConfig other = tiny();
  other.seed = 22;
  fs::remove_all(base / "c");
  run_scenario(other, (base / "c").string());
  CHECK(slurp((base / "a" / "summary.json").string()) !=
        slurp((base / "c" / "summary.json").string()));
  fs::remove_all(base);
}

TEST_CASE("the artifact directory re-audits standalone") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "pgot_audit_dir";
  fs::remove_all(dir);
  run_scenario(tiny(), dir.string());
  std::string log;
  CHECK(audit_directory(dir.string(), log));
  CHECK(log.find("PASS") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("dropout scenarios stay exact and audited") {
  ScenarioConfig cfg = tiny("dropout");
  cfg.dropout_rate = 0.3;
  cfg.contributors = 8;
  ScenarioResult r = run_scenario(cfg, std::nullopt);
  CHECK(r.accepted_rounds == 4);
  CHECK(r.all_audits_pass);
  bool saw_dropout = false;
  for (const auto& d : r.details) saw_dropout |= !d.dropped.empty();
  CHECK(saw_dropout);
}

TEST_CASE("byzantine perturbation triggers the policy's robust method") {
  ScenarioConfig cfg = tiny("byzantine_nodes");
  cfg.rounds = 6;
  cfg.contributors = 10;
  cfg.byzantine_nodes = 2;
  cfg.byzantine_from_round = 4;
  ScenarioResult r = run_scenario(cfg, std::nullopt);
  CHECK(r.all_audits_pass);
  // honest rounds keep the plain mean; attacked rounds trim
  CHECK(r.rounds[0].method == "none");
  bool trimmed = false;
  for (size_t i = 3; i < r.rounds.size(); ++i)
    trimmed |= r.rounds[i].method == "trimmed_mean";
  CHECK(trimmed);
}

TEST_CASE("the governance probe reverts early activation") {
  ScenarioConfig cfg = tiny("governance_early_activation");
  cfg.rounds = 10;
  ScenarioResult r = run_scenario(cfg, std::nullopt);
  CHECK(r.early_activation_reverted);
  CHECK(r.all_audits_pass);
}

TEST_CASE("replay scenario: the attacker scores zero after the first round") {
  ScenarioConfig cfg = tiny("replay");
  cfg.rounds = 6;
  cfg.lambda_ema = "0";  // the pool tracks the instantaneous score
  cfg.robust_method = "none";
  ScenarioResult r = run_scenario(cfg, std::nullopt);
  CHECK(r.all_audits_pass);
  CHECK(r.rounds[0].phi > 0.9);
  for (size_t i = 1; i < r.rounds.size(); ++i) CHECK(r.rounds[i].phi < 1e-9);
}

TEST_CASE("cost report reproduces the fixed-price table") {
  CostReport r = cost_report(10000, 1);
  CHECK(r.gas_units_string() == "27.0");
  CHECK(r.onchain_dollars_string() == "0.027");
  CHECK(r.total_per_round_string() == "3.55");
  CHECK(r.per_contributor_string() == "0.000355");
  CHECK(cost_report(0, 1).onchain_microgas == 4 * 500000);
  std::string text = r.render_text();
  CHECK(text.find("27.0 gas units") != std::string::npos);
  CHECK(text.find("$3.55 per round") != std::string::npos);
}

TEST_CASE("scenario files parse with field-level errors") {
  ScenarioConfig ok = ScenarioConfig::from_json_text(
      R"({"name":"x","rounds":3,"contributors":5,"dim":8,"seed":9})");
  CHECK(ok.rounds == 3);
  CHECK(ok.contributors == 5);
  CHECK_THROWS_AS(ScenarioConfig::from_json_text("{nope"), ConfigError);
  CHECK_THROWS_AS(ScenarioConfig::from_json_text(R"({"no_such_key":1})"),
                  ConfigError);
  CHECK_THROWS_AS(ScenarioConfig::from_json_text(R"({"rounds":"many"})"),
                  ConfigError);
}

TEST_SUITE_END();
