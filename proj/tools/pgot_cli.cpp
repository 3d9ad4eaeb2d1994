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

// Batch scenario runner: executes deterministic coordination rounds,
// audits every receipt it emits, and writes the artifact directory.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pgot/errors.hpp"
#include "pgot/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pgot - trustless federated-learning coordination simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  uint64_t seed_override = 0;
  bool has_seed = false;
  auto* run = app.add_subcommand("run", "execute a scenario file");
  run->add_option("--scenario", scenario_path, "scenario JSON file")
      ->required();
  run->add_option("--out", out_dir, "artifact output directory");
  run->add_option("--seed", seed_override, "override the scenario seed")
      ->each([&](const std::string&) { has_seed = true; });

  std::string audit_dir;
  auto* audit = app.add_subcommand("audit", "re-verify an artifact directory");
  audit->add_option("--dir", audit_dir, "artifact directory to verify")
      ->required();

  uint64_t n_contributors = 10000;
  uint64_t n_rounds = 1;
  std::string cost_out;
  auto* cost = app.add_subcommand("cost-report", "analytic per-round costs");
  cost->add_option("--contributors", n_contributors, "contributor count");
  cost->add_option("--rounds", n_rounds, "round horizon");
  cost->add_option("--out", cost_out, "also write the table to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      pgot::sim::ScenarioConfig cfg =
          pgot::sim::ScenarioConfig::from_json_file(scenario_path);
      if (has_seed) cfg.seed = seed_override;
      pgot::sim::ScenarioResult result =
          pgot::sim::run_scenario(cfg, out_dir);
      std::cout << "scenario '" << cfg.name << "': " << result.accepted_rounds
                << " accepted, " << result.failed_rounds << " failed, audits "
                << (result.all_audits_pass ? "PASS" : "FAIL") << "\n";
      std::cout << "artifacts written to " << out_dir << "\n";
      return result.all_audits_pass ? 0 : 1;
    }
    if (audit->parsed()) {
      std::string log;
      bool pass = pgot::sim::audit_directory(audit_dir, log);
      std::cout << log;
      std::cout << "overall: " << (pass ? "PASS" : "FAIL") << "\n";
      return pass ? 0 : 1;
    }
    if (cost->parsed()) {
      pgot::sim::CostReport report =
          pgot::sim::cost_report(n_contributors, n_rounds);
      std::string text = report.render_text();
      std::cout << text;
      if (!cost_out.empty()) {
        std::ofstream(cost_out) << text;
      }
      return 0;
    }
  } catch (const pgot::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
