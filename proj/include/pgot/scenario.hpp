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

#ifndef PGOT_SCENARIO_HPP_
#define PGOT_SCENARIO_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pgot/audit.hpp"
#include "pgot/round.hpp"

namespace pgot::sim {

// Batch experiment description. Identical config + seed reproduces every
// artifact byte for byte.
struct ScenarioConfig {
  std::string name = "honest";
  uint64_t rounds = 20;
  uint64_t contributors = 200;
  uint32_t committee_m = 7;
  uint32_t validators = 10;
  uint32_t dim = 1024;
  uint64_t seed = 1;

  // adversary: none | replay | sybil_split | byzantine_nodes | dropout |
  //            governance_early_activation | proxy_failure
  std::string adversary = "none";
  uint64_t sybil_n = 10;        // identities the attacker splits across
  bool sybil_split = true;      // false runs the honest-single-identity twin
  uint32_t byzantine_nodes = 2; // corrupted committee nodes
  uint64_t byzantine_from_round = 4;
  double dropout_rate = 0.15;
  uint64_t replay_horizon = 0;  // >0: explorer rounds before the re-replay
  uint64_t proxy_fail_round = 3;

  // receivers and economics
  uint64_t receivers = 10;
  std::string receiver_escrow = "95.0";
  std::string alpha_c = "0.70";
  std::string alpha_m = "0.20";
  std::string alpha_t = "0.10";
  std::string r_base = "0.01";
  std::string attestation_cost = "0.1";

  // policy knobs layered over the genesis bundle
  double dp_noise_scale = 0.5;
  double dp_clipping_norm = 1.0;
  double dp_epsilon_budget = 4000.0;
  uint32_t k_anonymity_threshold = 1;  // desk scale
  std::string min_stake = "10.0";
  uint32_t basis_size = 20;
  std::string lambda_ema = "0.7";
  std::string beta = "0.3";
  std::string robust_method = "trimmed_mean";
  bool with_toxicity_proxy = false;
  double update_magnitude = 0.5;

  static ScenarioConfig from_json_file(const std::string& path);
  static ScenarioConfig from_json_text(const std::string& text);
};

struct RoundSummary {
  uint64_t round = 0;
  std::string status;
  double phi = 0.0;
  double phi_ema = 0.0;
  std::string method;
  uint64_t n_admitted = 0;
  bool audit_pass = false;
  Cid receipt_cid;
};

struct ScenarioResult {
  std::vector<RoundSummary> rounds;
  std::vector<round::RoundResult> details;
  bool all_audits_pass = true;
  uint64_t accepted_rounds = 0;
  uint64_t failed_rounds = 0;
  ledger::GasMeter gas_total;
  // Adversary bookkeeping: identities operated by the scripted attacker.
  std::vector<ContributorId> attacker_pids;
  // Governance probes (governance_early_activation scenario).
  bool early_activation_reverted = false;
};

// The full desk-scale world: crypto parameters, content store, ledger,
// policy log and per-round environment, wired for consecutive rounds.
class Simulation {
 public:
  explicit Simulation(ScenarioConfig config);
  ~Simulation();

  round::RoundResult step();
  ScenarioResult run_all();

  // Writes store/, audit reports, summary tables and the novelty series.
  void write_artifacts(const std::string& out_dir,
                       const ScenarioResult& result) const;

  ContentStore& store();
  policy::PolicyLog& policy_log();
  ledger::Ledger& ledger();
  round::RoundEnvironment& env();
  audit::PublicView audit_view() const;
  const ScenarioConfig& config() const;
  const std::vector<ContributorId>& contributor_ids() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ScenarioResult run_scenario(const ScenarioConfig& config,
                            const std::optional<std::string>& out_dir);

// Re-verifies every anchored round in a previously written artifact
// directory from its public content alone. Returns true when every round
// passes; appends one line per round to `log`.
bool audit_directory(const std::string& dir, std::string& log);

// Analytic per-round cost table at the fixed-price constants.
struct CostReport {
  uint64_t contributors = 0;
  uint64_t rounds = 0;
  uint64_t onchain_microgas = 0;     // 2500*N + 500000*4
  uint64_t storage_nanodollars = 0;  // adapters + model + archival
  uint64_t committee_nanodollars = 0;
  uint64_t total_nanodollars() const;
  std::string gas_units_string() const;
  std::string onchain_dollars_string() const;
  std::string total_per_round_string() const;       // cents, half-up
  std::string per_contributor_string() const;       // 6 decimals, half-up
  std::string render_text() const;
};

CostReport cost_report(uint64_t contributors, uint64_t rounds);

}  // namespace pgot::sim

#endif  // PGOT_SCENARIO_HPP_
