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

#ifndef PGOT_POLICY_HPP_
#define PGOT_POLICY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "pgot/cid.hpp"
#include "pgot/fixed_amount.hpp"
#include "pgot/store.hpp"

namespace pgot::policy {

// ---------------------------------------------------------------------------
// Policy bundle (version 1): five sub-bundles plus time-lock metadata,
// bound atomically under one content identifier. Exact-arithmetic knobs are
// carried as decimal strings; analytic knobs as IEEE doubles.
// ---------------------------------------------------------------------------

struct ProxyConfig {
  std::string name;
  Cid model_cid;
  Hash32 model_sha256{};
  double threshold = 0.0;  // max tolerated candidate-minus-baseline delta
};

struct SafetyBundle {
  std::vector<ProxyConfig> proxy_configs;
  std::string ensemble_rule = "all_pass";  // or majority rule, see round
  Cid evaluation_set_cid;
  double numerical_tolerance = 0.001;
};

struct DpBundle {
  double epsilon_per_round = 1.0;
  double delta_global = 1e-6;
  double clipping_norm = 1.0;
  double noise_scale = 0.5;
  std::string accountant = "renyi";
  double epsilon_budget_total = 4000.0;
};

struct AdmissionBundle {
  std::string min_stake = "10.0";
  bool attestation_required = false;
  uint32_t k_anonymity_threshold = 500;
  uint32_t deadline_submission_sec = 5400;
  uint32_t deadline_aggregation_sec = 900;
};

struct AggregationBundle {
  std::string robust_method = "trimmed_mean";
  std::string robust_alpha = "0.2";
  uint32_t robust_theta_percentile = 90;
  uint32_t quantization_bits = 0;
  std::string w_min = "0.0";
  std::string w_max = "65536.0";
};

struct NoveltyEconBundle {
  std::string beta = "0.3";
  std::string lambda_ema = "0.7";
  uint32_t basis_size = 20;
  std::string basis_rotation = "incremental";  // or "full"
};

struct TimelockMeta {
  uint64_t propose_round = 0;
  uint64_t activation_round = 0;
  uint64_t t_lock = 5;
  Cid policy_cid;  // zeroed while hashing the bundle itself
};

struct PolicyBundle {
  static constexpr std::string_view kSchemaName = "pgot.policy_bundle";

  SafetyBundle safety;
  DpBundle dp;
  AdmissionBundle admission;
  AggregationBundle aggregation;
  NoveltyEconBundle novelty_econ;
  TimelockMeta timelock;

  void encode(CanonicalWriter& w) const;
  static PolicyBundle decode_frame(std::span<const uint8_t> frame);
  // Content id over the bundle with timelock.policy_cid zeroed; changing any
  // single field anywhere changes this id.
  Cid self_cid() const;
};

// ---------------------------------------------------------------------------
// Progressive governance
// ---------------------------------------------------------------------------

enum class PhaseIndex : uint8_t { kPhase0 = 0, kPhase1 = 1, kPhase2 = 2 };

struct GovernancePhase {
  PhaseIndex index;
  uint64_t t_lock_min;  // 5 / 10 / 20 rounds
};

// Round-number thresholds 500 and 2000.
GovernancePhase phase_for_round(uint64_t round);

// Approval evidence, one variant per phase.
struct MultisigApproval {
  std::vector<uint32_t> signers;  // indices into the 5 configured operators
};
struct CouncilApproval {
  std::vector<uint32_t> voters;  // indices into the 9 council seats
};
struct StakeVote {
  struct Ballot {
    FixedAmount stake;
    bool yes = true;
  };
  FixedAmount total_eligible_stake;
  std::vector<Ballot> ballots;
  bool constitutional = false;  // alpha splits / phase thresholds
};

struct ApprovalEvidence {
  std::optional<MultisigApproval> multisig;
  std::optional<CouncilApproval> council;
  std::optional<StakeVote> stake_vote;
};

// floor(sqrt(whole stake units)): quadratic voting weight.
uint64_t vote_weight(FixedAmount stake);

// ---------------------------------------------------------------------------
// Emergency halts
// ---------------------------------------------------------------------------

inline constexpr uint64_t kMaxHaltRounds = 36;  // 72 hours at 2h cadence

struct EmergencyHalt {
  std::optional<CohortId> cohort;  // nullopt = global
  uint64_t start_round = 0;
  uint64_t expiry_round = 0;  // exclusive; capped at start + 36
  Cid justification;
};

// ---------------------------------------------------------------------------
// Policy log: proposals, time-locked activations, halt book
// ---------------------------------------------------------------------------

struct ProposalRecord {
  Cid policy_cid;
  uint64_t propose_round = 0;
  uint64_t activation_round = 0;
  uint64_t t_lock = 0;
};

struct ActivationRecord {
  Cid policy_cid;
  uint64_t activated_at = 0;
};

class PolicyLog {
 public:
  // Installs the genesis bundle as active from round 0.
  PolicyLog(ContentStore& store, PolicyBundle genesis);

  // Rebuilds a log from persisted records (audit-only tooling).
  PolicyLog(ContentStore& store, std::vector<ProposalRecord> proposals,
            std::vector<ActivationRecord> activations)
      : store_(store),
        proposals_(std::move(proposals)),
        activations_(std::move(activations)) {}

  // Freezes the bundle in the store and records the proposal. The bundle's
  // t_lock must meet the phase minimum (LockPeriodError otherwise); the
  // effective activation round is max(requested, current + t_lock).
  ProposalRecord propose(PolicyBundle bundle, uint64_t current_round,
                         uint64_t requested_activation_round);

  // Activates an existing proposal. RevertError before its activation round,
  // QuorumError when the phase's approval rule is unsatisfied.
  ActivationRecord activate(const Cid& policy_cid, uint64_t current_round,
                            const ApprovalEvidence& approvals);

  // Cid of the policy governing `round`: the latest activation at or before
  // it. Historical answers never change once later activations append.
  Cid active_policy_at(uint64_t round) const;
  PolicyBundle active_bundle_at(uint64_t round) const;

  const std::vector<ProposalRecord>& proposals() const { return proposals_; }
  const std::vector<ActivationRecord>& activations() const {
    return activations_;
  }
  const ProposalRecord* find_proposal(const Cid& policy_cid) const;

  // Emergency halts. HaltLimitError past one live halt per cohort plus one
  // global. Returns the recorded halt.
  EmergencyHalt halt(std::optional<CohortId> cohort, uint64_t current_round,
                     uint64_t requested_rounds, const Cid& justification);
  void expire_halts(uint64_t current_round);
  bool halted(uint64_t round, std::optional<CohortId> cohort) const;
  const std::vector<EmergencyHalt>& active_halts() const { return halts_; }

 private:
  ContentStore& store_;
  std::vector<ProposalRecord> proposals_;
  std::vector<ActivationRecord> activations_;
  std::vector<EmergencyHalt> halts_;
};

}  // namespace pgot::policy

#endif  // PGOT_POLICY_HPP_
