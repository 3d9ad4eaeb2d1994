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

#ifndef PGOT_ROUND_HPP_
#define PGOT_ROUND_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgot/aggregation.hpp"
#include "pgot/dp.hpp"
#include "pgot/economy.hpp"
#include "pgot/ledger.hpp"
#include "pgot/novelty.hpp"
#include "pgot/policy.hpp"
#include "pgot/receipt.hpp"

namespace pgot::round {

// ---------------------------------------------------------------------------
// State machine: Setup -> Training -> Aggregation -> Publication ->
// {Accepted | Failed}; Failed is reachable from any non-terminal phase.
// ---------------------------------------------------------------------------

enum class Phase : uint8_t {
  kSetup = 0,
  kTraining,
  kAggregation,
  kPublication,
  kAccepted,
  kFailed,
};

std::string phase_name(Phase p);

class StateMachine {
 public:
  Phase phase() const { return phase_; }
  const std::vector<Phase>& trace() const { return trace_; }
  bool terminal() const {
    return phase_ == Phase::kAccepted || phase_ == Phase::kFailed;
  }
  // Throws Error on a transition outside the declared edges.
  void advance(Phase next);

 private:
  Phase phase_ = Phase::kSetup;
  std::vector<Phase> trace_{Phase::kSetup};
};

// Logical phase budgets (minutes). Training/aggregation budgets derive from
// the active policy's deadlines; no wall-clock time is involved.
struct PhaseBudgets {
  uint32_t setup = 5;
  uint32_t training = 90;
  uint32_t aggregation = 15;
  uint32_t publication = 5;
};
PhaseBudgets phase_budgets(const policy::AdmissionBundle& admission);

// ---------------------------------------------------------------------------
// Admission
// ---------------------------------------------------------------------------

struct Candidate {
  ContributorId pid;
  FixedAmount stake;
  bool attested = true;  // TEE attestation stub
  CohortId cohort;
  uint64_t rounds_participated = 0;
  FixedAmount weight = FixedAmount::from_whole(1);
  std::vector<double> update;  // synthetic local update, pre-DP
};

enum class AdmitReason : uint8_t {
  kAdmitted = 0,
  kStakeTooLow,
  kAttestationMissing,
  kCohortTooSmall,
  kBudgetExhausted,
};

std::string admit_reason_name(AdmitReason r);

struct AdmissionDecision {
  ContributorId pid;
  AdmitReason reason = AdmitReason::kAdmitted;
  bool admitted() const { return reason == AdmitReason::kAdmitted; }
};

std::vector<AdmissionDecision> admit(const std::vector<Candidate>& candidates,
                                     const policy::PolicyBundle& bundle);

// ---------------------------------------------------------------------------
// Safety gate
// ---------------------------------------------------------------------------

struct ProxyScore {
  std::string name;
  double baseline = 0.0;
  double candidate = 0.0;
};

struct SafetyEvaluation {
  struct Entry {
    std::string name;
    double baseline = 0.0;
    double candidate = 0.0;
    double delta = 0.0;
    double threshold = 0.0;
    bool passed = false;
  };
  std::vector<Entry> entries;
  std::string rule;
  bool passed = false;
};

// Evaluates every proxy named in the bundle against the supplied scores.
// Throws EvaluationError when a configured proxy has no score (the round
// treats that as a failure). Deltas compare against threshold plus the
// bundle's numerical tolerance.
SafetyEvaluation safety_gate(const std::vector<ProxyScore>& scores,
                             const policy::SafetyBundle& bundle);

// ---------------------------------------------------------------------------
// Committee election: deterministic seeded shuffle keyed by round id and
// prior receipt cid, a verifiable stand-in for a VRF.
// ---------------------------------------------------------------------------

std::vector<NodeId> elect_committee(const std::vector<NodeId>& validators,
                                    RoundId round, const Cid& prior_receipt,
                                    size_t m);

// ---------------------------------------------------------------------------
// Round execution
// ---------------------------------------------------------------------------

struct AdversaryScript {
  double dropout_rate = 0.0;
  std::vector<ContributorId> forced_dropouts;
  uint32_t byzantine_corrupt_nodes = 0;   // perturb local sums, consistently
  uint32_t byzantine_withhold_nodes = 0;  // liveness failure
  double corruption_magnitude = 1e6;      // real-unit scale of perturbation
  bool suppress_dropout_shares = false;   // starve reconstruction below t
};

struct RoundRequest {
  RoundId round;
  std::vector<Candidate> candidates;
  std::vector<PayoutSet::Entry> receiver_escrows;
  std::optional<CohortId> cohort;  // halt scoping
  std::map<std::string, ProxyScore> proxy_scores;
  AdversaryScript adversary;
  crypto::DeterministicRng rng = crypto::DeterministicRng::from_u64(0);
};

// Long-lived simulation state threaded through consecutive rounds.
struct RoundEnvironment {
  const crypto::GroupParams* params = nullptr;
  ContentStore* store = nullptr;
  ledger::Ledger* ledger = nullptr;
  policy::PolicyLog* policy_log = nullptr;

  ValidatorSet validators;
  Cid validator_set_cid;
  Cid crypto_params_cid;
  std::map<NodeId, crypto::SchnorrKeyPair> node_keys;
  std::map<ContributorId, crypto::SchnorrKeyPair> owner_keys;
  std::map<NodeId, FixedAmount> node_stakes;
  uint32_t committee_m = 7;

  novelty::Basis basis;
  double phi_ema = 0.0;
  FixedAmount prev_pool_ema;
  Cid prior_receipt_cid;
  agg::VarianceHistory variance_history;

  // Economic configuration rendered verbatim into receipts.
  std::string alpha_c_str = "0.70";
  std::string alpha_m_str = "0.20";
  std::string alpha_t_str = "0.10";
  std::string r_base_str = "0.01";
};

struct RoundResult {
  Cid receipt_cid;
  AggregateReceipt receipt;
  RoundAnchor anchor;
  std::vector<AdmissionDecision> admissions;
  std::vector<ContributorId> admitted;
  std::vector<ContributorId> dropped;
  double phi = 0.0;
  double phi_ema = 0.0;
  agg::RobustMethod method = agg::RobustMethod::kNone;
  std::vector<econ::ContributorReward> rewards;
  std::vector<econ::SlashEvent> slashes;
  std::vector<Phase> trace;
  Cid aggregate_cid;
  Cid basis_checkpoint_cid;
  Cid round_meta_cid;
  PhaseBudgets budgets;
};

// Executes one full round against the environment: admission, synthetic
// training, masking, committee sums, dropout recovery, optional robust
// filtering, proof generation, novelty, safety gate and settlement. Exactly
// one receipt and one endorsed anchor come out, stored in the content store
// and registered with the ledger.
RoundResult run_round(RoundEnvironment& env, RoundRequest req);

}  // namespace pgot::round

#endif  // PGOT_ROUND_HPP_
