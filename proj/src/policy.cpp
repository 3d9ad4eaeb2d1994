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

#include "pgot/policy.hpp"

#include <algorithm>
#include <cstring>
#include <set>

#include "pgot/errors.hpp"

namespace pgot::policy {

namespace {

void encode_double(CanonicalWriter& w, double v) {
  uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, sizeof(bits));
  w.u64_be(bits);
}

double decode_double(CanonicalReader& r) {
  uint64_t bits = r.u64_be();
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

}  // namespace

void PolicyBundle::encode(CanonicalWriter& w) const {
  // safety
  w.list_count(safety.proxy_configs.size());
  for (const auto& p : safety.proxy_configs) {
    w.str(p.name);
    w.fixed_bytes(p.model_cid.digest);
    w.fixed_bytes(p.model_sha256);
    encode_double(w, p.threshold);
  }
  w.str(safety.ensemble_rule);
  w.fixed_bytes(safety.evaluation_set_cid.digest);
  encode_double(w, safety.numerical_tolerance);
  // dp
  encode_double(w, dp.epsilon_per_round);
  encode_double(w, dp.delta_global);
  encode_double(w, dp.clipping_norm);
  encode_double(w, dp.noise_scale);
  w.str(dp.accountant);
  encode_double(w, dp.epsilon_budget_total);
  // admission
  w.str(admission.min_stake);
  w.boolean(admission.attestation_required);
  w.u32_be(admission.k_anonymity_threshold);
  w.u32_be(admission.deadline_submission_sec);
  w.u32_be(admission.deadline_aggregation_sec);
  // aggregation
  w.str(aggregation.robust_method);
  w.str(aggregation.robust_alpha);
  w.u32_be(aggregation.robust_theta_percentile);
  w.u32_be(aggregation.quantization_bits);
  w.str(aggregation.w_min);
  w.str(aggregation.w_max);
  // novelty economics
  w.str(novelty_econ.beta);
  w.str(novelty_econ.lambda_ema);
  w.u32_be(novelty_econ.basis_size);
  w.str(novelty_econ.basis_rotation);
  // timelock
  w.u64_be(timelock.propose_round);
  w.u64_be(timelock.activation_round);
  w.u64_be(timelock.t_lock);
  w.fixed_bytes(timelock.policy_cid.digest);
}

PolicyBundle PolicyBundle::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  PolicyBundle b;
  size_t n = r.list_count();
  for (size_t i = 0; i < n; ++i) {
    ProxyConfig p;
    p.name = r.str();
    r.fixed_bytes(p.model_cid.digest);
    r.fixed_bytes(p.model_sha256);
    p.threshold = decode_double(r);
    b.safety.proxy_configs.push_back(p);
  }
  b.safety.ensemble_rule = r.str();
  r.fixed_bytes(b.safety.evaluation_set_cid.digest);
  b.safety.numerical_tolerance = decode_double(r);
  b.dp.epsilon_per_round = decode_double(r);
  b.dp.delta_global = decode_double(r);
  b.dp.clipping_norm = decode_double(r);
  b.dp.noise_scale = decode_double(r);
  b.dp.accountant = r.str();
  b.dp.epsilon_budget_total = decode_double(r);
  b.admission.min_stake = r.str();
  b.admission.attestation_required = r.boolean();
  b.admission.k_anonymity_threshold = r.u32_be();
  b.admission.deadline_submission_sec = r.u32_be();
  b.admission.deadline_aggregation_sec = r.u32_be();
  b.aggregation.robust_method = r.str();
  b.aggregation.robust_alpha = r.str();
  b.aggregation.robust_theta_percentile = r.u32_be();
  b.aggregation.quantization_bits = r.u32_be();
  b.aggregation.w_min = r.str();
  b.aggregation.w_max = r.str();
  b.novelty_econ.beta = r.str();
  b.novelty_econ.lambda_ema = r.str();
  b.novelty_econ.basis_size = r.u32_be();
  b.novelty_econ.basis_rotation = r.str();
  b.timelock.propose_round = r.u64_be();
  b.timelock.activation_round = r.u64_be();
  b.timelock.t_lock = r.u64_be();
  r.fixed_bytes(b.timelock.policy_cid.digest);
  r.expect_end();
  return b;
}

Cid PolicyBundle::self_cid() const {
  // Content identity covers the five sub-bundles and the lock length; the
  // volatile proposal rounds live in the log record, so re-proposing an
  // identical bundle keeps its cid.
  PolicyBundle copy = *this;
  copy.timelock.propose_round = 0;
  copy.timelock.activation_round = 0;
  copy.timelock.policy_cid = Cid{};
  return cid_of(copy);
}

GovernancePhase phase_for_round(uint64_t round) {
  if (round < 500) return {PhaseIndex::kPhase0, 5};
  if (round < 2000) return {PhaseIndex::kPhase1, 10};
  return {PhaseIndex::kPhase2, 20};
}

uint64_t vote_weight(FixedAmount stake) {
  uint128_t units = stake.whole_units();
  if (units == 0) return 0;
  // Integer square root by Newton iteration.
  uint128_t x = units;
  uint128_t y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + units / x) / 2;
  }
  return static_cast<uint64_t>(x);
}

PolicyLog::PolicyLog(ContentStore& store, PolicyBundle genesis)
    : store_(store) {
  genesis.timelock.propose_round = 0;
  genesis.timelock.activation_round = 0;
  genesis.timelock.policy_cid = Cid{};
  Cid cid = store_.put(genesis);
  proposals_.push_back(ProposalRecord{cid, 0, 0, genesis.timelock.t_lock});
  activations_.push_back(ActivationRecord{cid, 0});
}

ProposalRecord PolicyLog::propose(PolicyBundle bundle, uint64_t current_round,
                                  uint64_t requested_activation_round) {
  GovernancePhase phase = phase_for_round(current_round);
  if (bundle.timelock.t_lock < phase.t_lock_min)
    throw LockPeriodError("t_lock " + std::to_string(bundle.timelock.t_lock) +
                          " below phase minimum " +
                          std::to_string(phase.t_lock_min));
  uint64_t earliest = current_round + bundle.timelock.t_lock;
  // A requested activation inside the lock window is raised to the earliest
  // permitted round rather than rejected.
  uint64_t activation = std::max(requested_activation_round, earliest);

  // Frozen in canonical zero form (the proposal record carries the live
  // rounds), so the store key equals the bundle's content identity.
  bundle.timelock.propose_round = 0;
  bundle.timelock.activation_round = 0;
  bundle.timelock.policy_cid = Cid{};
  Cid cid = store_.put(bundle);

  ProposalRecord rec{cid, current_round, activation, bundle.timelock.t_lock};
  proposals_.push_back(rec);
  return rec;
}

const ProposalRecord* PolicyLog::find_proposal(const Cid& policy_cid) const {
  // Later proposals shadow earlier re-proposals of the same bundle content.
  for (auto it = proposals_.rbegin(); it != proposals_.rend(); ++it) {
    if (it->policy_cid == policy_cid) return &*it;
  }
  return nullptr;
}

namespace {

void check_approval(const GovernancePhase& phase,
                    const ApprovalEvidence& approvals) {
  switch (phase.index) {
    case PhaseIndex::kPhase0: {
      if (!approvals.multisig) throw QuorumError("phase 0 requires multisig");
      std::set<uint32_t> distinct(approvals.multisig->signers.begin(),
                                  approvals.multisig->signers.end());
      for (uint32_t s : distinct) {
        if (s >= 5) throw QuorumError("unknown multisig operator index");
      }
      if (distinct.size() < 3)
        throw QuorumError("multisig requires 3 of 5 operators");
      return;
    }
    case PhaseIndex::kPhase1: {
      if (!approvals.council) throw QuorumError("phase 1 requires the council");
      std::set<uint32_t> distinct(approvals.council->voters.begin(),
                                  approvals.council->voters.end());
      for (uint32_t s : distinct) {
        if (s >= 9) throw QuorumError("unknown council seat");
      }
      if (distinct.size() < 5)
        throw QuorumError("council requires a majority of 9 seats");
      return;
    }
    case PhaseIndex::kPhase2: {
      if (!approvals.stake_vote) throw QuorumError("phase 2 requires a vote");
      const StakeVote& vote = *approvals.stake_vote;
      uint128_t participating = 0;
      uint64_t yes_weight = 0, no_weight = 0;
      for (const auto& b : vote.ballots) {
        participating += b.stake.raw();
        (b.yes ? yes_weight : no_weight) += vote_weight(b.stake);
      }
      // Quorum: at least 20% of eligible stake participates.
      if (participating * 5 < vote.total_eligible_stake.raw())
        throw QuorumError("vote below 20% stake quorum");
      uint64_t cast = yes_weight + no_weight;
      if (vote.constitutional) {
        // Supermajority: yes >= 66% of cast quadratic weight.
        if (cast == 0 || yes_weight * 100 < static_cast<uint64_t>(cast) * 66)
          throw QuorumError("constitutional change below 66% supermajority");
      } else if (yes_weight <= no_weight) {
        throw QuorumError("vote failed simple majority");
      }
      return;
    }
  }
  throw QuorumError("unknown governance phase");
}

}  // namespace

ActivationRecord PolicyLog::activate(const Cid& policy_cid,
                                     uint64_t current_round,
                                     const ApprovalEvidence& approvals) {
  const ProposalRecord* prop = find_proposal(policy_cid);
  if (prop == nullptr) throw Error("no proposal for policy " + policy_cid.text());
  if (current_round < prop->activation_round)
    throw RevertError("activation at round " + std::to_string(current_round) +
                      " precedes locked round " +
                      std::to_string(prop->activation_round));
  if (!activations_.empty() &&
      current_round < activations_.back().activated_at)
    throw Error("sequencer regression: activation in the past");
  check_approval(phase_for_round(current_round), approvals);

  ActivationRecord rec{policy_cid, current_round};
  activations_.push_back(rec);
  return rec;
}

Cid PolicyLog::active_policy_at(uint64_t round) const {
  for (auto it = activations_.rbegin(); it != activations_.rend(); ++it) {
    if (it->activated_at <= round) return it->policy_cid;
  }
  throw GenesisError("no policy active at round " + std::to_string(round));
}

PolicyBundle PolicyLog::active_bundle_at(uint64_t round) const {
  return store_.get<PolicyBundle>(active_policy_at(round));
}

EmergencyHalt PolicyLog::halt(std::optional<CohortId> cohort,
                              uint64_t current_round, uint64_t requested_rounds,
                              const Cid& justification) {
  if (requested_rounds == 0) throw Error("halt must cover at least one round");
  for (const auto& h : halts_) {
    bool same_scope = (!h.cohort && !cohort) ||
                      (h.cohort && cohort && h.cohort->value == cohort->value);
    if (same_scope && h.expiry_round > current_round)
      throw HaltLimitError("concurrent halt limit reached for scope");
  }
  EmergencyHalt h;
  h.cohort = cohort;
  h.start_round = current_round;
  h.expiry_round = current_round + std::min(requested_rounds, kMaxHaltRounds);
  h.justification = justification;
  halts_.push_back(h);
  return h;
}

void PolicyLog::expire_halts(uint64_t current_round) {
  halts_.erase(std::remove_if(halts_.begin(), halts_.end(),
                              [&](const EmergencyHalt& h) {
                                return h.expiry_round <= current_round;
                              }),
               halts_.end());
}

bool PolicyLog::halted(uint64_t round, std::optional<CohortId> cohort) const {
  for (const auto& h : halts_) {
    if (round < h.start_round || round >= h.expiry_round) continue;
    if (!h.cohort) return true;  // global
    if (cohort && cohort->value == h.cohort->value) return true;
  }
  return false;
}

}  // namespace pgot::policy
