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

#include "pgot/audit.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pgot/economy.hpp"
#include "pgot/errors.hpp"
#include "pgot/merkle.hpp"

namespace pgot::audit {

namespace {

// Fetches a frame, re-hashing it against the requested cid. A missing
// artifact throws AvailabilityError; a hash mismatch is a finding.
const Bytes& fetch(const PublicView& view, const Cid& cid,
                   const std::string& what, AuditReport& report, bool& ok) {
  const Bytes& frame = view.store->get_frame(cid);
  bool match = cid_of_frame(frame) == cid;
  report.checks.push_back(
      {what + "_integrity", match,
       match ? "content hash matches cid" : "content does not hash to cid"});
  ok = ok && match;
  return frame;
}

void check(AuditReport& report, const std::string& name, bool pass,
           const std::string& detail) {
  report.checks.push_back({name, pass, detail});
}

crypto::SchnorrPublicKey node_key(const ValidatorSet& validators,
                                  const NodeId& node) {
  const auto* entry = validators.find(node);
  if (entry == nullptr) throw ForgeryError("node not in validator set");
  return crypto::SchnorrPublicKey::deserialize(
      std::span<const uint8_t>(entry->pubkey.data(), entry->pubkey.size()));
}

size_t count_valid_endorsements(
    const PublicView& view, const ValidatorSet& validators,
    const std::vector<RoundAnchor::Endorsement>& endorsements,
    const Bytes& message, const std::set<NodeId>* restrict_to) {
  std::set<NodeId> seen;
  for (const auto& e : endorsements) {
    if (seen.count(e.node)) continue;
    if (restrict_to != nullptr && restrict_to->count(e.node) == 0) continue;
    const auto* entry = validators.find(e.node);
    if (entry == nullptr) continue;
    try {
      auto pub = crypto::SchnorrPublicKey::deserialize(std::span<const uint8_t>(
          entry->pubkey.data(), entry->pubkey.size()));
      auto sig = crypto::SchnorrSignature::deserialize(
          std::span<const uint8_t>(e.signature.data(), e.signature.size()));
      if (crypto::schnorr_verify(*view.params, pub, message, sig))
        seen.insert(e.node);
    } catch (const Error&) {
      continue;
    }
  }
  return seen.size();
}

FixedAmount parse_amount(const std::string& s) { return FixedAmount::parse(s); }

}  // namespace

void AuditReport::finalize() {
  verdict = !checks.empty() &&
            std::all_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return c.pass; });
}

std::string AuditReport::render_text() const {
  std::ostringstream os;
  os << "audit " << receipt_cid.text() << "\n";
  for (const auto& c : checks)
    os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": "
       << c.detail << "\n";
  os << "verdict: " << (verdict ? "PASS" : "FAIL") << "\n";
  return os.str();
}

void AuditReport::encode(CanonicalWriter& w) const {
  w.fixed_bytes(receipt_cid.digest);
  w.list_count(checks.size());
  for (const auto& c : checks) {
    w.str(c.name);
    w.boolean(c.pass);
    w.str(c.detail);
  }
  w.boolean(verdict);
}

void sample_payouts(const PublicView& view, const RoundAnchor& anchor,
                    const AggregateReceipt& receipt, size_t k,
                    AuditReport& report) {
  if (anchor.payout_contributors_cid.is_zero()) {
    // No surviving contributors were paid; the whole pool must be dust.
    check(report, "payout_vacuous",
          receipt.p_c == receipt.payout_dust_contributors,
          "empty payout set implies P_C fully recorded as dust");
    return;
  }
  bool ok = true;
  const Bytes& proof_frame =
      fetch(view, receipt.proof_cid, "proof", report, ok);
  agg::SumIntegrityProof proof =
      agg::SumIntegrityProof::decode_frame(proof_frame);
  const Bytes& meta_frame =
      fetch(view, proof.round_meta_cid, "round_meta", report, ok);
  RoundMeta meta = RoundMeta::decode_frame(meta_frame);
  const Bytes& payout_frame =
      fetch(view, anchor.payout_contributors_cid, "payout_set", report, ok);
  PayoutSet payouts = PayoutSet::decode_frame(payout_frame);
  const Bytes& weights_frame =
      fetch(view, meta.weight_set_cid, "weight_set", report, ok);
  WeightSet weights = WeightSet::decode_frame(weights_frame);
  if (!ok) return;

  // Recompute the full reward schedule from receipt economics and public
  // metadata, then compare the k sampled leaves.
  std::set<ContributorId> dropped(meta.dropped.begin(), meta.dropped.end());
  std::vector<econ::RewardInput> inputs;
  for (const auto& w : weights.entries) {
    if (dropped.count(w.pid)) continue;
    const RoundMeta::ReputationEntry* rep = nullptr;
    for (const auto& r : meta.reputations) {
      if (r.pid == w.pid) {
        rep = &r;
        break;
      }
    }
    if (rep == nullptr) {
      check(report, "payout_reputation_available", false,
            "admitted contributor missing reputation record");
      return;
    }
    inputs.push_back(econ::RewardInput{w.pid, Decimal::parse(rep->rho),
                                       w.weight.raw()});
  }

  FixedAmount p_c = parse_amount(receipt.p_c);
  econ::RewardBreakdown expected;
  try {
    expected = econ::contributor_rewards(
        p_c, inputs, Decimal::parse(receipt.r_base),
        Decimal::parse(receipt.beta), Decimal::parse(receipt.phi_t_ema));
  } catch (const Error& e) {
    check(report, "payout_recompute", false, e.what());
    return;
  }

  check(report, "novelty_pool_fields",
        expected.novelty_cap.exact_string() == receipt.novelty_cap &&
            expected.p_nov.exact_string() == receipt.p_nov &&
            expected.p_quality.exact_string() == receipt.p_quality,
        "novelty_cap / P_nov / P_quality recomputation");

  check(report, "payout_count", expected.rewards.size() == payouts.entries.size(),
        "payout leaf count matches admitted survivors");
  if (expected.rewards.size() != payouts.entries.size()) return;

  // Tree over the published payout set must match the receipt root.
  Hash32 recomputed_root{};
  if (!payouts.entries.empty()) recomputed_root = payouts.merkle_root();
  check(report, "payout_root",
        recomputed_root == receipt.payout_root_contributors,
        "payout set hashes to the receipt's payout_root_contributors");

  std::vector<Bytes> leaf_payloads;
  for (const auto& e : payouts.entries)
    leaf_payloads.push_back(PayoutSet::leaf_payload(e));
  merkle::MerkleTree tree = merkle::MerkleTree::build(leaf_payloads);

  size_t samples = std::min(k, expected.rewards.size());
  bool recompute_ok = true;
  bool inclusion_ok = true;
  // Deterministic sample: stride through the sorted leaves.
  size_t stride = std::max<size_t>(1, expected.rewards.size() / samples);
  size_t checked = 0;
  std::map<ContributorId, FixedAmount> expected_by_pid;
  for (const auto& r : expected.rewards) expected_by_pid[r.pid] = r.total;
  for (size_t i = 0; i < payouts.entries.size() && checked < samples;
       i += stride, ++checked) {
    const auto& leaf = payouts.entries[i];
    ContributorId pid;
    pid.bytes = leaf.id;
    auto it = expected_by_pid.find(pid);
    if (it == expected_by_pid.end() || !(it->second == leaf.amount)) {
      recompute_ok = false;
      continue;
    }
    auto proof_path = tree.prove(i);
    if (!merkle::verify(tree.root(), leaf_payloads[i], proof_path))
      inclusion_ok = false;
  }
  check(report, "payout_recompute", recompute_ok,
        "sampled rewards equal r_base*rho + quality + novelty shares");
  check(report, "payout_inclusion", inclusion_ok,
        "sampled leaves verify against the payout root");

  // Conservation: P_total == P_C + P_M + P_T + all dust, raw-exact, and the
  // paid leaves plus dust reproduce each class pool.
  FixedAmount p_total = parse_amount(receipt.p_total);
  FixedAmount p_m = parse_amount(receipt.p_m);
  FixedAmount p_t = parse_amount(receipt.p_t);
  FixedAmount alloc_dust = parse_amount(receipt.allocation_dust);
  bool alloc_ok =
      p_total.raw() == p_c.raw() + p_m.raw() + p_t.raw() + alloc_dust.raw();

  uint128_t paid_contributors = 0;
  for (const auto& e : payouts.entries) paid_contributors += e.amount.raw();
  FixedAmount contrib_dust = parse_amount(receipt.payout_dust_contributors);
  bool contrib_ok = p_c.raw() == paid_contributors + contrib_dust.raw();

  bool committee_ok = true;
  {
    bool ok2 = true;
    const Bytes& cp_frame =
        fetch(view, anchor.payout_committee_cid, "committee_payout_set",
              report, ok2);
    if (ok2) {
      PayoutSet committee_payouts = PayoutSet::decode_frame(cp_frame);
      uint128_t paid_committee = 0;
      for (const auto& e : committee_payouts.entries)
        paid_committee += e.amount.raw();
      FixedAmount committee_dust = parse_amount(receipt.payout_dust_committee);
      committee_ok = p_m.raw() == paid_committee + committee_dust.raw();
      committee_ok =
          committee_ok &&
          committee_payouts.merkle_root() == receipt.payout_root_committee;
    } else {
      committee_ok = false;
    }
  }
  check(report, "conservation", alloc_ok && contrib_ok && committee_ok,
        "P_total == P_C + P_M + P_T + dust with every class pool exact");
}

void verify_failed_round(const PublicView& view, const RoundAnchor& anchor,
                         const AggregateReceipt& receipt,
                         AuditReport& report) {
  check(report, "failed_zero_pools",
        receipt.p_c == "0.0" && receipt.p_m == "0.0" && receipt.p_t == "0.0",
        "P_C = P_M = P_T = 0 on a failed round");

  bool ok = true;
  const Bytes& refund_frame =
      fetch(view, anchor.refund_set_cid, "refund_set", report, ok);
  if (!ok) return;
  RefundSet refund = RefundSet::decode_frame(refund_frame);

  check(report, "refund_root", refund.merkle_root() == receipt.refund_root,
        "refund set hashes to the receipt's refund_root");

  uint128_t refunded = 0;
  for (const auto& e : refund.entries) refunded += e.amount.raw();
  FixedAmount p_receivers = parse_amount(receipt.p_receivers);
  FixedAmount refund_dust = parse_amount(receipt.refund_dust);
  check(report, "refund_totality",
        refunded + refund_dust.raw() == p_receivers.raw(),
        "every receiver escrow refunded in full");

  // Bootstrap subsidy returns to the treasury untouched.
  uint64_t round = receipt.round_id;
  uint128_t expected_bootstrap =
      round < 1000
          ? static_cast<uint128_t>(1000 - round) * 50 * FixedAmount::kScale /
                1000
          : 0;
  check(report, "bootstrap_reclaimed",
        parse_amount(receipt.bootstrap_reclaimed).raw() == expected_bootstrap &&
            parse_amount(receipt.p_bootstrap).raw() == expected_bootstrap,
        "bootstrap subsidy reclaimed per the decline schedule");
}

AuditReport verify_receipt(const PublicView& view, const RoundAnchor& anchor) {
  if (!view.store || !view.policy_log || !view.params)
    throw ConfigError("audit view incomplete");
  AuditReport report;
  report.receipt_cid = anchor.receipt_cid;
  bool ok = true;

  const Bytes& receipt_frame =
      fetch(view, anchor.receipt_cid, "receipt", report, ok);
  AggregateReceipt receipt = AggregateReceipt::decode_frame(receipt_frame);

  const Bytes& validators_frame =
      fetch(view, view.validator_set_cid, "validator_set", report, ok);
  ValidatorSet validators = ValidatorSet::decode_frame(validators_frame);

  // Finality: enough validators endorsed this exact anchor body.
  uint32_t f = receipt.committee_m > 0 ? (receipt.committee_m - 1) / 3 : 0;
  size_t valid_endorsements = count_valid_endorsements(
      view, validators, anchor.endorsements, anchor.body_bytes(), nullptr);
  check(report, "anchor_endorsements", valid_endorsements >= 2 * f + 1,
        std::to_string(valid_endorsements) + " valid endorsements, need " +
            std::to_string(2 * f + 1));

  // Policy binding and lock-period enforcement.
  bool policy_bound = false;
  try {
    policy_bound =
        view.policy_log->active_policy_at(receipt.round_id) ==
        receipt.policy_cid;
  } catch (const GenesisError&) {
    policy_bound = false;
  }
  check(report, "policy_binding", policy_bound,
        "receipt.policy_cid equals the policy active at the round");

  const Bytes& bundle_frame =
      fetch(view, receipt.policy_cid, "policy_bundle", report, ok);
  policy::PolicyBundle bundle = policy::PolicyBundle::decode_frame(bundle_frame);
  check(report, "policy_self_cid",
        bundle.self_cid() == receipt.policy_cid,
        "bundle content binds to its own cid");
  {
    const auto* prop = view.policy_log->find_proposal(receipt.policy_cid);
    bool lock_ok = prop != nullptr;
    if (prop != nullptr) {
      bool genesis = prop->propose_round == 0 && prop->activation_round == 0;
      if (!genesis) {
        lock_ok =
            prop->activation_round >= prop->propose_round + prop->t_lock &&
            prop->t_lock >=
                policy::phase_for_round(prop->propose_round).t_lock_min &&
            prop->t_lock == bundle.timelock.t_lock;
        // the activation that bound this policy must respect the lock
        bool saw_activation = false;
        for (const auto& act : view.policy_log->activations()) {
          if (act.policy_cid == receipt.policy_cid &&
              act.activated_at <= receipt.round_id) {
            saw_activation = true;
            if (act.activated_at < prop->activation_round) lock_ok = false;
          }
        }
        if (!saw_activation) lock_ok = false;
      }
    }
    check(report, "lock_period", lock_ok,
          "activation_round - propose_round >= T_lock at the phase minimum");
  }

  if (!receipt.accepted()) {
    verify_failed_round(view, anchor, receipt, report);
    report.finalize();
    return report;
  }

  // ----- Five-step SumIntegrityProof verification ---------------------------
  const Bytes& proof_frame =
      fetch(view, receipt.proof_cid, "proof", report, ok);
  agg::SumIntegrityProof proof =
      agg::SumIntegrityProof::decode_frame(proof_frame);
  const Bytes& meta_frame =
      fetch(view, proof.round_meta_cid, "round_meta", report, ok);
  RoundMeta meta = RoundMeta::decode_frame(meta_frame);
  std::set<NodeId> committee(meta.committee.begin(), meta.committee.end());

  // Step 1: node-signed local commitments present from committee members.
  uint32_t mf = meta.byzantine_f;
  bool step1 = proof.node_commitments.size() >= 2 * mf + 1;
  {
    std::set<NodeId> distinct;
    for (const auto& e : proof.node_commitments) {
      if (!committee.count(e.node)) step1 = false;
      if (!distinct.insert(e.node).second) step1 = false;
    }
  }
  check(report, "proof_step1_commitments", step1,
        "at least 2f+1 distinct committee commitments");

  // Step 2: signatures and commitment validity.
  bool step2 = true;
  std::vector<crypto::Commitment> node_commitments;
  for (const auto& e : proof.node_commitments) {
    try {
      crypto::Commitment c = crypto::Commitment::deserialize(
          std::span<const uint8_t>(e.commitment.data(), e.commitment.size()));
      auto pub = node_key(validators, e.node);
      auto sig = crypto::SchnorrSignature::deserialize(
          std::span<const uint8_t>(e.signature.data(), e.signature.size()));
      Bytes msg = agg::local_sum_message(RoundId{receipt.round_id}, c);
      if (!crypto::schnorr_verify(*view.params, pub, msg, sig)) step2 = false;
      node_commitments.push_back(c);
    } catch (const Error&) {
      step2 = false;
    }
  }
  check(report, "proof_step2_signatures", step2,
        "node signatures verify over (round, commitment)");

  // Step 3: homomorphic combination, opened over the masked sum artifact.
  bool step3 = false;
  try {
    const Bytes& sum_frame =
        fetch(view, proof.masked_sum_cid, "masked_sum", report, ok);
    MaskedVector masked_sum = MaskedVector::decode_frame(sum_frame);
    crypto::Commitment combined = crypto::Commitment::deserialize(
        std::span<const uint8_t>(proof.combined_commitment.data(),
                                 proof.combined_commitment.size()));
    if (!node_commitments.empty()) {
      crypto::Commitment product = crypto::pedersen_combine(node_commitments);
      crypto::Commitment opened = crypto::pedersen_commit(
          *view.params, masked_sum.values,
          crypto::Fe::from_u128(proof.combined_blinding));
      step3 = product == combined && opened == combined;
    }
  } catch (const AvailabilityError&) {
    throw;
  } catch (const Error&) {
    step3 = false;
  }
  check(report, "proof_step3_combination", step3,
        "Com(S) equals the product of node commitments and opens over S");

  // Step 4: reconstructed dropout set binds to the published set and policy.
  bool step4 = false;
  try {
    const Bytes& drop_frame = fetch(view, proof.reconstructed_set_commitment,
                                    "dropout_set", report, ok);
    DropoutSet drops = DropoutSet::decode_frame(drop_frame);
    step4 = drops.dropped == meta.dropped &&
            cid_of(drops) == proof.reconstructed_set_commitment &&
            drops.round.value == receipt.round_id;
    std::set<ContributorId> admitted(meta.admitted.begin(),
                                     meta.admitted.end());
    for (const auto& pid : drops.dropped) {
      if (!admitted.count(pid)) step4 = false;
    }
  } catch (const AvailabilityError&) {
    throw;
  } catch (const Error&) {
    step4 = false;
  }
  check(report, "proof_step4_dropouts", step4,
        "reconstructed-set commitment matches the published dropout set");

  // Step 5: Byzantine method selection matches the bound policy.
  bool step5 = false;
  try {
    agg::RobustMethod applied =
        static_cast<agg::RobustMethod>(proof.robust_method_applied);
    step5 = applied == agg::RobustMethod::kNone ||
            agg::robust_method_name(applied) ==
                bundle.aggregation.robust_method;
    if (proof.proof_path !=
        static_cast<uint8_t>(agg::ProofPath::kHomomorphic))
      step5 = false;  // zk path is declared but not generatable
  } catch (const Error&) {
    step5 = false;
  }
  check(report, "proof_step5_method", step5,
        "applied robust method is none or the policy's configured fallback");

  // Proof finality and binding.
  size_t proof_endorsements = count_valid_endorsements(
      view, validators, proof.endorsements, proof.body_bytes(), &committee);
  check(report, "proof_endorsements", proof_endorsements >= 2 * mf + 1,
        std::to_string(proof_endorsements) + " committee endorsements, need " +
            std::to_string(2 * mf + 1));
  check(report, "proof_binding",
        proof.policy_cid == receipt.policy_cid &&
            proof.round.value == receipt.round_id &&
            meta.round.value == receipt.round_id,
        "proof binds the receipt's policy and round");

  // Weights commitment.
  bool weights_ok = false;
  try {
    const Bytes& weights_frame =
        fetch(view, meta.weight_set_cid, "weight_set", report, ok);
    WeightSet weights = WeightSet::decode_frame(weights_frame);
    weights_ok = weights.merkle_root() == proof.weights_root;
    std::vector<ContributorId> pids;
    for (const auto& e : weights.entries) pids.push_back(e.pid);
    if (pids != meta.admitted) weights_ok = false;
    FixedAmount w_min = FixedAmount::parse(bundle.aggregation.w_min);
    FixedAmount w_max = FixedAmount::parse(bundle.aggregation.w_max);
    for (const auto& e : weights.entries) {
      if (e.weight < w_min || w_max < e.weight) weights_ok = false;
    }
  } catch (const AvailabilityError&) {
    throw;
  } catch (const Error&) {
    weights_ok = false;
  }
  check(report, "weights_root", weights_ok,
        "weight set hashes to weights_root and respects policy bounds");

  // Pool formation from public escrows.
  {
    uint128_t escrow_sum = 0;
    for (const auto& e : meta.escrows) escrow_sum += e.amount.raw();
    uint64_t round = receipt.round_id;
    uint128_t expected_bootstrap =
        round < 1000
            ? static_cast<uint128_t>(1000 - round) * 50 * FixedAmount::kScale /
                  1000
            : 0;
    bool pool_ok =
        parse_amount(receipt.p_receivers).raw() == escrow_sum &&
        parse_amount(receipt.p_bootstrap).raw() == expected_bootstrap &&
        parse_amount(receipt.p_total).raw() == escrow_sum + expected_bootstrap;
    check(report, "pool_formation", pool_ok,
          "pool fields recompute from escrows and the subsidy schedule");
  }

  sample_payouts(view, anchor, receipt, 100, report);

  report.finalize();
  return report;
}

}  // namespace pgot::audit
