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

#include "pgot/round.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pgot/errors.hpp"

namespace pgot::round {

std::string phase_name(Phase p) {
  switch (p) {
    case Phase::kSetup:
      return "Setup";
    case Phase::kTraining:
      return "Training";
    case Phase::kAggregation:
      return "Aggregation";
    case Phase::kPublication:
      return "Publication";
    case Phase::kAccepted:
      return "Accepted";
    case Phase::kFailed:
      return "Failed";
  }
  return "?";
}

void StateMachine::advance(Phase next) {
  bool legal = false;
  switch (phase_) {
    case Phase::kSetup:
      legal = next == Phase::kTraining || next == Phase::kFailed;
      break;
    case Phase::kTraining:
      legal = next == Phase::kAggregation || next == Phase::kFailed;
      break;
    case Phase::kAggregation:
      legal = next == Phase::kPublication || next == Phase::kFailed;
      break;
    case Phase::kPublication:
      legal = next == Phase::kAccepted || next == Phase::kFailed;
      break;
    case Phase::kAccepted:
    case Phase::kFailed:
      legal = false;
      break;
  }
  if (!legal)
    throw Error("illegal round transition " + phase_name(phase_) + " -> " +
                phase_name(next));
  phase_ = next;
  trace_.push_back(next);
}

PhaseBudgets phase_budgets(const policy::AdmissionBundle& admission) {
  PhaseBudgets b;
  b.training = admission.deadline_submission_sec / 60;
  b.aggregation = admission.deadline_aggregation_sec / 60;
  return b;
}

std::string admit_reason_name(AdmitReason r) {
  switch (r) {
    case AdmitReason::kAdmitted:
      return "admitted";
    case AdmitReason::kStakeTooLow:
      return "stake_too_low";
    case AdmitReason::kAttestationMissing:
      return "attestation_missing";
    case AdmitReason::kCohortTooSmall:
      return "cohort_too_small";
    case AdmitReason::kBudgetExhausted:
      return "budget_exhausted";
  }
  return "?";
}

std::vector<AdmissionDecision> admit(const std::vector<Candidate>& candidates,
                                     const policy::PolicyBundle& bundle) {
  FixedAmount min_stake = FixedAmount::parse(bundle.admission.min_stake);
  agg::DpConfig dp_cfg;
  dp_cfg.noise_scale = bundle.dp.noise_scale;
  dp_cfg.delta_global = bundle.dp.delta_global;
  dp_cfg.epsilon_budget_total = bundle.dp.epsilon_budget_total;

  std::vector<AdmissionDecision> out(candidates.size());
  std::map<uint8_t, size_t> cohort_sizes;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    out[i].pid = c.pid;
    if (c.stake < min_stake) {
      out[i].reason = AdmitReason::kStakeTooLow;
      continue;
    }
    if (bundle.admission.attestation_required && !c.attested) {
      out[i].reason = AdmitReason::kAttestationMissing;
      continue;
    }
    if (bundle.dp.noise_scale > 0.0) {
      try {
        agg::account_privacy(dp_cfg, c.rounds_participated + 1);
      } catch (const BudgetError&) {
        out[i].reason = AdmitReason::kBudgetExhausted;
        continue;
      }
    }
    cohort_sizes[c.cohort.value] += 1;
  }
  // k-anonymity over the cohorts that survived the per-candidate checks.
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (out[i].reason != AdmitReason::kAdmitted) continue;
    if (cohort_sizes[candidates[i].cohort.value] <
        bundle.admission.k_anonymity_threshold)
      out[i].reason = AdmitReason::kCohortTooSmall;
  }
  return out;
}

SafetyEvaluation safety_gate(const std::vector<ProxyScore>& scores,
                             const policy::SafetyBundle& bundle) {
  SafetyEvaluation eval;
  eval.rule = bundle.ensemble_rule;
  size_t passed_count = 0;
  bool any_exceeds_hard = false;
  for (const auto& cfg : bundle.proxy_configs) {
    const ProxyScore* score = nullptr;
    for (const auto& s : scores) {
      if (s.name == cfg.name) {
        score = &s;
        break;
      }
    }
    if (score == nullptr)
      throw EvaluationError("no score for safety proxy '" + cfg.name + "'");
    SafetyEvaluation::Entry e;
    e.name = cfg.name;
    e.baseline = score->baseline;
    e.candidate = score->candidate;
    e.delta = score->candidate - score->baseline;
    e.threshold = cfg.threshold;
    // 1e-12 grace keeps the boundary case stable against float dust; the
    // governing tolerance is the bundle's, three orders larger by default.
    e.passed = e.delta <= cfg.threshold + bundle.numerical_tolerance + 1e-12;
    if (e.delta > cfg.threshold * 1.01) any_exceeds_hard = true;
    if (e.passed) ++passed_count;
    eval.entries.push_back(e);
  }
  if (bundle.ensemble_rule == "all_pass") {
    eval.passed = passed_count == eval.entries.size();
  } else if (bundle.ensemble_rule ==
             "majority_pass_and_no_exceed_threshold_plus_1pct") {
    eval.passed =
        passed_count * 2 > eval.entries.size() && !any_exceeds_hard;
  } else {
    throw EvaluationError("unknown ensemble rule: " + bundle.ensemble_rule);
  }
  return eval;
}

std::vector<NodeId> elect_committee(const std::vector<NodeId>& validators,
                                    RoundId round, const Cid& prior_receipt,
                                    size_t m) {
  if (validators.size() < m)
    throw CommitteeError("need " + std::to_string(m) + " validators, have " +
                         std::to_string(validators.size()));
  CanonicalWriter w;
  w.str("pgot/committee-election");
  w.round_id(round);
  w.fixed_bytes(prior_receipt.digest);
  crypto::DeterministicRng rng(sha256(w.bytes()));

  std::vector<NodeId> pool(validators);
  std::sort(pool.begin(), pool.end());
  // Fisher-Yates prefix of size m.
  for (size_t i = 0; i < m; ++i) {
    size_t j = i + static_cast<size_t>(rng.next_below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  return pool;
}

namespace {

using crypto::Fe;
using crypto::FieldVector;

// Real-valued updates quantize at the monetary scale; node-side weighting
// adds another 2^16, so aggregates lift back at 2^-32.
Fe quantize_coord(double x) {
  long long s = std::llround(x * 65536.0);
  return Fe::from_signed(s);
}

FieldVector quantize_update(const std::vector<double>& u) {
  FieldVector v(u.size());
  for (size_t i = 0; i < u.size(); ++i) v[i] = quantize_coord(u[i]);
  return v;
}

std::vector<double> lift_aggregate(const FieldVector& v) {
  std::vector<double> out(v.size());
  const double scale = 1.0 / 4294967296.0;  // 2^-32
  for (size_t i = 0; i < v.size(); ++i)
    out[i] = static_cast<double>(v[i].signed_lift()) * scale;
  return out;
}

std::string phi_to_string(double phi) {
  // 12 fractional decimal digits, then exact decimal handling downstream.
  long long units = std::llround(phi * 1e12);
  if (units < 0) units = 0;
  Decimal d = Decimal::parse(std::to_string(units))
                  .mul(Decimal::parse("0.000000000001"));
  return d.exact_string();
}

std::string signed_double_string(double v) {
  bool neg = v < 0.0;
  std::string s = phi_to_string(std::abs(v));
  return neg ? "-" + s : s;
}

}  // namespace

RoundResult run_round(RoundEnvironment& env, RoundRequest req) {
  if (!env.params || !env.store || !env.ledger || !env.policy_log)
    throw ConfigError("round environment incomplete");

  StateMachine sm;
  RoundResult result;
  const uint64_t round_no = req.round.value;

  // ----- Setup -------------------------------------------------------------
  env.policy_log->expire_halts(round_no);
  Cid policy_cid = env.policy_log->active_policy_at(round_no);
  policy::PolicyBundle bundle = env.store->get<policy::PolicyBundle>(policy_cid);
  result.budgets = phase_budgets(bundle.admission);

  econ::RoundPool pool;
  {
    std::vector<FixedAmount> escrow_amounts;
    for (const auto& e : req.receiver_escrows)
      escrow_amounts.push_back(e.amount);
    pool = econ::form_pool(escrow_amounts, round_no, env.prev_pool_ema);
  }

  econ::PoolAlphas alphas;
  alphas.alpha_c = Decimal::parse(env.alpha_c_str);
  alphas.alpha_m = Decimal::parse(env.alpha_m_str);
  alphas.alpha_t = Decimal::parse(env.alpha_t_str);

  AggregateReceipt receipt;
  receipt.receipt_id = round_no;
  receipt.round_id = round_no;
  receipt.p_receivers = Decimal::from_fixed(pool.p_receivers).exact_string();
  receipt.p_bootstrap = Decimal::from_fixed(pool.p_bootstrap).exact_string();
  receipt.p_total = Decimal::from_fixed(pool.p_total).exact_string();
  receipt.bootstrap_active = pool.bootstrap_active;
  receipt.ema_value = Decimal::from_fixed(pool.ema_value).exact_string();
  receipt.alpha_c = env.alpha_c_str;
  receipt.alpha_m = env.alpha_m_str;
  receipt.alpha_t = env.alpha_t_str;
  receipt.r_base = env.r_base_str;
  receipt.beta = bundle.novelty_econ.beta;
  receipt.policy_cid = policy_cid;
  receipt.phi_t_ema = phi_to_string(env.phi_ema);
  receipt.committee_m = env.committee_m;

  Cid payout_contributors_cid, payout_committee_cid, refund_set_cid;
  auto publish = [&](const std::string& status) -> RoundResult& {
    receipt.round_status = status;
    result.receipt = receipt;
    result.receipt_cid = env.store->put(receipt);

    // Anchor endorsed by every key-holding validator (the committee plus
    // bystanders); failures during Setup still finalize this way.
    result.anchor.round = req.round;
    result.anchor.receipt_cid = result.receipt_cid;
    result.anchor.payout_contributors_cid = payout_contributors_cid;
    result.anchor.payout_committee_cid = payout_committee_cid;
    result.anchor.refund_set_cid = refund_set_cid;
    Bytes msg = result.anchor.body_bytes();
    for (const auto& v : env.validators.entries) {
      auto it = env.node_keys.find(v.id);
      if (it == env.node_keys.end()) continue;
      RoundAnchor::Endorsement e;
      e.node = v.id;
      e.signature =
          crypto::schnorr_sign(*env.params, it->second.secret, msg).serialize();
      result.anchor.endorsements.push_back(e);
    }
    env.store->put(result.anchor);
    env.prior_receipt_cid = result.receipt_cid;
    env.prev_pool_ema = pool.ema_value;
    result.trace = sm.trace();
    result.phi_ema = env.phi_ema;
    return result;
  };

  auto publish_failed = [&](const std::string& reason) -> RoundResult& {
    // Failed rounds refund every escrow and zero the pool splits.
    econ::RefundResult refund =
        econ::refunds(req.round, req.receiver_escrows, pool.p_bootstrap);
    refund_set_cid = env.store->put(refund.set);
    receipt.p_c = "0.0";
    receipt.p_m = "0.0";
    receipt.p_t = "0.0";
    receipt.refund_root = refund.refund_root;
    receipt.refund_dust =
        Decimal::from_fixed(refund.refund_dust).exact_string();
    receipt.bootstrap_reclaimed =
        Decimal::from_fixed(refund.bootstrap_reclaimed).exact_string();
    sm.advance(Phase::kFailed);
    return publish("Failed(" + reason + ")");
  };

  if (env.policy_log->halted(round_no, req.cohort)) {
    return publish_failed("AutoExpired");
  }

  std::vector<NodeId> validator_ids;
  for (const auto& v : env.validators.entries) validator_ids.push_back(v.id);
  std::vector<NodeId> committee = elect_committee(
      validator_ids, req.round, env.prior_receipt_cid, env.committee_m);
  const uint32_t m = env.committee_m;
  const uint32_t f = (m - 1) / 3;
  const uint32_t t = (m + 1) / 2;  // ceil(M/2)

  result.admissions = admit(req.candidates, bundle);
  std::vector<const Candidate*> admitted;
  for (size_t i = 0; i < req.candidates.size(); ++i) {
    if (result.admissions[i].admitted())
      admitted.push_back(&req.candidates[i]);
  }
  std::sort(admitted.begin(), admitted.end(),
            [](const Candidate* a, const Candidate* b) { return a->pid < b->pid; });
  for (const auto* c : admitted) result.admitted.push_back(c->pid);
  receipt.n_admitted = admitted.size();
  if (admitted.empty()) {
    // Nothing to aggregate: the round cannot proceed past Setup.
    return publish_failed("AggregationError");
  }

  // RoundRegistry setup write: policy binding and committee for this round.
  auto committee_approvals = [&](const Bytes& msg) {
    std::vector<ledger::Approval> approvals;
    for (const auto& node : committee) {
      auto it = env.node_keys.find(node);
      if (it == env.node_keys.end()) continue;
      approvals.push_back(ledger::Approval{
          node,
          crypto::schnorr_sign(*env.params, it->second.secret, msg).serialize()});
    }
    return approvals;
  };
  auto shared_put = [&](ledger::SharedKind kind, const Cid& payload) {
    Bytes msg = ledger::Ledger::shared_write_message(
        kind, env.ledger->shared(kind).version + 1, payload);
    env.ledger->shared_write(kind, payload, committee_approvals(msg));
  };
  {
    CanonicalWriter w;
    w.round_id(req.round);
    w.fixed_bytes(policy_cid.digest);
    for (const auto& n : committee) w.node_id(n);
    Blob setup_blob{w.take()};
    shared_put(ledger::SharedKind::kRoundRegistry, env.store->put(setup_blob));
  }

  sm.advance(Phase::kTraining);

  // ----- Training (synthetic) + masking ------------------------------------
  agg::DpConfig dp_cfg;
  dp_cfg.epsilon_per_round = bundle.dp.epsilon_per_round;
  dp_cfg.delta_global = bundle.dp.delta_global;
  dp_cfg.clipping_norm = bundle.dp.clipping_norm;
  dp_cfg.noise_scale = bundle.dp.noise_scale;
  dp_cfg.epsilon_budget_total = bundle.dp.epsilon_budget_total;

  const size_t dim = admitted.empty() ? 0 : admitted.front()->update.size();
  std::map<ContributorId, FieldVector> quantized;
  for (const auto* c : admitted) {
    if (c->update.size() != dim)
      throw DimensionError("inconsistent update dimensions");
    auto rng_i = req.rng.derive("dp-noise", std::span<const uint8_t>(
                                                c->pid.bytes.data(), 32));
    quantized[c->pid] =
        quantize_update(agg::clip_and_noise(c->update, dp_cfg, rng_i));
  }

  // Dropouts leave after masks are fixed but before submitting.
  std::set<ContributorId> dropped_set(req.adversary.forced_dropouts.begin(),
                                      req.adversary.forced_dropouts.end());
  if (req.adversary.dropout_rate > 0.0) {
    auto rng_d = req.rng.derive("dropouts");
    for (const auto* c : admitted) {
      if (rng_d.next_unit() <= req.adversary.dropout_rate)
        dropped_set.insert(c->pid);
    }
    // Documented dropout tolerance is t-1 per round; trim the random set
    // to stay inside it.
    while (dropped_set.size() >= t) dropped_set.erase(*dropped_set.rbegin());
  }

  std::map<ContributorId, FieldVector> masked = quantized;
  std::map<ContributorId, FixedAmount> weight_of;
  for (const auto* c : admitted) weight_of[c->pid] = c->weight;

  std::vector<agg::PairShares> dropout_shares;
  for (size_t i = 0; i < admitted.size(); ++i) {
    for (size_t j = i + 1; j < admitted.size(); ++j) {
      const ContributorId& a = admitted[i]->pid;
      const ContributorId& b = admitted[j]->pid;
      auto rng_pair = req.rng.derive("pair-seed",
                                     std::span<const uint8_t>(a.bytes.data(), 32))
                          .derive("with", std::span<const uint8_t>(
                                              b.bytes.data(), 32));
      Hash32 seed_bytes = rng_pair.next_hash();
      crypto::MaskSeed seed = crypto::MaskSeed::make(a, b, seed_bytes);

      bool a_dropped = dropped_set.count(a) > 0;
      bool b_dropped = dropped_set.count(b) > 0;
      if (a_dropped && b_dropped) continue;  // neither submission arrives

      if (!a_dropped && !b_dropped) {
        FieldVector mask = crypto::expand_mask(seed.seed, dim);
        Fe wa_inv = Fe::from_u128(weight_of[a].raw()).inverse();
        Fe wb_inv = Fe::from_u128(weight_of[b].raw()).inverse();
        Fe sa = seed.sign_for(a) > 0 ? wa_inv : wa_inv.neg();
        Fe sb = seed.sign_for(b) > 0 ? wb_inv : wb_inv.neg();
        crypto::fv_add_scaled_inplace(masked[a], mask, sa);
        crypto::fv_add_scaled_inplace(masked[b], mask, sb);
      } else {
        // One side dropped: the survivor still carries the mask; the
        // committee reconstructs the pair seed from Shamir shares.
        const ContributorId& survivor = a_dropped ? b : a;
        const ContributorId& gone = a_dropped ? a : b;
        FieldVector mask = crypto::expand_mask(seed.seed, dim);
        Fe w_inv = Fe::from_u128(weight_of[survivor].raw()).inverse();
        Fe s = seed.sign_for(survivor) > 0 ? w_inv : w_inv.neg();
        crypto::fv_add_scaled_inplace(masked[survivor], mask, s);

        auto rng_shares = rng_pair.derive("shamir");
        auto shares = crypto::shamir_split(seed.seed, t, m, rng_shares);
        for (size_t k = 0; k < shares.size(); ++k)
          shares[k].holder = committee[k % committee.size()];
        if (req.adversary.suppress_dropout_shares) shares.resize(t - 1);
        dropout_shares.push_back(agg::PairShares{survivor, gone, shares});
      }
    }
  }
  result.dropped.assign(dropped_set.begin(), dropped_set.end());

  sm.advance(Phase::kAggregation);

  // ----- Committee aggregation ---------------------------------------------
  std::vector<agg::MaskedUpdate> survivors;
  for (const auto* c : admitted) {
    if (dropped_set.count(c->pid)) continue;
    agg::MaskedUpdate u;
    u.contributor = c->pid;
    u.vector = masked[c->pid];
    u.weight = c->weight;
    u.cid = env.store->put(MaskedVector{req.round, u.vector});
    survivors.push_back(std::move(u));
  }

  agg::WeightBounds bounds;
  bounds.w_min = FixedAmount::parse(bundle.aggregation.w_min);
  bounds.w_max = FixedAmount::parse(bundle.aggregation.w_max);

  // Deterministic partition: survivors round-robin over committee order.
  std::vector<std::vector<agg::MaskedUpdate>> assignment(m);
  std::vector<FieldVector> plaintext_partials(m, crypto::fv_zero(dim));
  for (size_t i = 0; i < survivors.size(); ++i) {
    assignment[i % m].push_back(survivors[i]);
    crypto::fv_add_scaled_inplace(
        plaintext_partials[i % m], quantized[survivors[i].contributor],
        Fe::from_u128(survivors[i].weight.raw()));
  }

  uint32_t corrupt = req.adversary.byzantine_corrupt_nodes;
  uint32_t withhold = req.adversary.byzantine_withhold_nodes;
  if (corrupt + withhold >= m)
    throw ConfigError("adversary cannot control the whole committee");
  std::vector<agg::NodeLocalSum> node_sums;
  std::vector<std::pair<NodeId, const crypto::SchnorrKeyPair*>> endorsers;

  RoundResult failed_result;
  try {
    for (uint32_t j = 0; j < m; ++j) {
      const NodeId& node = committee[j];
      bool withholds = j >= m - withhold;
      bool corrupts = !withholds && j >= m - withhold - corrupt;
      if (withholds) {
        // Liveness failure: no sum, no endorsement, stake slashed 10%.
        auto stake_it = env.node_stakes.find(node);
        if (stake_it != env.node_stakes.end()) {
          econ::SlashEvent ev = econ::slash(node, stake_it->second,
                                            econ::SlashFault::kLivenessFailure);
          stake_it->second = stake_it->second.sub(ev.amount);
          result.slashes.push_back(ev);
        }
        continue;
      }
      auto rng_node = req.rng.derive("node", std::span<const uint8_t>(
                                                 node.bytes.data(), 32));
      agg::NodeLocalSum ns;
      if (corrupts) {
        // A Byzantine node that lies consistently: perturbs its partial sum
        // and commits to the perturbed value.
        FieldVector sum = crypto::fv_zero(dim);
        for (const auto& u : assignment[j])
          crypto::fv_add_scaled_inplace(sum, u.vector,
                                        Fe::from_u128(u.weight.raw()));
        auto rng_adv = rng_node.derive("perturbation");
        const double magnitude = req.adversary.corruption_magnitude;
        for (size_t c = 0; c < dim; ++c) {
          double noise = (rng_adv.next_unit() * 2.0 - 1.0) * magnitude;
          Fe p = Fe::from_signed(
              static_cast<int128_t>(std::llround(noise * 4294967296.0)));
          sum[c] = sum[c] + p;
          plaintext_partials[j][c] = plaintext_partials[j][c] + p;
        }
        ns.node = node;
        ns.blinding = rng_node.next_fe();
        ns.commitment = crypto::pedersen_commit(*env.params, sum, ns.blinding);
        ns.sum = std::move(sum);
        ns.signature = crypto::schnorr_sign(
                           *env.params, env.node_keys.at(node).secret,
                           agg::local_sum_message(req.round, ns.commitment))
                           .serialize();
      } else {
        ns = agg::local_sum(node, env.node_keys.at(node), req.round,
                            assignment[j], dim, bounds, *env.params, rng_node);
      }
      node_sums.push_back(std::move(ns));
      endorsers.emplace_back(node, &env.node_keys.at(node));
    }

    // Dropout reconstruction from the shares of responding nodes only.
    std::set<NodeId> withholding;
    for (uint32_t j = m - withhold; j < m; ++j) withholding.insert(committee[j]);
    for (auto& pair : dropout_shares) {
      std::erase_if(pair.shares, [&](const crypto::ShamirShare& s) {
        return withholding.count(s.holder) > 0;
      });
    }
    agg::DropoutResult dropout = agg::reconstruct_dropouts(
        req.round, result.dropped, dropout_shares, dim);
    env.store->put(dropout.dropout_set);

    // Masked total and robust filtering (the filter sees the node-level
    // views; the variance statistic runs on the simulator's plaintext
    // partials so honest rounds stay field-exact end to end).
    FieldVector masked_total = crypto::fv_zero(dim);
    Fe combined_blinding;
    for (const auto& ns : node_sums) {
      masked_total = crypto::fv_add(masked_total, ns.sum);
      combined_blinding = combined_blinding + ns.blinding;
    }

    agg::RobustPolicy robust;
    robust.fallback =
        agg::robust_method_from_name(bundle.aggregation.robust_method);
    robust.alpha = Decimal::parse(bundle.aggregation.robust_alpha).to_double();
    robust.theta_percentile =
        static_cast<int>(bundle.aggregation.robust_theta_percentile);
    std::vector<FieldVector> partials_list;
    for (uint32_t j = 0; j < m; ++j) partials_list.push_back(plaintext_partials[j]);
    agg::FilterResult filter =
        agg::byzantine_filter(partials_list, env.variance_history, robust);
    env.variance_history.push(filter.mean_variance);
    result.method = filter.applied;

    FieldVector aggregate;
    if (filter.applied == agg::RobustMethod::kNone) {
      aggregate = crypto::fv_add(masked_total, dropout.correction);
    } else {
      // Robust estimate is mean-scale; restore sum scale.
      aggregate = filter.output;
      Fe m_fe = Fe::from_u64(m);
      for (auto& x : aggregate) x = x * m_fe;
    }

    // Weights commitment over the admitted set.
    WeightSet weights;
    weights.round = req.round;
    for (const auto* c : admitted)
      weights.entries.push_back(WeightSet::Entry{c->pid, c->weight});
    Hash32 weights_root = weights.merkle_root();
    Cid weight_set_cid = env.store->put(weights);

    // Public round metadata.
    RoundMeta meta;
    meta.round = req.round;
    meta.committee_m = m;
    meta.byzantine_f = f;
    meta.share_threshold_t = t;
    meta.validator_set_cid = env.validator_set_cid;
    meta.crypto_params_cid = env.crypto_params_cid;
    meta.committee = committee;
    meta.admitted = result.admitted;
    meta.dropped = result.dropped;
    meta.weight_set_cid = weight_set_cid;
    for (const auto* c : admitted) {
      const auto* reg = env.ledger->find_registry(c->pid);
      if (reg == nullptr)
        throw ConfigError("admitted contributor lacks a registry");
      meta.reputations.push_back(
          RoundMeta::ReputationEntry{c->pid, reg->reputation.receipt_string()});
    }
    std::vector<PayoutSet::Entry> escrows_sorted = req.receiver_escrows;
    std::sort(escrows_sorted.begin(), escrows_sorted.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& e : escrows_sorted)
      meta.escrows.push_back(RoundMeta::EscrowEntry{e.id, e.amount});
    result.round_meta_cid = env.store->put(meta);

    // SumIntegrityProof.
    Cid masked_sum_cid = env.store->put(MaskedVector{req.round, masked_total});
    agg::ProofInputs pin;
    pin.round = req.round;
    pin.node_sums = node_sums;
    pin.validators = &env.validators;
    pin.committee_m = m;
    pin.byzantine_f = f;
    pin.masked_sum_cid = masked_sum_cid;
    pin.masked_sum = masked_total;
    pin.combined_blinding = combined_blinding;
    pin.reconstructed_set_commitment = dropout.reconstructed_set_commitment;
    pin.method = filter.applied;
    pin.weights_root = weights_root;
    pin.policy_cid = policy_cid;
    pin.round_meta_cid = result.round_meta_cid;
    pin.endorsers = endorsers;
    agg::SumIntegrityProof proof = agg::generate_proof(pin, *env.params);
    receipt.proof_cid = env.store->put(proof);

    // Unmask and measure novelty.
    AggregateVector agg_artifact{req.round, aggregate};
    result.aggregate_cid = env.store->put(agg_artifact);
    std::vector<double> g = lift_aggregate(aggregate);

    if (env.basis.dim == 0) env.basis.dim = dim;
    env.basis.max_size = bundle.novelty_econ.basis_size;
    env.basis.full_reorthogonalize =
        bundle.novelty_econ.basis_rotation == "full";
    novelty::Decomposition dec = novelty::decompose(g, env.basis);
    result.phi = dec.phi;
    // Below the 1e-9 novelty floor the perpendicular residue is numerical
    // dust from a spanned direction; rotating on it would evict real memory.
    if (dec.phi > novelty::kEpsilon && novelty::norm(dec.perpendicular) > 0.0) {
      try {
        novelty::rotate_basis(env.basis, dec.perpendicular);
      } catch (const ZeroNoveltyError&) {
      }
    }
    double lambda = Decimal::parse(bundle.novelty_econ.lambda_ema).to_double();
    env.phi_ema = novelty::smooth(env.phi_ema, dec.phi, lambda);
    receipt.phi_t_ema = phi_to_string(env.phi_ema);
    result.basis_checkpoint_cid =
        env.store->put(novelty::make_checkpoint(env.basis, req.round));
  } catch (const InsufficientSharesError&) {
    return publish_failed("AggregationError");
  } catch (const ConsensusError&) {
    return publish_failed("AggregationError");
  } catch (const DegenerateFilterError&) {
    return publish_failed("AggregationError");
  }

  // ----- Safety gate ---------------------------------------------------------
  std::vector<ProxyScore> scores;
  for (const auto& [name, s] : req.proxy_scores) scores.push_back(s);
  SafetyEvaluation eval;
  bool gate_error = false;
  try {
    eval = safety_gate(scores, bundle.safety);
  } catch (const EvaluationError&) {
    gate_error = true;  // conservative: a missing score fails the round
  }
  if (gate_error || !eval.passed) {
    for (const auto& e : eval.entries) {
      if (e.passed) continue;
      AggregateReceipt::FailedProxy fp;
      fp.name = e.name;
      fp.delta = signed_double_string(e.delta);
      fp.threshold = signed_double_string(e.threshold);
      receipt.failed_proxies.push_back(fp);
    }
    return publish_failed("SafetyViolation");
  }

  sm.advance(Phase::kPublication);

  // ----- Economic settlement -------------------------------------------------
  econ::PoolAllocation alloc = econ::split_pool(pool, alphas);
  receipt.p_c = Decimal::from_fixed(alloc.p_c).exact_string();
  receipt.p_m = Decimal::from_fixed(alloc.p_m).exact_string();
  receipt.p_t = Decimal::from_fixed(alloc.p_t).exact_string();
  receipt.allocation_dust =
      Decimal::from_fixed(alloc.allocation_dust).exact_string();

  std::vector<econ::RewardInput> reward_inputs;
  for (const auto& u : survivors) {
    const auto* reg = env.ledger->find_registry(u.contributor);
    reward_inputs.push_back(econ::RewardInput{
        u.contributor, reg->reputation, u.weight.raw()});
  }
  Decimal r_base = Decimal::parse(env.r_base_str);
  Decimal beta = Decimal::parse(bundle.novelty_econ.beta);
  Decimal phi_ema_dec = Decimal::parse(receipt.phi_t_ema);
  econ::RewardBreakdown breakdown = econ::contributor_rewards(
      alloc.p_c, reward_inputs, r_base, beta, phi_ema_dec);
  result.rewards = breakdown.rewards;
  receipt.novelty_cap = breakdown.novelty_cap.exact_string();
  receipt.p_nov = breakdown.p_nov.exact_string();
  receipt.p_quality = breakdown.p_quality.exact_string();
  receipt.payout_dust_contributors =
      Decimal::from_fixed(breakdown.dust).exact_string();

  // Contributor payout tree.
  {
    std::vector<PayoutSet::Entry> entries;
    for (const auto& r : breakdown.rewards)
      entries.push_back(PayoutSet::Entry{r.pid.bytes, r.total});
    if (!entries.empty()) {
      PayoutSet set = econ::make_payout_set(
          req.round, PayoutSet::Kind::kContributors, std::move(entries));
      receipt.payout_root_contributors = set.merkle_root();
      payout_contributors_cid = env.store->put(set);
    }
  }

  // Committee fees.
  econ::CommitteeFees fees = econ::committee_fees(alloc.p_m, m, true);
  receipt.fee_committee = fees.fee_string;
  receipt.payout_dust_committee =
      Decimal::from_fixed(fees.dust).exact_string();
  {
    std::vector<PayoutSet::Entry> entries;
    for (const auto& node : committee)
      entries.push_back(PayoutSet::Entry{node.bytes, fees.fee_per_node});
    PayoutSet set = econ::make_payout_set(
        req.round, PayoutSet::Kind::kCommittee, std::move(entries));
    receipt.payout_root_committee = set.merkle_root();
    payout_committee_cid = env.store->put(set);
  }

  // Owned registry updates: reputation, privacy spend, participation.
  std::set<NodeId> trimmed_nodes;  // nodes whose partials were perturbed
  for (uint32_t j = m - withhold - corrupt; j < m - withhold; ++j)
    trimmed_nodes.insert(committee[j]);
  for (size_t i = 0; i < survivors.size(); ++i) {
    const ContributorId& pid = survivors[i].contributor;
    const NodeId& assigned_node = committee[i % m];
    // Heuristic variance attribution: contributors whose node-level partial
    // was perturbed this round carry the high-variance decay.
    bool high_variance = result.method != agg::RobustMethod::kNone &&
                         trimmed_nodes.count(assigned_node) > 0;
    auto key_it = env.owner_keys.find(pid);
    if (key_it == env.owner_keys.end())
      throw ConfigError("missing owner key for contributor");
    const auto* reg = env.ledger->find_registry(pid);
    CanonicalWriter intent;
    intent.str("round-settlement");
    intent.round_id(req.round);
    Bytes intent_bytes = intent.take();
    Bytes msg = ledger::Ledger::owned_write_message(pid, reg->version + 1,
                                                    intent_bytes);
    auto sig = crypto::schnorr_sign(*env.params, key_it->second.secret, msg);
    env.ledger->owned_write(
        pid, intent_bytes, sig, [&](ledger::ContributorRegistry& r) {
          r.reputation = econ::update_reputation(r.reputation, true,
                                                 high_variance);
          r.participation.push_back(round_no);
          if (dp_cfg.noise_scale > 0.0) {
            try {
              r.epsilon_spent = agg::account_privacy(
                  dp_cfg, r.participation.size());
            } catch (const BudgetError&) {
              r.epsilon_spent = dp_cfg.epsilon_budget_total;
            }
          }
        });
  }

  // Shared finalization writes: round metadata, model lineage, policy
  // snapshot (four shared updates per accepted round with setup).
  shared_put(ledger::SharedKind::kRoundRegistry, result.round_meta_cid);
  shared_put(ledger::SharedKind::kModelRegistry, result.aggregate_cid);
  shared_put(ledger::SharedKind::kPolicyOracle, policy_cid);

  sm.advance(Phase::kAccepted);
  return publish("Accepted");
}

}  // namespace pgot::round
