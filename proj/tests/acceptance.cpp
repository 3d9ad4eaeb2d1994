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

// End-to-end acceptance suite. Each case prints one pass/fail line; every
// tolerance is pinned here, none deferred to later calibration.

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "pgot/audit.hpp"
#include "pgot/economy.hpp"
#include "pgot/errors.hpp"
#include "pgot/merkle.hpp"
#include "pgot/novelty.hpp"
#include "pgot/round.hpp"
#include "pgot/scenario.hpp"

using namespace pgot;

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

void report(const char* name, bool pass, double secs) {
  std::printf("[%s] %s (%.2fs)\n", pass ? "PASS" : "FAIL", name, secs);
  std::fflush(stdout);
}

ContributorId pid_of(uint16_t i) {
  ContributorId id;
  id.bytes.fill(static_cast<uint8_t>(i >> 8));
  id.bytes[31] = static_cast<uint8_t>(i);
  return id;
}

// -- mutation harness for criterion 4 ---------------------------------------

enum class Mutation {
  kNodeSum,
  kSignature,
  kDropoutSet,
  kMethodEnum,
  kWeightsRoot,
  kPayoutLeaf,
  kDust,
  kPolicyCid,
};

const Mutation kAllMutations[] = {
    Mutation::kNodeSum,     Mutation::kSignature, Mutation::kDropoutSet,
    Mutation::kMethodEnum,  Mutation::kWeightsRoot, Mutation::kPayoutLeaf,
    Mutation::kDust,        Mutation::kPolicyCid,
};

// Applies one mutation with full re-linking and committee re-endorsement of
// every derived artifact: detection must come from the audit's semantic
// checks, not from a dangling hash.
bool mutated_audit_verdict(sim::Simulation& sim, const round::RoundResult& r,
                           Mutation m) {
  ContentStore& store = sim.store();
  auto& env = sim.env();
  agg::SumIntegrityProof proof = agg::SumIntegrityProof::decode_frame(
      store.get_frame(r.receipt.proof_cid));
  AggregateReceipt receipt = r.receipt;
  RoundAnchor anchor = r.anchor;

  bool touch_proof = false;
  switch (m) {
    case Mutation::kNodeSum: {
      MaskedVector sum = store.get<MaskedVector>(proof.masked_sum_cid);
      sum.values[0] = sum.values[0] + crypto::Fe::from_u64(1);
      proof.masked_sum_cid = store.put(sum);
      touch_proof = true;
      break;
    }
    case Mutation::kSignature: {
      proof.node_commitments[0].signature[10] ^= 1;
      touch_proof = true;
      break;
    }
    case Mutation::kDropoutSet: {
      RoundMeta meta = store.get<RoundMeta>(proof.round_meta_cid);
      DropoutSet forged;
      forged.round = RoundId{receipt.round_id};
      forged.dropped = {meta.admitted.front()};  // claims a false dropout
      proof.reconstructed_set_commitment = store.put(forged);
      touch_proof = true;
      break;
    }
    case Mutation::kMethodEnum: {
      proof.robust_method_applied =
          static_cast<uint8_t>(agg::RobustMethod::kMedian);
      touch_proof = true;
      break;
    }
    case Mutation::kWeightsRoot: {
      proof.weights_root[0] ^= 1;
      touch_proof = true;
      break;
    }
    case Mutation::kPayoutLeaf: {
      PayoutSet payouts = store.get<PayoutSet>(anchor.payout_contributors_cid);
      payouts.entries[0].amount =
          payouts.entries[0].amount.add(FixedAmount::from_raw(1));
      anchor.payout_contributors_cid = store.put(payouts);
      break;
    }
    case Mutation::kDust: {
      receipt.payout_dust_contributors = "0.5";
      break;
    }
    case Mutation::kPolicyCid: {
      // a perfectly valid bundle that was never activated for this round
      policy::PolicyBundle other =
          store.get<policy::PolicyBundle>(receipt.policy_cid);
      other.novelty_econ.beta = "0.31";
      other.timelock.policy_cid = Cid{};
      receipt.policy_cid = store.put(other);
      break;
    }
  }

  if (touch_proof) {
    // a colluding committee re-endorses the mutated proof body
    proof.endorsements.clear();
    RoundMeta meta = store.get<RoundMeta>(proof.round_meta_cid);
    Bytes body = proof.body_bytes();
    for (const auto& node : meta.committee) {
      proof.endorsements.push_back(RoundAnchor::Endorsement{
          node,
          crypto::schnorr_sign(*env.params, env.node_keys.at(node).secret, body)
              .serialize()});
    }
    receipt.proof_cid = store.put(proof);
  }
  anchor.receipt_cid = store.put(receipt);
  anchor.endorsements.clear();
  Bytes body = anchor.body_bytes();
  for (const auto& [node, key] : env.node_keys) {
    anchor.endorsements.push_back(RoundAnchor::Endorsement{
        node, crypto::schnorr_sign(*env.params, key.secret, body).serialize()});
  }
  store.put(anchor);
  return audit::verify_receipt(sim.audit_view(), anchor).verdict;
}

}  // namespace

// ===========================================================================

TEST_CASE("criterion 1: receipt reproduction") {
  Stopwatch sw;

  econ::RoundPool pool = econ::form_pool({FixedAmount::parse("950.0")}, 0,
                                         FixedAmount::parse("950.0"));
  econ::PoolAllocation alloc = econ::split_pool(pool, econ::PoolAlphas{});
  std::vector<econ::RewardInput> inputs;
  inputs.reserve(10000);
  for (uint16_t i = 0; i < 10000; ++i)
    inputs.push_back(econ::RewardInput{pid_of(i), Decimal::parse("1.0"),
                                       FixedAmount::from_whole(1).raw()});
  econ::RewardBreakdown breakdown = econ::contributor_rewards(
      alloc.p_c, inputs, Decimal::parse("0.01"), Decimal::parse("0.3"),
      Decimal::parse("0.22"));
  econ::CommitteeFees fees = econ::committee_fees(alloc.p_m, 7, true);

  AggregateReceipt receipt;
  receipt.round_status = "Accepted";
  receipt.p_receivers = Decimal::from_fixed(pool.p_receivers).exact_string();
  receipt.p_bootstrap = Decimal::from_fixed(pool.p_bootstrap).exact_string();
  receipt.p_total = Decimal::from_fixed(pool.p_total).exact_string();
  receipt.ema_value = Decimal::from_fixed(pool.ema_value).exact_string();
  receipt.p_c = Decimal::from_fixed(alloc.p_c).exact_string();
  receipt.p_m = Decimal::from_fixed(alloc.p_m).exact_string();
  receipt.p_t = Decimal::from_fixed(alloc.p_t).exact_string();
  receipt.n_admitted = 10000;
  receipt.committee_m = 7;
  receipt.phi_t_ema = "0.22";
  receipt.novelty_cap = breakdown.novelty_cap.exact_string();
  receipt.p_nov = breakdown.p_nov.exact_string();
  receipt.p_quality = breakdown.p_quality.exact_string();
  receipt.fee_committee = fees.fee_string;

  // Reference receipt field values, zero tolerance.
  CHECK(receipt.p_receivers == "950.0");
  CHECK(receipt.p_bootstrap == "50.0");
  CHECK(receipt.p_total == "1000.0");
  CHECK(receipt.ema_value == "950.0");
  CHECK(receipt.p_c == "700.0");
  CHECK(receipt.p_m == "200.0");
  CHECK(receipt.p_t == "100.0");
  CHECK(receipt.novelty_cap == "180.0");
  CHECK(receipt.p_nov == "39.6");
  CHECK(receipt.p_quality == "560.4");
  CHECK(receipt.fee_committee == "28.571428");
  bool pass = receipt.p_c == "700.0" && receipt.p_m == "200.0" &&
              receipt.p_t == "100.0" && receipt.novelty_cap == "180.0" &&
              receipt.p_nov == "39.6" && receipt.p_quality == "560.4" &&
              receipt.fee_committee == "28.571428";

  double secs = sw.seconds();
  CHECK(secs < 1.0);
  report("criterion 1: receipt reproduction (reference values, zero tolerance)",
         pass && secs < 1.0, secs);
}

TEST_CASE("criterion 2: replay resistance") {
  Stopwatch sw;
  bool pass = true;

  // 20 rounds x 10 seeds of pure replay: novelty is paid exactly once.
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    sim::ScenarioConfig cfg;
    cfg.name = "replay";
    cfg.adversary = "replay";
    cfg.rounds = 20;
    cfg.dim = 32;
    cfg.validators = 8;
    cfg.seed = seed;
    cfg.dp_noise_scale = 0.0;
    cfg.lambda_ema = "0";  // novelty pool tracks the instantaneous score
    cfg.robust_method = "none";  // isolate the novelty mechanism
    sim::ScenarioResult r = sim::run_scenario(cfg, std::nullopt);
    REQUIRE(r.details.size() == 20);
    CHECK(r.rounds[0].phi > 0.9);
    CHECK(r.details[0].rewards.at(0).novelty.raw() > 0);
    pass = pass && r.rounds[0].phi > 0.9 &&
           r.details[0].rewards.at(0).novelty.raw() > 0;
    for (size_t i = 1; i < 20; ++i) {
      CHECK(r.rounds[i].phi < 1e-9);
      CHECK(r.details[i].rewards.at(0).novelty.raw() == 0);
      pass = pass && r.rounds[i].phi < 1e-9 &&
             r.details[i].rewards.at(0).novelty.raw() == 0;
    }
  }

  // Horizon effect: basis_size distinct rotations evict the direction and
  // the replayed update earns novelty again.
  {
    sim::ScenarioConfig cfg;
    cfg.adversary = "replay";
    cfg.rounds = 8;
    cfg.dim = 32;
    cfg.validators = 8;
    cfg.seed = 3;
    cfg.dp_noise_scale = 0.0;
    cfg.lambda_ema = "0";
    cfg.robust_method = "none";
    cfg.basis_size = 5;
    cfg.replay_horizon = 5;  // rounds 2..6 explore distinct axes
    sim::ScenarioResult r = sim::run_scenario(cfg, std::nullopt);
    CHECK(r.rounds[6].phi > 0.5);  // round 7: the direction was evicted
    CHECK(r.details[6].rewards.at(0).novelty.raw() > 0);
    CHECK(r.rounds[7].phi < 1e-9);  // round 8: remembered again
    pass = pass && r.rounds[6].phi > 0.5 && r.rounds[7].phi < 1e-9;
  }

  report(
      "criterion 2: replay novelty zero after first reward (20r x 10 seeds) "
      "+ horizon recovery",
      pass, sw.seconds());
}

TEST_CASE("criterion 3: sybil resistance") {
  Stopwatch sw;
  bool pass = true;

  for (uint64_t n : {2ull, 5ull, 10ull, 100ull}) {
    sim::ScenarioConfig base;
    base.adversary = "sybil_split";
    base.sybil_n = n;
    base.rounds = 2;
    // A realistic admitted population: the quality pool dilutes per
    // identity the way the incentive analysis assumes at edge scale.
    base.contributors = 300;
    base.dim = 16;
    base.validators = 8;
    base.seed = 17;
    base.dp_noise_scale = 0.0;
    base.dp_clipping_norm = 1e12;
    base.robust_method = "none";  // isolate the novelty mechanism

    sim::ScenarioConfig honest_cfg = base;
    honest_cfg.sybil_split = false;
    sim::ScenarioResult honest = sim::run_scenario(honest_cfg, std::nullopt);
    sim::ScenarioConfig split_cfg = base;
    split_cfg.sybil_split = true;
    sim::ScenarioResult split = sim::run_scenario(split_cfg, std::nullopt);

    for (size_t i = 0; i < 2; ++i) {
      // bit-identical aggregate, hence bit-identical g_perp and phi
      CHECK(honest.details[i].aggregate_cid == split.details[i].aggregate_cid);
      CHECK(honest.details[i].phi == split.details[i].phi);
      pass = pass &&
             honest.details[i].aggregate_cid ==
                 split.details[i].aggregate_cid &&
             honest.details[i].phi == split.details[i].phi;
    }

    auto cluster_reward = [](const sim::ScenarioResult& r) {
      std::set<ContributorId> cluster(r.attacker_pids.begin(),
                                      r.attacker_pids.end());
      uint128_t total = 0;
      for (const auto& d : r.details) {
        for (const auto& rw : d.rewards) {
          if (cluster.count(rw.pid)) total += rw.total.raw();
        }
      }
      return total;
    };
    // net payoff = rewards - identities * (S_min + C_attestation)
    uint128_t cost_unit = FixedAmount::parse(base.min_stake).raw() +
                          FixedAmount::parse(base.attestation_cost).raw();
    int128_t net_honest = static_cast<int128_t>(cluster_reward(honest)) -
                          static_cast<int128_t>(cost_unit);
    int128_t net_sybil =
        static_cast<int128_t>(cluster_reward(split)) -
        static_cast<int128_t>(n) * static_cast<int128_t>(cost_unit);
    CHECK(net_sybil < net_honest);
    pass = pass && net_sybil < net_honest;
  }

  // Property test: 100 random field partitions decompose bit-identically.
  {
    crypto::DeterministicRng rng = crypto::DeterministicRng::from_u64(170);
    const size_t dim = 24;
    novelty::Basis basis;
    basis.dim = dim;
    basis.max_size = 20;
    for (size_t i = 0; i < 4; ++i) {
      std::vector<double> dir(dim, 0.0);
      dir[i] = 1.0;
      novelty::rotate_basis(basis, dir);
    }
    for (int trial = 0; trial < 100; ++trial) {
      crypto::FieldVector whole(dim);
      for (auto& x : whole)
        x = crypto::Fe::from_signed(
            static_cast<int64_t>(rng.next_below(1u << 29)) - (1 << 28));
      size_t parts = 2 + rng.next_below(9);
      crypto::FieldVector acc = crypto::fv_zero(dim);
      for (size_t p = 0; p + 1 < parts; ++p) {
        crypto::FieldVector part(dim);
        for (auto& x : part) x = rng.next_fe();
        acc = crypto::fv_add(acc, part);
      }
      crypto::FieldVector resum =
          crypto::fv_add(acc, crypto::fv_sub(whole, acc));
      CHECK(resum == whole);
      std::vector<double> g(dim), g2(dim);
      for (size_t c = 0; c < dim; ++c) {
        g[c] = static_cast<double>(whole[c].signed_lift()) / 65536.0;
        g2[c] = static_cast<double>(resum[c].signed_lift()) / 65536.0;
      }
      auto d1 = novelty::decompose(g, basis);
      auto d2 = novelty::decompose(g2, basis);
      bool same = d1.perpendicular == d2.perpendicular && d1.phi == d2.phi;
      CHECK(same);
      pass = pass && same;
    }
  }

  report("criterion 3: sybil aggregate bit-identity and negative net payoff",
         pass, sw.seconds());
}

TEST_CASE("criterion 4: integrity under audit") {
  Stopwatch sw;
  bool pass = true;

  // 1,000 honest rounds at N=50, M=7, d=256: every receipt audits clean.
  {
    sim::ScenarioConfig cfg;
    cfg.name = "integrity";
    cfg.rounds = 1000;
    cfg.contributors = 50;
    cfg.dim = 256;
    cfg.validators = 10;
    cfg.seed = 4;
    sim::Simulation simulation(cfg);
    size_t audited = 0;
    for (uint64_t i = 0; i < cfg.rounds; ++i) {
      round::RoundResult r = simulation.step();
      audit::AuditReport rep =
          audit::verify_receipt(simulation.audit_view(), r.anchor);
      if (!rep.verdict || !r.receipt.accepted()) {
        pass = false;
        MESSAGE("round ", i, " failed:\n", rep.render_text());
        break;
      }
      ++audited;
    }
    CHECK(audited == 1000);
    pass = pass && audited == 1000;
  }

  // Mutation fuzzing: all eight classes rejected on every seed.
  size_t rejected = 0, attempted = 0;
  for (uint64_t seed = 1; seed <= 12; ++seed) {
    sim::ScenarioConfig cfg;
    cfg.rounds = 1;
    cfg.contributors = 12;
    cfg.dim = 32;
    cfg.validators = 9;
    cfg.seed = seed;
    cfg.dp_noise_scale = 0.0;
    sim::Simulation simulation(cfg);
    round::RoundResult r = simulation.step();
    REQUIRE(audit::verify_receipt(simulation.audit_view(), r.anchor).verdict);
    for (Mutation m : kAllMutations) {
      ++attempted;
      if (!mutated_audit_verdict(simulation, r, m)) ++rejected;
    }
  }
  CHECK(attempted == 96);
  CHECK(rejected == attempted);
  pass = pass && rejected == attempted;

  double secs = sw.seconds();
  CHECK(secs < 300.0);
  report("criterion 4: 1000 honest rounds audited + 8-class mutation fuzzing",
         pass && secs < 300.0, secs);
}

TEST_CASE("criterion 5: secure aggregation exactness") {
  Stopwatch sw;
  bool pass = true;

  // For every dropout count 0..t-1 (t=4 at M=7) the unmasked aggregate
  // equals the plaintext weighted sum, field-exactly, through the masked
  // pipeline with DP noise active.
  for (uint32_t dropouts = 0; dropouts <= 3; ++dropouts) {
    sim::ScenarioConfig cfg;
    cfg.rounds = 1;
    cfg.contributors = 50;  // N <= 50
    cfg.dim = 16;
    cfg.validators = 9;
    cfg.seed = 50 + dropouts;
    sim::Simulation simulation(cfg);
    auto& env = simulation.env();

    round::RoundRequest req;
    req.round = RoundId{1};
    req.rng = crypto::DeterministicRng::from_u64(500 + dropouts);
    crypto::DeterministicRng gen =
        crypto::DeterministicRng::from_u64(600 + dropouts);
    for (size_t i = 0; i < 50; ++i) {
      round::Candidate c;
      c.pid = simulation.contributor_ids()[i];
      c.stake = FixedAmount::parse("10.0");
      c.cohort = CohortId{0};
      c.weight = FixedAmount::from_whole(1 + gen.next_below(4));
      c.update.resize(cfg.dim);
      for (auto& x : c.update) x = gen.next_gaussian() * 0.05;
      req.candidates.push_back(c);
    }
    std::sort(req.candidates.begin(), req.candidates.end(),
              [](const auto& a, const auto& b) { return a.pid < b.pid; });
    for (uint32_t k = 0; k < dropouts; ++k)
      req.adversary.forced_dropouts.push_back(req.candidates[2 * k + 1].pid);

    round::RoundResult r = round::run_round(env, req);
    REQUIRE(r.receipt.accepted());
    REQUIRE(r.dropped.size() == dropouts);
    REQUIRE(r.method == agg::RobustMethod::kNone);

    // Independent plaintext oracle: replicate clipping and noise per
    // candidate, then sum the quantized weighted updates directly with no
    // masks involved.
    agg::DpConfig dp;  // defaults match the genesis bundle
    crypto::FieldVector expect = crypto::fv_zero(cfg.dim);
    std::set<ContributorId> dropped(r.dropped.begin(), r.dropped.end());
    for (const auto& c : req.candidates) {
      if (dropped.count(c.pid)) continue;
      auto rng_i = req.rng.derive(
          "dp-noise", std::span<const uint8_t>(c.pid.bytes.data(), 32));
      std::vector<double> noised = agg::clip_and_noise(c.update, dp, rng_i);
      crypto::FieldVector q(cfg.dim);
      for (size_t j = 0; j < noised.size(); ++j)
        q[j] = crypto::Fe::from_signed(
            static_cast<int64_t>(std::llround(noised[j] * 65536.0)));
      crypto::fv_add_scaled_inplace(expect, q,
                                    crypto::Fe::from_u128(c.weight.raw()));
    }
    AggregateVector got =
        simulation.store().get<AggregateVector>(r.aggregate_cid);
    bool equal = got.values == expect;
    CHECK(equal);
    pass = pass && equal;
  }

  report(
      "criterion 5: dropout counts 0..t-1 unmask to the exact plaintext sum",
      pass, sw.seconds());
}

TEST_CASE("criterion 6: conservation fuzz") {
  Stopwatch sw;
  bool pass = true;
  crypto::DeterministicRng rng = crypto::DeterministicRng::from_u64(6000);

  for (int trial = 0; trial < 10000 && pass; ++trial) {
    std::vector<FixedAmount> escrows;
    size_t n_escrows = rng.next_below(5);
    for (size_t i = 0; i < n_escrows; ++i)
      escrows.push_back(FixedAmount::from_raw(rng.next_below(1u << 28)));
    uint64_t round = rng.next_below(1500);
    econ::RoundPool pool =
        econ::form_pool(escrows, round, FixedAmount::from_raw(rng.next_u64()));

    if (trial % 3 == 0) {
      // Failed round: refunds return every escrow exactly.
      std::vector<PayoutSet::Entry> entries;
      for (size_t i = 0; i < escrows.size(); ++i) {
        PayoutSet::Entry e;
        e.id = rng.next_hash();
        e.amount = escrows[i];
        entries.push_back(e);
      }
      econ::RefundResult refund =
          econ::refunds(RoundId{round}, entries, pool.p_bootstrap);
      uint128_t refunded = 0;
      for (const auto& e : refund.set.entries) refunded += e.amount.raw();
      pass = refunded + refund.refund_dust.raw() == pool.p_receivers.raw();
      CHECK(pass);
      continue;
    }

    // Accepted round: P_total == P_C + P_M + P_T + all dust, raw exact.
    econ::PoolAllocation alloc = econ::split_pool(pool, econ::PoolAlphas{});
    size_t n = rng.next_below(25);
    std::vector<econ::RewardInput> inputs;
    for (size_t i = 0; i < n; ++i) {
      uint64_t rho_centi = 80 + rng.next_below(41);
      inputs.push_back(econ::RewardInput{
          pid_of(static_cast<uint16_t>(i)),
          Decimal::parse(std::to_string(rho_centi))
              .mul(Decimal::parse("0.01")),
          (1 + rng.next_below(8)) * 65536});
    }
    uint32_t m = 1 + static_cast<uint32_t>(rng.next_below(10));
    try {
      econ::RewardBreakdown b = econ::contributor_rewards(
          alloc.p_c, inputs, Decimal::parse("0.01"), Decimal::parse("0.3"),
          Decimal::parse(std::to_string(rng.next_below(100)))
              .mul(Decimal::parse("0.01")));
      econ::CommitteeFees fees = econ::committee_fees(alloc.p_m, m, true);
      uint128_t paid = 0;
      for (const auto& rw : b.rewards) paid += rw.total.raw();
      uint128_t lhs = pool.p_total.raw();
      uint128_t rhs = paid + b.dust.raw() +                        // P_C
                      fees.fee_per_node.raw() * m + fees.dust.raw() +  // P_M
                      alloc.p_t.raw() + alloc.allocation_dust.raw();
      pass = lhs == rhs;
      CHECK(pass);
    } catch (const InsolvencyError&) {
      // tiny pools with many contributors legitimately refuse settlement
    }
  }

  report("criterion 6: conservation over 10,000 random configurations", pass,
         sw.seconds());
}

TEST_CASE("criterion 7: gas model") {
  Stopwatch sw;
  ledger::GasReport r = ledger::round_gas_report(10000, 4);
  bool pass = r.meter.gas_units() == 27.0 &&
              r.meter.gas_units_string() == "27.0" &&
              r.meter.dollars_string() == "0.027" &&
              r.per_contributor_dollars_string() == "0.0000027";
  CHECK(pass);

  // gas(N) is affine with slope exactly 0.0025 gas (2500 micro-gas) per
  // contributor across the claimed range.
  const uint64_t ns[] = {10, 100, 1000, 10000};
  for (size_t i = 0; i + 1 < 4; ++i) {
    uint64_t d_micro =
        ledger::round_gas_report(ns[i + 1], 4).meter.microgas() -
        ledger::round_gas_report(ns[i], 4).meter.microgas();
    bool exact = d_micro == (ns[i + 1] - ns[i]) * 2500;
    CHECK(exact);
    pass = pass && exact;
  }

  // the analytic cost table reproduces the published full-stack figures
  sim::CostReport cost = sim::cost_report(10000, 1);
  CHECK(cost.total_per_round_string() == "3.55");
  CHECK(cost.per_contributor_string() == "0.000355");
  pass = pass && cost.total_per_round_string() == "3.55" &&
         cost.per_contributor_string() == "0.000355";

  report("criterion 7: 27 gas / $0.027 at N=10000 and exact 0.0025 slope",
         pass, sw.seconds());
}

TEST_CASE("criterion 8: time-lock enforcement") {
  Stopwatch sw;
  bool pass = true;

  // Early activation rejected in every phase at the phase minimum.
  struct PhaseCase {
    uint64_t round;
    uint64_t t_lock;
  };
  for (const PhaseCase pc :
       {PhaseCase{100, 5}, PhaseCase{700, 10}, PhaseCase{2500, 20}}) {
    ContentStore store;
    policy::PolicyLog log(store, policy::PolicyBundle{});
    policy::PolicyBundle b;
    b.novelty_econ.beta = "0.33";
    b.timelock.t_lock = pc.t_lock;
    policy::PolicyBundle low = b;
    low.timelock.t_lock = pc.t_lock - 1;  // below the phase minimum
    bool lock_rejected = false;
    try {
      log.propose(low, pc.round, 0);
    } catch (const LockPeriodError&) {
      lock_rejected = true;
    }
    CHECK(lock_rejected);
    auto rec = log.propose(b, pc.round, 0);
    CHECK(rec.activation_round == pc.round + pc.t_lock);
    policy::ApprovalEvidence ap;
    if (pc.round < 500) {
      ap.multisig = policy::MultisigApproval{{0, 1, 2}};
    } else if (pc.round < 2000) {
      ap.council = policy::CouncilApproval{{0, 1, 2, 3, 4}};
    } else {
      policy::StakeVote sv;
      sv.total_eligible_stake = FixedAmount::from_whole(100);
      sv.ballots.push_back({FixedAmount::from_whole(50), true});
      ap.stake_vote = sv;
    }
    bool reverted = false;
    try {
      log.activate(rec.policy_cid, rec.activation_round - 1, ap);
    } catch (const RevertError&) {
      reverted = true;
    }
    CHECK(reverted);
    CHECK_NOTHROW(log.activate(rec.policy_cid, rec.activation_round, ap));
    pass = pass && lock_rejected && reverted;
  }

  // 1,000 randomized proposal/activation steps against a linear-scan
  // oracle, with historical stability.
  {
    ContentStore store;
    policy::PolicyLog log(store, policy::PolicyBundle{});
    crypto::DeterministicRng rng = crypto::DeterministicRng::from_u64(8000);
    std::vector<std::pair<uint64_t, Cid>> oracle = {
        {0, log.active_policy_at(0)}};
    auto oracle_at = [&](uint64_t round) {
      const Cid* best = nullptr;
      for (const auto& [at, cid] : oracle) {
        if (at <= round) best = &cid;
      }
      return *best;
    };
    std::map<uint64_t, Cid> frozen_history;
    uint64_t now = 1;
    std::vector<policy::ProposalRecord> open;
    for (int step = 0; step < 1000 && pass; ++step) {
      now += rng.next_below(4);
      policy::GovernancePhase phase = policy::phase_for_round(now);
      if (rng.next_below(2) == 0 || open.empty()) {
        policy::PolicyBundle b;
        b.novelty_econ.basis_size = 20 + static_cast<uint32_t>(step);
        b.timelock.t_lock = phase.t_lock_min + rng.next_below(3);
        open.push_back(log.propose(b, now, 0));
      } else {
        auto rec = open.front();
        open.erase(open.begin());
        uint64_t when = std::max(now, rec.activation_round);
        policy::ApprovalEvidence ap;
        policy::GovernancePhase act_phase = policy::phase_for_round(when);
        if (act_phase.index == policy::PhaseIndex::kPhase0)
          ap.multisig = policy::MultisigApproval{{0, 1, 2}};
        else if (act_phase.index == policy::PhaseIndex::kPhase1)
          ap.council = policy::CouncilApproval{{0, 1, 2, 3, 4}};
        else {
          policy::StakeVote sv;
          sv.total_eligible_stake = FixedAmount::from_whole(100);
          sv.ballots.push_back({FixedAmount::from_whole(50), true});
          ap.stake_vote = sv;
        }
        log.activate(rec.policy_cid, when, ap);
        oracle.emplace_back(when, rec.policy_cid);
        now = std::max(now, when);
      }
      uint64_t probe = rng.next_below(now + 1);
      Cid got = log.active_policy_at(probe);
      if (!(got == oracle_at(probe))) pass = false;
      auto frozen = frozen_history.find(probe);
      if (frozen != frozen_history.end() && !(frozen->second == got))
        pass = false;
      frozen_history.emplace(probe, got);
    }
    CHECK(pass);
    // every recorded activation respected its lock
    for (const auto& act : log.activations()) {
      const auto* prop = log.find_proposal(act.policy_cid);
      if (prop->propose_round == 0 && prop->activation_round == 0) continue;
      bool ok = act.activated_at >= prop->propose_round + prop->t_lock &&
                prop->activation_round - prop->propose_round >= prop->t_lock;
      CHECK(ok);
      pass = pass && ok;
    }
  }

  report("criterion 8: lock periods enforced; history stable vs oracle", pass,
         sw.seconds());
}

TEST_CASE("criterion 9: trimmed mean behaviour") {
  Stopwatch sw;
  bool pass = true;

  agg::VarianceHistory history;
  history.push(0.0);
  agg::RobustPolicy policy;  // trimmed_mean, alpha=0.2, theta=90
  {
    std::vector<crypto::FieldVector> sums;
    for (int64_t v : {-50, 1, 2, 3, 4, 5, 100})
      sums.push_back({crypto::Fe::from_signed(v)});
    agg::FilterResult r = agg::byzantine_filter(sums, history, policy);
    bool ok = r.applied == agg::RobustMethod::kTrimmedMean &&
              r.output[0].signed_lift() == 3;
    CHECK(ok);
    pass = pass && ok;
  }

  // adversarial magnitude 1e6 never escapes the honest min/max envelope
  crypto::DeterministicRng rng = crypto::DeterministicRng::from_u64(9000);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t dim = 4;
    std::vector<crypto::FieldVector> sums;
    std::vector<int64_t> lo(dim, INT64_MAX), hi(dim, INT64_MIN);
    for (int j = 0; j < 6; ++j) {
      crypto::FieldVector v(dim);
      for (size_t c = 0; c < dim; ++c) {
        int64_t x = static_cast<int64_t>(rng.next_below(2001)) - 1000;
        lo[c] = std::min(lo[c], x);
        hi[c] = std::max(hi[c], x);
        v[c] = crypto::Fe::from_signed(x);
      }
      sums.push_back(v);
    }
    crypto::FieldVector evil(dim);
    for (size_t c = 0; c < dim; ++c)
      evil[c] = crypto::Fe::from_signed(rng.next_below(2) ? 1000000 : -1000000);
    sums.push_back(evil);
    agg::FilterResult r = agg::byzantine_filter(sums, history, policy);
    for (size_t c = 0; c < dim; ++c) {
      int128_t out = r.output[c].signed_lift();
      if (out < lo[c] || out > hi[c]) {
        pass = false;
        CHECK(out >= lo[c]);
        CHECK(out <= hi[c]);
      }
    }
  }
  CHECK(pass);

  report(
      "criterion 9: trimmed mean value pinned; bounded adversarial influence",
      pass, sw.seconds());
}

TEST_CASE("criterion 10: encoding golden vectors") {
  Stopwatch sw;
  bool pass = true;

  // Merkle roots pinned from an independent reference hasher.
  std::vector<Bytes> pl;
  for (int i = 0; i < 4; ++i)
    pl.push_back(str_bytes("leaf-" + std::to_string(i)));
  pass =
      pass &&
      to_hex(merkle::MerkleTree::build({pl.begin(), pl.begin() + 1}).root()) ==
          "db8712d9b68b2f61b595bb00896f3824ad5c3f155ab3a120473757b8150d716a" &&
      to_hex(merkle::MerkleTree::build({pl.begin(), pl.begin() + 3}).root()) ==
          "852ce72335d635076a3f2c2e7cee13662d55e576c9b44a046840a07876925fcc" &&
      to_hex(merkle::MerkleTree::build(pl).root()) ==
          "b5f5bd68cfcf773942cec2833b5bda2c897fd094653ad1706f17205eea57747c";
  CHECK(pass);

  // Fixed-point conversions.
  pass = pass && FixedAmount::parse("950.0").raw() == 62259200 &&
         FixedAmount::parse("28.571428").raw() == 1872457 &&
         FixedAmount::parse("0").raw() == 0 &&
         FixedAmount::from_raw(1872457).to_string() == "28.5714263916015625";
  CHECK(pass);

  // Canonical receipt hash: the reference receipt with pinned
  // commitments, frozen after one reference serializer run.
  AggregateReceipt receipt;
  receipt.receipt_id = 200;
  receipt.round_id = 200;
  receipt.round_status = "Accepted";
  receipt.p_receivers = "950.0";
  receipt.p_bootstrap = "50.0";
  receipt.p_total = "1000.0";
  receipt.bootstrap_active = false;
  receipt.ema_value = "950.0";
  receipt.p_c = "700.0";
  receipt.p_m = "200.0";
  receipt.p_t = "100.0";
  receipt.allocation_dust = "0.0";
  receipt.n_admitted = 10000;
  receipt.phi_t_ema = "0.22";
  receipt.novelty_cap = "180.0";
  receipt.p_nov = "39.6";
  receipt.p_quality = "560.4";
  receipt.committee_m = 7;
  receipt.fee_committee = "28.571428";
  receipt.payout_root_contributors =
      merkle::MerkleTree::build({pl.begin(), pl.begin() + 1}).root();
  receipt.payout_root_committee =
      merkle::MerkleTree::build({pl.begin(), pl.begin() + 3}).root();
  receipt.payout_dust_contributors = "0.0001";
  receipt.payout_dust_committee = "0.00001";
  Cid receipt_cid = cid_of(receipt);
  const std::string frozen =
      "cid:7257836dc32177c279e18bef015b0fe7988e2bd548803617f73378288546960e";
  MESSAGE("canonical receipt cid: ", receipt_cid.text());
  CHECK(receipt_cid.text() == frozen);
  pass = pass && receipt_cid.text() == frozen;

  report("criterion 10: golden vectors stable (merkle, fixed point, receipt)",
         pass, sw.seconds());
}
