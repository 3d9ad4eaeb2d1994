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

#include <chrono>

#include "pgot/audit.hpp"
#include "pgot/errors.hpp"
#include "pgot/scenario.hpp"

using namespace pgot;

namespace {

sim::ScenarioConfig audit_config() {
  sim::ScenarioConfig cfg;
  cfg.rounds = 2;
  cfg.contributors = 8;
  cfg.dim = 16;
  cfg.validators = 9;
  cfg.seed = 6;
  cfg.dp_noise_scale = 0.0;
  return cfg;
}

// Committee collusion model for mutation tests: re-sign the anchor over a
// tampered receipt so that only the semantic checks can catch the lie.
RoundAnchor reendorse_anchor(sim::Simulation& sim, RoundAnchor anchor) {
  anchor.endorsements.clear();
  Bytes msg = anchor.body_bytes();
  for (const auto& [node, key] : sim.env().node_keys) {
    RoundAnchor::Endorsement e;
    e.node = node;
    e.signature =
        crypto::schnorr_sign(*sim.env().params, key.secret, msg).serialize();
    anchor.endorsements.push_back(e);
  }
  sim.store().put(anchor);
  return anchor;
}

}  // namespace

TEST_SUITE_BEGIN("audit");

TEST_CASE("an honest round passes every check") {
  sim::Simulation sim(audit_config());
  round::RoundResult r = sim.step();
  audit::AuditReport report = audit::verify_receipt(sim.audit_view(), r.anchor);
  for (const auto& c : report.checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
  }
  CHECK(report.verdict);
  CHECK(report.render_text().find("verdict: PASS") != std::string::npos);
}

TEST_CASE("a failed round passes its refund audit") {
  sim::ScenarioConfig cfg = audit_config();
  cfg.adversary = "proxy_failure";
  cfg.proxy_fail_round = 1;
  sim::Simulation sim(cfg);
  round::RoundResult r = sim.step();
  REQUIRE(r.receipt.round_status == "Failed(SafetyViolation)");
  audit::AuditReport report = audit::verify_receipt(sim.audit_view(), r.anchor);
  CHECK(report.verdict);
}

TEST_CASE("a missing artifact raises AvailabilityError, not a verdict") {
  sim::Simulation sim(audit_config());
  round::RoundResult r = sim.step();
  sim.store().erase(r.receipt.proof_cid);
  CHECK_THROWS_AS(audit::verify_receipt(sim.audit_view(), r.anchor),
                  AvailabilityError);
}

TEST_CASE("in-place tampering trips the content integrity checks") {
  sim::Simulation sim(audit_config());
  round::RoundResult r = sim.step();
  Bytes frame = sim.store().get_frame(r.receipt.proof_cid);
  frame.back() ^= 1;
  sim.store().tamper(r.receipt.proof_cid, frame);
  audit::AuditReport report = audit::verify_receipt(sim.audit_view(), r.anchor);
  CHECK(!report.verdict);
}

TEST_CASE("an unendorsed re-anchored receipt is rejected") {
  sim::Simulation sim(audit_config());
  round::RoundResult r = sim.step();
  AggregateReceipt forged = r.receipt;
  forged.p_nov = "999.0";
  RoundAnchor anchor = r.anchor;
  anchor.receipt_cid = sim.store().put(forged);
  // old endorsements no longer cover the anchor body
  audit::AuditReport report = audit::verify_receipt(sim.audit_view(), anchor);
  CHECK(!report.verdict);
  bool endorsement_failed = false;
  for (const auto& c : report.checks)
    if (c.name == "anchor_endorsements" && !c.pass) endorsement_failed = true;
  CHECK(endorsement_failed);
}

TEST_CASE("even a colluding committee cannot misstate payouts") {
  sim::Simulation sim(audit_config());
  round::RoundResult r = sim.step();

  // Inflate one payout leaf by one raw unit and re-link everything.
  PayoutSet payouts =
      sim.store().get<PayoutSet>(r.anchor.payout_contributors_cid);
  payouts.entries[0].amount =
      payouts.entries[0].amount.add(FixedAmount::from_raw(1));
  RoundAnchor anchor = r.anchor;
  anchor.payout_contributors_cid = sim.store().put(payouts);
  anchor = reendorse_anchor(sim, anchor);

  audit::AuditReport report = audit::verify_receipt(sim.audit_view(), anchor);
  CHECK(!report.verdict);
  bool semantic = false;
  for (const auto& c : report.checks) {
    if ((c.name == "payout_root" || c.name == "payout_recompute" ||
         c.name == "conservation") &&
        !c.pass)
      semantic = true;
  }
  CHECK(semantic);
}

TEST_CASE("misreported dust breaks conservation") {
  sim::Simulation sim(audit_config());
  round::RoundResult r = sim.step();
  AggregateReceipt forged = r.receipt;
  forged.payout_dust_contributors = "1.5";
  RoundAnchor anchor = r.anchor;
  anchor.receipt_cid = sim.store().put(forged);
  anchor = reendorse_anchor(sim, anchor);
  audit::AuditReport report = audit::verify_receipt(sim.audit_view(), anchor);
  CHECK(!report.verdict);
  bool conservation_failed = false;
  for (const auto& c : report.checks)
    if (c.name == "conservation" && !c.pass) conservation_failed = true;
  CHECK(conservation_failed);
}

TEST_CASE("a substituted node commitment fails the combination step") {
  sim::Simulation sim(audit_config());
  round::RoundResult r = sim.step();
  agg::SumIntegrityProof proof = agg::SumIntegrityProof::decode_frame(
      sim.store().get_frame(r.receipt.proof_cid));
  // swap one node's commitment for another node's
  proof.node_commitments[0].commitment = proof.node_commitments[1].commitment;
  // colluding committee re-links and re-endorses everything
  RoundMeta meta = sim.store().get<RoundMeta>(proof.round_meta_cid);
  proof.endorsements.clear();
  Bytes body = proof.body_bytes();
  for (const auto& node : meta.committee) {
    proof.endorsements.push_back(RoundAnchor::Endorsement{
        node, crypto::schnorr_sign(*sim.env().params,
                                   sim.env().node_keys.at(node).secret, body)
                  .serialize()});
  }
  AggregateReceipt receipt = r.receipt;
  receipt.proof_cid = sim.store().put(proof);
  RoundAnchor anchor = r.anchor;
  anchor.receipt_cid = sim.store().put(receipt);
  anchor = reendorse_anchor(sim, anchor);

  audit::AuditReport report = audit::verify_receipt(sim.audit_view(), anchor);
  CHECK(!report.verdict);
  bool step2 = false, step3 = false;
  for (const auto& c : report.checks) {
    if (c.name == "proof_step2_signatures" && !c.pass) step2 = true;
    if (c.name == "proof_step3_combination" && !c.pass) step3 = true;
  }
  CHECK(step2);  // the signature no longer covers the listed commitment
  CHECK(step3);  // the product no longer opens over the masked sum
}

TEST_CASE("the reserved zk proof path is declared but not acceptable") {
  sim::Simulation sim(audit_config());
  round::RoundResult r = sim.step();
  agg::SumIntegrityProof proof = agg::SumIntegrityProof::decode_frame(
      sim.store().get_frame(r.receipt.proof_cid));
  proof.proof_path = static_cast<uint8_t>(agg::ProofPath::kZkSnark);
  RoundMeta meta = sim.store().get<RoundMeta>(proof.round_meta_cid);
  proof.endorsements.clear();
  Bytes body = proof.body_bytes();
  for (const auto& node : meta.committee) {
    proof.endorsements.push_back(RoundAnchor::Endorsement{
        node, crypto::schnorr_sign(*sim.env().params,
                                   sim.env().node_keys.at(node).secret, body)
                  .serialize()});
  }
  AggregateReceipt receipt = r.receipt;
  receipt.proof_cid = sim.store().put(proof);
  RoundAnchor anchor = r.anchor;
  anchor.receipt_cid = sim.store().put(receipt);
  anchor = reendorse_anchor(sim, anchor);
  audit::AuditReport report = audit::verify_receipt(sim.audit_view(), anchor);
  CHECK(!report.verdict);
  bool step5_failed = false;
  for (const auto& c : report.checks)
    if (c.name == "proof_step5_method" && !c.pass) step5_failed = true;
  CHECK(step5_failed);
}

TEST_CASE("a zero-receiver failed round passes vacuously") {
  sim::ScenarioConfig cfg = audit_config();
  cfg.receivers = 0;
  cfg.adversary = "proxy_failure";
  cfg.proxy_fail_round = 1;
  sim::Simulation sim(cfg);
  round::RoundResult r = sim.step();
  REQUIRE(!r.receipt.accepted());
  CHECK(r.receipt.refund_root == Hash32{});  // zero-root sentinel
  audit::AuditReport report = audit::verify_receipt(sim.audit_view(), r.anchor);
  CHECK(report.verdict);
}

TEST_CASE("homomorphic verification of a 7-node proof is fast") {
  sim::ScenarioConfig cfg = audit_config();
  cfg.contributors = 20;
  cfg.dim = 256;
  sim::Simulation sim(cfg);
  round::RoundResult r = sim.step();
  auto t0 = std::chrono::steady_clock::now();
  audit::AuditReport report = audit::verify_receipt(sim.audit_view(), r.anchor);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
  CHECK(report.verdict);
  CHECK(secs < 10.0);
}

TEST_CASE("the audit runs from public artifacts alone") {
  // The view hands the auditor the store, the policy log, the parameters
  // and the genesis validator set; node blindings, Shamir shares and
  // plaintext updates have no path into it.
  sim::Simulation sim(audit_config());
  round::RoundResult r = sim.step();
  audit::PublicView view = sim.audit_view();
  static_assert(sizeof(audit::PublicView) ==
                sizeof(const ContentStore*) + sizeof(const policy::PolicyLog*) +
                    sizeof(const crypto::GroupParams*) + sizeof(Cid));
  CHECK(audit::verify_receipt(view, r.anchor).verdict);
}

TEST_SUITE_END();
