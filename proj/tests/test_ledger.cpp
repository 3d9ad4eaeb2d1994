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

#include <algorithm>
#include <memory>

#include "pgot/errors.hpp"
#include "pgot/ledger.hpp"

using namespace pgot;
using namespace pgot::ledger;
using crypto::DeterministicRng;

namespace {

struct World {
  crypto::GroupParams params = crypto::GroupParams::derive(1);
  ValidatorSet validators;
  std::map<NodeId, crypto::SchnorrKeyPair> node_keys;
  std::vector<crypto::SchnorrKeyPair> owner_keys;
  std::vector<ContributorId> pids;
  std::unique_ptr<Ledger> ledger;

  explicit World(size_t owners = 3, size_t nodes = 7) {
    DeterministicRng rng = DeterministicRng::from_u64(90);
    for (size_t i = 0; i < nodes; ++i) {
      auto key = crypto::SchnorrKeyPair::generate(params, rng);
      NodeId id;
      id.bytes = crypto::key_fingerprint(key.pub);
      validators.entries.push_back(
          ValidatorSet::Entry{id, key.pub.serialize()});
      node_keys[id] = key;
    }
    ledger = std::make_unique<Ledger>(params, validators, 2);
    for (size_t i = 0; i < owners; ++i) {
      auto key = crypto::SchnorrKeyPair::generate(params, rng);
      ContributorId pid;
      pid.bytes = crypto::key_fingerprint(key.pub);
      owner_keys.push_back(key);
      pids.push_back(pid);
      ledger->create_registry(pid, key.pub.serialize(),
                              FixedAmount::from_whole(10));
    }
  }

  crypto::SchnorrSignature sign_write(size_t owner, const Bytes& intent) {
    const auto* reg = ledger->find_registry(pids[owner]);
    Bytes msg =
        Ledger::owned_write_message(pids[owner], reg->version + 1, intent);
    return crypto::schnorr_sign(params, owner_keys[owner].secret, msg);
  }

  std::vector<Approval> approvals(SharedKind kind, const Cid& payload,
                                  size_t count) {
    Bytes msg = Ledger::shared_write_message(
        kind, ledger->shared(kind).version + 1, payload);
    std::vector<Approval> out;
    for (const auto& v : validators.entries) {
      if (out.size() == count) break;
      out.push_back(Approval{
          v.id, crypto::schnorr_sign(params, node_keys[v.id].secret, msg)
                    .serialize()});
    }
    return out;
  }
};

}  // namespace

TEST_SUITE_BEGIN("ledger");

TEST_CASE("owned writes need the owner's signature") {
  World w;
  Bytes intent = str_bytes("bump");
  auto sig = w.sign_write(0, intent);
  auto& reg = w.ledger->owned_write(w.pids[0], intent, sig,
                                    [](ContributorRegistry& r) {
                                      r.reputation = Decimal::parse("1.05");
                                    });
  CHECK(reg.version == 1);
  CHECK(reg.reputation.exact_string() == "1.05");
  CHECK(w.ledger->gas().owned_updates == 1);

  // a write signed by a different owner fails
  const auto* r1 = w.ledger->find_registry(w.pids[1]);
  Bytes msg = Ledger::owned_write_message(w.pids[1], r1->version + 1, intent);
  auto wrong = crypto::schnorr_sign(w.params, w.owner_keys[0].secret, msg);
  CHECK_THROWS_AS(
      w.ledger->owned_write(w.pids[1], intent, wrong,
                            [](ContributorRegistry&) {}),
      AuthError);
}

TEST_CASE("shared writes require 2f+1 approvals") {
  World w;
  Cid payload = cid_of_frame(str_bytes("payload"));
  CHECK_THROWS_AS(
      w.ledger->shared_write(SharedKind::kRoundRegistry, payload,
                             w.approvals(SharedKind::kRoundRegistry, payload, 4)),
      ConsensusError);
  auto& obj = w.ledger->shared_write(
      SharedKind::kRoundRegistry, payload,
      w.approvals(SharedKind::kRoundRegistry, payload, 5));
  CHECK(obj.version == 1);
  CHECK(obj.payload == payload);
  CHECK(w.ledger->gas().shared_updates == 1);
}

TEST_CASE("shared versions are strictly monotone and gap-free") {
  World w;
  std::vector<uint64_t> versions;
  for (int i = 0; i < 5; ++i) {
    Cid payload = cid_of_frame(str_bytes("v" + std::to_string(i)));
    auto& obj = w.ledger->shared_write(
        SharedKind::kModelRegistry, payload,
        w.approvals(SharedKind::kModelRegistry, payload, 7));
    versions.push_back(obj.version);
  }
  for (size_t i = 0; i < versions.size(); ++i) CHECK(versions[i] == i + 1);
  CHECK(w.ledger->model_lineage().size() == 5);
}

TEST_CASE("gas model: the documented totals") {
  CHECK(round_gas_report(10000, 4).meter.gas_units() == 27.0);
  CHECK(round_gas_report(10000, 4).meter.gas_units_string() == "27.0");
  CHECK(round_gas_report(10000, 4).meter.dollars_string() == "0.027");
  CHECK(round_gas_report(10000, 4).per_contributor_dollars_string() ==
        "0.0000027");
  CHECK(round_gas_report(10000, 0).meter.gas_units() == 25.0);
  CHECK(round_gas_report(0, 0).meter.microgas() == 0);
  CHECK(round_gas_report(100, 4).meter.gas_units() == 2.25);
}

TEST_CASE("gas is affine in the contributor count with slope 0.0025") {
  // slope in exact micro-gas: 2500 per contributor
  uint64_t prev = round_gas_report(0, 4).meter.microgas();
  for (uint64_t n : {10ull, 100ull, 1000ull, 10000ull}) {
    uint64_t cur = round_gas_report(n, 4).meter.microgas();
    CHECK(cur - round_gas_report(0, 4).meter.microgas() == n * 2500);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("owned writes to distinct registries commute") {
  // K <= 5 writes applied in every permutation end in the same state.
  std::vector<size_t> order = {0, 1, 2};
  std::vector<Bytes> digests;
  do {
    World w;
    for (size_t k : order) {
      Bytes intent = str_bytes("set-" + std::to_string(k));
      auto sig = w.sign_write(k, intent);
      w.ledger->owned_write(w.pids[k], intent, sig,
                            [k](ContributorRegistry& r) {
                              r.stake = FixedAmount::from_whole(100 + k);
                              r.participation.push_back(k);
                            });
    }
    digests.push_back(w.ledger->state_digest());
  } while (std::next_permutation(order.begin(), order.end()));
  for (const auto& d : digests) CHECK(d == digests.front());
}

TEST_CASE("replaying the event log reproduces the state bit-exactly") {
  World w;
  for (int i = 0; i < 3; ++i) {
    Bytes intent = str_bytes("round-" + std::to_string(i));
    auto sig = w.sign_write(i % w.pids.size(), intent);
    w.ledger->owned_write(w.pids[i % w.pids.size()], intent, sig,
                          [i](ContributorRegistry& r) {
                            r.participation.push_back(i);
                            r.reputation =
                                r.reputation.add(Decimal::parse("0.05"));
                          });
    Cid payload = cid_of_frame(str_bytes("m" + std::to_string(i)));
    w.ledger->shared_write(SharedKind::kModelRegistry, payload,
                           w.approvals(SharedKind::kModelRegistry, payload, 5));
  }
  Ledger replayed = Ledger::replay(w.params, w.validators, 2,
                                   w.ledger->event_log());
  CHECK(replayed.state_digest() == w.ledger->state_digest());
}

TEST_SUITE_END();
