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

#ifndef PGOT_LEDGER_HPP_
#define PGOT_LEDGER_HPP_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pgot/artifacts.hpp"
#include "pgot/cid.hpp"
#include "pgot/decimal.hpp"
#include "pgot/fixed_amount.hpp"
#include "pgot/group.hpp"
#include "pgot/identifiers.hpp"
#include "pgot/schnorr.hpp"

namespace pgot::ledger {

// Object-centric state: one owned registry per contributor, writable only
// under the owner's signature with no cross-owner dependencies, plus three
// shared objects mutated through the deterministic sequencer at 2f+1
// committee approval. Gas accrues per the fixed price model:
// 0.0025 gas per owned write, 0.5 per shared write, $0.001 per gas unit.

struct ContributorRegistry {
  ContributorId pid;
  Bytes owner_pubkey;
  Decimal reputation = Decimal::parse("1.0");
  FixedAmount stake;
  double epsilon_spent = 0.0;
  std::vector<uint64_t> participation;  // round ids
  uint64_t version = 0;

  Bytes state_bytes() const;  // canonical post-state, for the event log
  static ContributorRegistry from_state_bytes(std::span<const uint8_t> b);
};

enum class SharedKind : uint8_t {
  kRoundRegistry = 0,
  kModelRegistry = 1,
  kPolicyOracle = 2,
};

struct SharedObject {
  SharedKind kind = SharedKind::kRoundRegistry;
  uint64_t version = 0;
  Cid payload;
};

struct Approval {
  NodeId node;
  Bytes signature;
};

// Exact gas bookkeeping in integer micro-gas; 1 micro-gas = 1 nano-dollar.
struct GasMeter {
  uint64_t owned_updates = 0;
  uint64_t shared_updates = 0;

  uint64_t microgas() const {
    return owned_updates * 2500 + shared_updates * 500000;
  }
  double gas_units() const { return static_cast<double>(microgas()) / 1e6; }
  double dollars() const { return static_cast<double>(microgas()) / 1e9; }
  std::string gas_units_string() const;
  std::string dollars_string() const;
};

struct GasReport {
  GasMeter meter;
  uint64_t contributors = 0;
  std::string per_contributor_dollars_string() const;
  double per_contributor_dollars() const;
};

// Pure-formula report: N owned updates plus the round's shared updates.
GasReport round_gas_report(uint64_t n_contributors, uint64_t shared_updates);

class Ledger {
 public:
  Ledger(const crypto::GroupParams& params, ValidatorSet validators,
         uint32_t byzantine_f);

  // Registry lifecycle. Creation is free (genesis provisioning).
  ContributorRegistry& create_registry(const ContributorId& pid,
                                       const Bytes& owner_pubkey,
                                       FixedAmount stake);
  const ContributorRegistry* find_registry(const ContributorId& pid) const;

  // Message the owner signs for a mutation: (pid, next version, intent).
  static Bytes owned_write_message(const ContributorId& pid,
                                   uint64_t next_version,
                                   std::span<const uint8_t> intent);

  // Applies `mutate` under the owner's signature over `intent`.
  // Throws AuthError when the signature does not verify for the owner key.
  ContributorRegistry& owned_write(
      const ContributorId& pid, std::span<const uint8_t> intent,
      const crypto::SchnorrSignature& signature,
      const std::function<void(ContributorRegistry&)>& mutate);

  // Sequencer path: needs >= 2f+1 distinct valid committee approvals over
  // (kind, next version, payload). Throws ConsensusError otherwise.
  static Bytes shared_write_message(SharedKind kind, uint64_t next_version,
                                    const Cid& payload);
  SharedObject& shared_write(SharedKind kind, const Cid& payload,
                             const std::vector<Approval>& approvals);

  const SharedObject& shared(SharedKind kind) const;
  const GasMeter& gas() const { return gas_; }
  void reset_gas_window() { gas_ = GasMeter{}; }

  // Model lineage: payload cids of every ModelRegistry append, in order.
  const std::vector<Cid>& model_lineage() const { return lineage_; }

  // Append-only event log; replaying it reproduces the state bit-exactly.
  const std::vector<Bytes>& event_log() const { return events_; }
  static Ledger replay(const crypto::GroupParams& params,
                       ValidatorSet validators, uint32_t byzantine_f,
                       const std::vector<Bytes>& events);
  Bytes state_digest() const;  // hash over all state, for replay checks

 private:
  const crypto::GroupParams& params_;
  ValidatorSet validators_;
  uint32_t byzantine_f_;
  std::map<ContributorId, ContributorRegistry> registries_;
  std::map<SharedKind, SharedObject> shared_;
  std::vector<Cid> lineage_;
  GasMeter gas_;
  std::vector<Bytes> events_;
};

}  // namespace pgot::ledger

#endif  // PGOT_LEDGER_HPP_
