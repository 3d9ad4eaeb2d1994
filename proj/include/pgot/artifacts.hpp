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

#ifndef PGOT_ARTIFACTS_HPP_
#define PGOT_ARTIFACTS_HPP_

#include <string>
#include <vector>

#include "pgot/canonical.hpp"
#include "pgot/cid.hpp"
#include "pgot/field.hpp"
#include "pgot/fixed_amount.hpp"
#include "pgot/identifiers.hpp"
#include "pgot/merkle.hpp"

namespace pgot {

// Content-store artifact schemas. Every struct here is a publicly stored,
// canonically encoded object; auditors rebuild their view of a round from
// these plus the policy log and round anchors, never from private state.

struct Blob {
  static constexpr std::string_view kSchemaName = "pgot.blob";
  Bytes data;
  void encode(CanonicalWriter& w) const { w.var_bytes(data); }
  static Blob decode_frame(std::span<const uint8_t> frame);
};

// Sorted dropout pids; its cid is the reconstructed-set commitment.
struct DropoutSet {
  static constexpr std::string_view kSchemaName = "pgot.dropout_set";
  RoundId round;
  std::vector<ContributorId> dropped;  // ascending
  void encode(CanonicalWriter& w) const;
  static DropoutSet decode_frame(std::span<const uint8_t> frame);
};

// Admitted contributor weights; leaves feed the weights_root Merkle tree.
struct WeightSet {
  static constexpr std::string_view kSchemaName = "pgot.weight_set";
  struct Entry {
    ContributorId pid;
    FixedAmount weight;
  };
  RoundId round;
  std::vector<Entry> entries;  // ascending by pid

  void encode(CanonicalWriter& w) const;
  static WeightSet decode_frame(std::span<const uint8_t> frame);
  static Bytes leaf_payload(const Entry& e);
  Hash32 merkle_root() const;  // EmptyTreeError on no entries
};

// Settled payouts for one participant class of one round.
struct PayoutSet {
  static constexpr std::string_view kSchemaName = "pgot.payout_set";
  enum class Kind : uint8_t { kContributors = 0, kCommittee = 1 };
  struct Entry {
    std::array<uint8_t, 32> id{};
    FixedAmount amount;
  };
  RoundId round;
  Kind kind = Kind::kContributors;
  std::vector<Entry> entries;  // ascending by id

  void encode(CanonicalWriter& w) const;
  static PayoutSet decode_frame(std::span<const uint8_t> frame);
  static Bytes leaf_payload(const Entry& e);
  Hash32 merkle_root() const;
};

// Receiver refunds of a failed round. An empty set has the all-zero root.
struct RefundSet {
  static constexpr std::string_view kSchemaName = "pgot.refund_set";
  RoundId round;
  std::vector<PayoutSet::Entry> entries;  // ascending by id
  void encode(CanonicalWriter& w) const;
  static RefundSet decode_frame(std::span<const uint8_t> frame);
  Hash32 merkle_root() const;
};

// Field vector artifacts: per-contributor masked adapters and the committed
// masked sum a proof opens against.
struct MaskedVector {
  static constexpr std::string_view kSchemaName = "pgot.masked_vector";
  RoundId round;
  crypto::FieldVector values;
  void encode(CanonicalWriter& w) const;
  static MaskedVector decode_frame(std::span<const uint8_t> frame);
};

// The unmasked aggregate published as the round's model-update artifact.
struct AggregateVector {
  static constexpr std::string_view kSchemaName = "pgot.aggregate_vector";
  RoundId round;
  crypto::FieldVector values;
  void encode(CanonicalWriter& w) const;
  static AggregateVector decode_frame(std::span<const uint8_t> frame);
};

// Public crypto parameters, stored once at genesis so any auditor derives
// the identical generator tables.
struct CryptoParams {
  static constexpr std::string_view kSchemaName = "pgot.crypto_params";
  std::string domain_tag;
  uint128_t field_prime = 0;
  std::array<uint8_t, 24> group_modulus_be{};
  uint32_t dim = 0;
  void encode(CanonicalWriter& w) const;
  static CryptoParams decode_frame(std::span<const uint8_t> frame);
};

// node_id -> signing key. node_id is the key fingerprint.
struct ValidatorSet {
  static constexpr std::string_view kSchemaName = "pgot.validator_set";
  struct Entry {
    NodeId id;
    Bytes pubkey;
  };
  std::vector<Entry> entries;  // ascending by id
  void encode(CanonicalWriter& w) const;
  static ValidatorSet decode_frame(std::span<const uint8_t> frame);
  const Entry* find(const NodeId& id) const;
};

// Public per-round metadata: who was admitted with what weight and
// reputation, who dropped, which committee ran the round, where escrows
// came from. Everything the auditor needs to recompute economics.
struct RoundMeta {
  static constexpr std::string_view kSchemaName = "pgot.round_meta";
  struct ReputationEntry {
    ContributorId pid;
    std::string rho;  // exact decimal in [0.8, 1.2]
  };
  struct EscrowEntry {
    std::array<uint8_t, 32> receiver{};
    FixedAmount amount;
  };
  RoundId round;
  uint32_t committee_m = 0;
  uint32_t byzantine_f = 0;
  uint32_t share_threshold_t = 0;
  Cid validator_set_cid;
  Cid crypto_params_cid;
  std::vector<NodeId> committee;          // election order
  std::vector<ContributorId> admitted;    // ascending
  std::vector<ContributorId> dropped;     // ascending
  Cid weight_set_cid;
  std::vector<ReputationEntry> reputations;  // ascending by pid
  std::vector<EscrowEntry> escrows;          // ascending by receiver

  void encode(CanonicalWriter& w) const;
  static RoundMeta decode_frame(std::span<const uint8_t> frame);
};

// Novelty basis snapshot written each round. Columns quantize to signed
// 2^-48 fixed point, finer than the monetary grid since unit vectors need
// the headroom.
struct BasisCheckpoint {
  static constexpr std::string_view kSchemaName = "pgot.basis_checkpoint";
  static constexpr int kFracBits = 48;
  RoundId round;
  uint32_t dim = 0;
  uint32_t basis_size = 0;
  std::vector<uint64_t> ages;
  std::vector<std::vector<int64_t>> columns;
  void encode(CanonicalWriter& w) const;
  static BasisCheckpoint decode_frame(std::span<const uint8_t> frame);
};

// Sequencer anchor for a finalized round: the receipt cid, the settlement
// artifacts auditors sample from, and committee endorsements over all of it.
// Stands in for on-chain finality.
struct RoundAnchor {
  static constexpr std::string_view kSchemaName = "pgot.round_anchor";
  struct Endorsement {
    NodeId node;
    Bytes signature;
  };
  RoundId round;
  Cid receipt_cid;
  Cid payout_contributors_cid;  // zero when the round failed
  Cid payout_committee_cid;
  Cid refund_set_cid;  // zero when the round was accepted
  std::vector<Endorsement> endorsements;

  void encode(CanonicalWriter& w) const;
  static RoundAnchor decode_frame(std::span<const uint8_t> frame);
  // Message the endorsements sign: everything except the endorsement list.
  Bytes body_bytes() const;
};

}  // namespace pgot

#endif  // PGOT_ARTIFACTS_HPP_
