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

#ifndef PGOT_AGGREGATION_HPP_
#define PGOT_AGGREGATION_HPP_

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "pgot/artifacts.hpp"
#include "pgot/cid.hpp"
#include "pgot/field.hpp"
#include "pgot/fixed_amount.hpp"
#include "pgot/pedersen.hpp"
#include "pgot/schnorr.hpp"
#include "pgot/shamir.hpp"

namespace pgot::agg {

// ---------------------------------------------------------------------------
// Masked updates and node-local sums
// ---------------------------------------------------------------------------

struct MaskedUpdate {
  ContributorId contributor;
  crypto::FieldVector vector;  // masked coordinates
  FixedAmount weight;
  Cid cid;  // stored masked vector artifact
};

struct NodeLocalSum {
  NodeId node;
  crypto::FieldVector sum;
  crypto::Commitment commitment;
  crypto::Fe blinding;  // node-private; never serialized into the proof
  Bytes signature;      // over (round_id, commitment)
};

struct WeightBounds {
  FixedAmount w_min = FixedAmount::from_raw(0);
  FixedAmount w_max = FixedAmount::from_whole(1u << 16);
};

Bytes local_sum_message(RoundId round, const crypto::Commitment& commitment);

// S = sum_i weight_i * v_i in the field (weights enter as raw 2^16-scaled
// integers), committed and signed by the node. WeightPolicyError when a
// weight violates the active bounds; the vector may be empty for a node
// with no assigned contributors.
NodeLocalSum local_sum(const NodeId& node, const crypto::SchnorrKeyPair& key,
                       RoundId round, std::span<const MaskedUpdate> assigned,
                       size_t dim, const WeightBounds& bounds,
                       const crypto::GroupParams& params,
                       crypto::DeterministicRng& rng);

// Pairwise mask that cancels under node-side weighting: contributor `self`
// adds sign * w_self^{-1} * expand(seed) for each pair it participates in.
void apply_pair_mask(crypto::FieldVector& update_vec,
                     const crypto::MaskSeed& seed, const ContributorId& self,
                     FixedAmount self_weight, size_t dim);

// ---------------------------------------------------------------------------
// Dropout reconstruction
// ---------------------------------------------------------------------------

struct PairShares {
  ContributorId survivor;
  ContributorId dropped;
  std::vector<crypto::ShamirShare> shares;
};

struct DropoutResult {
  crypto::FieldVector correction;
  Cid reconstructed_set_commitment;  // cid of the sorted DropoutSet
  DropoutSet dropout_set;
};

// Reconstructs each (survivor, dropped) pair seed from committee shares and
// cancels the residual masks the dropped contributors left in the sum.
// Throws InsufficientSharesError if any required pair lacks t shares.
DropoutResult reconstruct_dropouts(RoundId round,
                                   std::vector<ContributorId> dropped,
                                   const std::vector<PairShares>& shares,
                                   size_t dim);

// ---------------------------------------------------------------------------
// Byzantine-robust filtering
// ---------------------------------------------------------------------------

enum class RobustMethod : uint8_t { kNone = 0, kTrimmedMean = 1, kMedian = 2 };

std::string robust_method_name(RobustMethod m);
RobustMethod robust_method_from_name(const std::string& name);

// Rolling window of historical mean per-coordinate variance.
class VarianceHistory {
 public:
  explicit VarianceHistory(size_t window = 20) : window_(window) {}
  void push(double mean_variance);
  bool empty() const { return values_.empty(); }
  // Nearest-rank percentile of the recorded history.
  double percentile(int pct) const;

 private:
  size_t window_;
  std::deque<double> values_;
};

struct RobustPolicy {
  RobustMethod fallback = RobustMethod::kTrimmedMean;
  double alpha = 0.2;        // symmetric trim fraction
  int theta_percentile = 90; // variance trigger
};

struct FilterResult {
  crypto::FieldVector output;  // mean-scale estimate across node sums
  RobustMethod applied = RobustMethod::kNone;
  double mean_variance = 0.0;  // this round's statistic, for the history
};

// Coordinate-wise robust estimate over the node sums under the signed
// centered lift. Plain floor-mean when the variance trigger stays quiet;
// the policy's fallback method when this round's mean per-coordinate
// variance exceeds the theta percentile of history. Throws
// DegenerateFilterError when trimming needs more sums than provided.
FilterResult byzantine_filter(const std::vector<crypto::FieldVector>& node_sums,
                              const VarianceHistory& history,
                              const RobustPolicy& policy);

// ---------------------------------------------------------------------------
// SumIntegrityProof
// ---------------------------------------------------------------------------

enum class ProofPath : uint8_t {
  kHomomorphic = 0,
  kZkSnark = 1,  // reserved; generation intentionally unimplemented
};

struct SumIntegrityProof {
  static constexpr std::string_view kSchemaName = "pgot.sum_integrity_proof";

  struct NodeEntry {
    NodeId node;
    Bytes commitment;  // 24-byte serialized group element
    Bytes signature;
  };

  RoundId round;
  uint8_t proof_path = static_cast<uint8_t>(ProofPath::kHomomorphic);
  std::vector<NodeEntry> node_commitments;
  Bytes combined_commitment;
  Cid masked_sum_cid;            // opens the combined commitment
  uint128_t combined_blinding = 0;
  Cid reconstructed_set_commitment;
  uint8_t robust_method_applied = 0;
  Hash32 weights_root{};
  Cid policy_cid;
  Cid round_meta_cid;
  std::vector<RoundAnchor::Endorsement> endorsements;  // over body_bytes()

  void encode(CanonicalWriter& w) const;
  static SumIntegrityProof decode_frame(std::span<const uint8_t> frame);
  // Canonical bytes of everything except the endorsement list; this is the
  // message 2f+1 committee members must co-sign for the proof to finalize.
  Bytes body_bytes() const;
};

struct ProofInputs {
  RoundId round;
  std::vector<NodeLocalSum> node_sums;
  const ValidatorSet* validators = nullptr;
  uint32_t committee_m = 0;
  uint32_t byzantine_f = 0;
  Cid masked_sum_cid;
  crypto::FieldVector masked_sum;  // what the cid stores
  crypto::Fe combined_blinding;
  Cid reconstructed_set_commitment;
  RobustMethod method = RobustMethod::kNone;
  Hash32 weights_root{};
  Cid policy_cid;
  Cid round_meta_cid;
  // Keys of nodes endorsing the assembled body (honest committee members).
  std::vector<std::pair<NodeId, const crypto::SchnorrKeyPair*>> endorsers;
};

// Assembles and endorses the proof. Throws ForgeryError on a bad node
// signature and ConsensusError when fewer than 2f+1 sums arrive or the
// combined commitment fails to open over the masked sum artifact.
SumIntegrityProof generate_proof(const ProofInputs& in,
                                 const crypto::GroupParams& params);

}  // namespace pgot::agg

#endif  // PGOT_AGGREGATION_HPP_
