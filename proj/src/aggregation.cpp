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

#include "pgot/aggregation.hpp"

#include <algorithm>
#include <set>

#include "pgot/errors.hpp"

namespace pgot::agg {

Bytes local_sum_message(RoundId round, const crypto::Commitment& commitment) {
  CanonicalWriter w;
  w.str("pgot/local-sum");
  w.round_id(round);
  auto cb = commitment.serialize();
  w.fixed_bytes(cb);
  return w.take();
}

NodeLocalSum local_sum(const NodeId& node, const crypto::SchnorrKeyPair& key,
                       RoundId round, std::span<const MaskedUpdate> assigned,
                       size_t dim, const WeightBounds& bounds,
                       const crypto::GroupParams& params,
                       crypto::DeterministicRng& rng) {
  crypto::FieldVector sum = crypto::fv_zero(dim);
  for (const auto& u : assigned) {
    if (u.weight < bounds.w_min || bounds.w_max < u.weight)
      throw WeightPolicyError("contributor weight outside policy bounds");
    if (u.vector.size() != dim)
      throw DimensionError("masked update dimension mismatch");
    crypto::Fe w = crypto::Fe::from_u128(u.weight.raw());
    crypto::fv_add_scaled_inplace(sum, u.vector, w);
  }
  NodeLocalSum out;
  out.node = node;
  out.blinding = rng.next_fe();
  out.commitment = crypto::pedersen_commit(params, sum, out.blinding);
  out.sum = std::move(sum);
  out.signature =
      crypto::schnorr_sign(params, key.secret,
                           local_sum_message(round, out.commitment))
          .serialize();
  return out;
}

void apply_pair_mask(crypto::FieldVector& update_vec,
                     const crypto::MaskSeed& seed, const ContributorId& self,
                     FixedAmount self_weight, size_t dim) {
  if (self_weight.raw() == 0)
    throw WeightPolicyError("zero-weight contributor cannot carry masks");
  if (update_vec.size() != dim) throw DimensionError("vector dimension mismatch");
  crypto::FieldVector mask = crypto::expand_mask(seed.seed, dim);
  // The node multiplies the whole vector by w, so the mask is pre-scaled by
  // w^{-1}; pair masks then cancel in the weighted total for any weights.
  crypto::Fe w_inv = crypto::Fe::from_u128(self_weight.raw()).inverse();
  crypto::Fe scale =
      seed.sign_for(self) > 0 ? w_inv : w_inv.neg();
  crypto::fv_add_scaled_inplace(update_vec, mask, scale);
}

DropoutResult reconstruct_dropouts(RoundId round,
                                   std::vector<ContributorId> dropped,
                                   const std::vector<PairShares>& shares,
                                   size_t dim) {
  std::sort(dropped.begin(), dropped.end());
  dropped.erase(std::unique(dropped.begin(), dropped.end()), dropped.end());
  std::set<ContributorId> dropped_set(dropped.begin(), dropped.end());

  crypto::FieldVector correction = crypto::fv_zero(dim);
  for (const auto& pair : shares) {
    if (!dropped_set.count(pair.dropped))
      throw Error("pair references a contributor that did not drop");
    Hash32 seed_bytes = crypto::shamir_reconstruct(pair.shares);
    crypto::MaskSeed seed =
        crypto::MaskSeed::make(pair.survivor, pair.dropped, seed_bytes);
    crypto::FieldVector mask = crypto::expand_mask(seed.seed, dim);
    // The survivor's submission carries sign_for(survivor) * mask after
    // weighting; subtract that residual.
    crypto::Fe scale = seed.sign_for(pair.survivor) > 0
                           ? crypto::Fe::from_u64(1).neg()
                           : crypto::Fe::from_u64(1);
    crypto::fv_add_scaled_inplace(correction, mask, scale);
  }

  DropoutResult result;
  result.correction = std::move(correction);
  result.dropout_set = DropoutSet{round, dropped};
  result.reconstructed_set_commitment = cid_of(result.dropout_set);
  return result;
}

std::string robust_method_name(RobustMethod m) {
  switch (m) {
    case RobustMethod::kNone:
      return "none";
    case RobustMethod::kTrimmedMean:
      return "trimmed_mean";
    case RobustMethod::kMedian:
      return "median";
  }
  throw Error("unknown robust method");
}

RobustMethod robust_method_from_name(const std::string& name) {
  if (name == "none") return RobustMethod::kNone;
  if (name == "trimmed_mean") return RobustMethod::kTrimmedMean;
  if (name == "median") return RobustMethod::kMedian;
  throw ParseError("unknown robust method: " + name);
}

void VarianceHistory::push(double mean_variance) {
  values_.push_back(mean_variance);
  while (values_.size() > window_) values_.pop_front();
}

double VarianceHistory::percentile(int pct) const {
  if (values_.empty()) throw Error("empty variance history");
  std::vector<double> sorted(values_.begin(), values_.end());
  std::sort(sorted.begin(), sorted.end());
  size_t rank = (static_cast<size_t>(pct) * sorted.size() + 99) / 100;
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

namespace {

// Floor division toward minus infinity.
int128_t floor_div(int128_t a, int128_t b) {
  int128_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

FilterResult byzantine_filter(const std::vector<crypto::FieldVector>& node_sums,
                              const VarianceHistory& history,
                              const RobustPolicy& policy) {
  if (node_sums.empty()) throw EmptyError("no node sums");
  size_t m = node_sums.size();
  size_t dim = node_sums[0].size();
  for (const auto& s : node_sums) {
    if (s.size() != dim) throw DimensionError("node sum dimension mismatch");
  }

  // This round's statistic: mean over coordinates of the population variance
  // across node sums, under the signed lift.
  double var_acc = 0.0;
  for (size_t c = 0; c < dim; ++c) {
    double mean = 0.0;
    for (size_t j = 0; j < m; ++j)
      mean += static_cast<double>(node_sums[j][c].signed_lift());
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (size_t j = 0; j < m; ++j) {
      double d = static_cast<double>(node_sums[j][c].signed_lift()) - mean;
      var += d * d;
    }
    var_acc += var / static_cast<double>(m);
  }
  double mean_variance = dim ? var_acc / static_cast<double>(dim) : 0.0;

  bool triggered = policy.fallback != RobustMethod::kNone && !history.empty() &&
                   mean_variance > history.percentile(policy.theta_percentile);

  FilterResult result;
  result.mean_variance = mean_variance;
  result.applied = triggered ? policy.fallback : RobustMethod::kNone;
  result.output.resize(dim);

  size_t trim = 0;
  if (result.applied == RobustMethod::kTrimmedMean) {
    trim = static_cast<size_t>(policy.alpha * static_cast<double>(m));
    if (m < 2 * trim + 1)
      throw DegenerateFilterError("too few node sums for trimming");
  }

  std::vector<int128_t> lifts(m);
  for (size_t c = 0; c < dim; ++c) {
    for (size_t j = 0; j < m; ++j) lifts[j] = node_sums[j][c].signed_lift();
    int128_t value = 0;
    switch (result.applied) {
      case RobustMethod::kNone: {
        int128_t sum = 0;
        for (auto v : lifts) sum += v;
        value = floor_div(sum, static_cast<int128_t>(m));
        break;
      }
      case RobustMethod::kTrimmedMean: {
        std::sort(lifts.begin(), lifts.end());
        int128_t sum = 0;
        for (size_t j = trim; j < m - trim; ++j) sum += lifts[j];
        value = floor_div(sum, static_cast<int128_t>(m - 2 * trim));
        break;
      }
      case RobustMethod::kMedian: {
        std::sort(lifts.begin(), lifts.end());
        if (m % 2 == 1) {
          value = lifts[m / 2];
        } else {
          value = floor_div(lifts[m / 2 - 1] + lifts[m / 2], 2);
        }
        break;
      }
    }
    result.output[c] = crypto::Fe::from_signed(value);
  }
  return result;
}

static void encode_node_entry(CanonicalWriter& w,
                              const SumIntegrityProof::NodeEntry& e) {
  w.node_id(e.node);
  w.var_bytes(e.commitment);
  w.var_bytes(e.signature);
}

Bytes SumIntegrityProof::body_bytes() const {
  CanonicalWriter w;
  w.str("pgot/proof-body");
  w.round_id(round);
  w.u8(proof_path);
  w.list_count(node_commitments.size());
  for (const auto& e : node_commitments) encode_node_entry(w, e);
  w.var_bytes(combined_commitment);
  w.fixed_bytes(masked_sum_cid.digest);
  w.u128_be(combined_blinding);
  w.fixed_bytes(reconstructed_set_commitment.digest);
  w.u8(robust_method_applied);
  w.fixed_bytes(weights_root);
  w.fixed_bytes(policy_cid.digest);
  w.fixed_bytes(round_meta_cid.digest);
  return w.take();
}

void SumIntegrityProof::encode(CanonicalWriter& w) const {
  w.round_id(round);
  w.u8(proof_path);
  w.list_count(node_commitments.size());
  for (const auto& e : node_commitments) encode_node_entry(w, e);
  w.var_bytes(combined_commitment);
  w.fixed_bytes(masked_sum_cid.digest);
  w.u128_be(combined_blinding);
  w.fixed_bytes(reconstructed_set_commitment.digest);
  w.u8(robust_method_applied);
  w.fixed_bytes(weights_root);
  w.fixed_bytes(policy_cid.digest);
  w.fixed_bytes(round_meta_cid.digest);
  w.list_count(endorsements.size());
  for (const auto& e : endorsements) {
    w.node_id(e.node);
    w.var_bytes(e.signature);
  }
}

SumIntegrityProof SumIntegrityProof::decode_frame(
    std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  SumIntegrityProof p;
  p.round = r.round_id();
  p.proof_path = r.u8();
  size_t n = r.list_count();
  for (size_t i = 0; i < n; ++i) {
    NodeEntry e;
    e.node = r.node_id();
    e.commitment = r.var_bytes();
    e.signature = r.var_bytes();
    p.node_commitments.push_back(e);
  }
  p.combined_commitment = r.var_bytes();
  r.fixed_bytes(p.masked_sum_cid.digest);
  p.combined_blinding = r.u128_be();
  r.fixed_bytes(p.reconstructed_set_commitment.digest);
  p.robust_method_applied = r.u8();
  r.fixed_bytes(p.weights_root);
  r.fixed_bytes(p.policy_cid.digest);
  r.fixed_bytes(p.round_meta_cid.digest);
  n = r.list_count();
  for (size_t i = 0; i < n; ++i) {
    RoundAnchor::Endorsement e;
    e.node = r.node_id();
    e.signature = r.var_bytes();
    p.endorsements.push_back(e);
  }
  r.expect_end();
  return p;
}

SumIntegrityProof generate_proof(const ProofInputs& in,
                                 const crypto::GroupParams& params) {
  if (in.validators == nullptr) throw Error("validator set required");
  uint32_t needed = 2 * in.byzantine_f + 1;
  if (in.node_sums.size() < needed)
    throw ConsensusError("only " + std::to_string(in.node_sums.size()) +
                         " node sums, need 2f+1 = " + std::to_string(needed));

  SumIntegrityProof proof;
  proof.round = in.round;
  proof.proof_path = static_cast<uint8_t>(ProofPath::kHomomorphic);

  std::vector<crypto::Commitment> commitments;
  for (const auto& ns : in.node_sums) {
    const auto* v = in.validators->find(ns.node);
    if (v == nullptr) throw ForgeryError("unknown node in committee");
    auto pub = crypto::SchnorrPublicKey::deserialize(
        std::span<const uint8_t>(v->pubkey.data(), v->pubkey.size()));
    auto sig = crypto::SchnorrSignature::deserialize(
        std::span<const uint8_t>(ns.signature.data(), ns.signature.size()));
    Bytes msg = local_sum_message(in.round, ns.commitment);
    if (!crypto::schnorr_verify(params, pub, msg, sig))
      throw ForgeryError("invalid node signature on local commitment");
    commitments.push_back(ns.commitment);
    SumIntegrityProof::NodeEntry entry;
    entry.node = ns.node;
    auto cb = ns.commitment.serialize();
    entry.commitment = Bytes(cb.begin(), cb.end());
    entry.signature = ns.signature;
    proof.node_commitments.push_back(entry);
  }

  crypto::Commitment combined = crypto::pedersen_combine(commitments);
  // The combined commitment must open over the published masked sum with the
  // aggregated blinding; a node that signed one sum and contributed another
  // breaks this identity.
  crypto::Commitment opened =
      crypto::pedersen_commit(params, in.masked_sum, in.combined_blinding);
  if (!(combined == opened))
    throw ConsensusError("combined commitment does not open over masked sum");

  auto cb = combined.serialize();
  proof.combined_commitment = Bytes(cb.begin(), cb.end());
  proof.masked_sum_cid = in.masked_sum_cid;
  proof.combined_blinding = in.combined_blinding.value();
  proof.reconstructed_set_commitment = in.reconstructed_set_commitment;
  proof.robust_method_applied = static_cast<uint8_t>(in.method);
  proof.weights_root = in.weights_root;
  proof.policy_cid = in.policy_cid;
  proof.round_meta_cid = in.round_meta_cid;

  Bytes body = proof.body_bytes();
  for (const auto& [node, key] : in.endorsers) {
    RoundAnchor::Endorsement e;
    e.node = node;
    e.signature = crypto::schnorr_sign(params, key->secret, body).serialize();
    proof.endorsements.push_back(e);
  }
  if (proof.endorsements.size() < needed)
    throw ConsensusError("insufficient endorsements for proof finality");
  return proof;
}

}  // namespace pgot::agg
