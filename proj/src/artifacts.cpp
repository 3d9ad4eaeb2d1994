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

#include "pgot/artifacts.hpp"

#include <algorithm>

#include "pgot/errors.hpp"

namespace pgot {

Blob Blob::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  Blob b;
  b.data = r.var_bytes();
  r.expect_end();
  return b;
}

void DropoutSet::encode(CanonicalWriter& w) const {
  w.round_id(round);
  w.list_count(dropped.size());
  for (const auto& pid : dropped) w.contributor_id(pid);
}

DropoutSet DropoutSet::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  DropoutSet d;
  d.round = r.round_id();
  size_t n = r.list_count();
  for (size_t i = 0; i < n; ++i) d.dropped.push_back(r.contributor_id());
  r.expect_end();
  return d;
}

void WeightSet::encode(CanonicalWriter& w) const {
  w.round_id(round);
  w.list_count(entries.size());
  for (const auto& e : entries) {
    w.contributor_id(e.pid);
    w.u128_be(e.weight.raw());
  }
}

WeightSet WeightSet::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  WeightSet s;
  s.round = r.round_id();
  size_t n = r.list_count();
  for (size_t i = 0; i < n; ++i) {
    Entry e;
    e.pid = r.contributor_id();
    e.weight = FixedAmount::from_raw(r.u128_be());
    s.entries.push_back(e);
  }
  r.expect_end();
  return s;
}

Bytes WeightSet::leaf_payload(const Entry& e) {
  CanonicalWriter w;
  w.contributor_id(e.pid);
  w.u128_be(e.weight.raw());
  return w.take();
}

Hash32 WeightSet::merkle_root() const {
  std::vector<Bytes> payloads;
  payloads.reserve(entries.size());
  for (const auto& e : entries) payloads.push_back(leaf_payload(e));
  return merkle::MerkleTree::build(payloads).root();
}

void PayoutSet::encode(CanonicalWriter& w) const {
  w.round_id(round);
  w.u8(static_cast<uint8_t>(kind));
  w.list_count(entries.size());
  for (const auto& e : entries) {
    w.fixed_bytes(e.id);
    w.u128_be(e.amount.raw());
  }
}

PayoutSet PayoutSet::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  PayoutSet s;
  s.round = r.round_id();
  s.kind = static_cast<Kind>(r.u8());
  size_t n = r.list_count();
  for (size_t i = 0; i < n; ++i) {
    Entry e;
    r.fixed_bytes(e.id);
    e.amount = FixedAmount::from_raw(r.u128_be());
    s.entries.push_back(e);
  }
  r.expect_end();
  return s;
}

Bytes PayoutSet::leaf_payload(const Entry& e) {
  CanonicalWriter w;
  w.fixed_bytes(e.id);
  w.u128_be(e.amount.raw());
  return w.take();
}

Hash32 PayoutSet::merkle_root() const {
  std::vector<Bytes> payloads;
  payloads.reserve(entries.size());
  for (const auto& e : entries) payloads.push_back(leaf_payload(e));
  return merkle::MerkleTree::build(payloads).root();
}

void RefundSet::encode(CanonicalWriter& w) const {
  w.round_id(round);
  w.list_count(entries.size());
  for (const auto& e : entries) {
    w.fixed_bytes(e.id);
    w.u128_be(e.amount.raw());
  }
}

RefundSet RefundSet::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  RefundSet s;
  s.round = r.round_id();
  size_t n = r.list_count();
  for (size_t i = 0; i < n; ++i) {
    PayoutSet::Entry e;
    r.fixed_bytes(e.id);
    e.amount = FixedAmount::from_raw(r.u128_be());
    s.entries.push_back(e);
  }
  r.expect_end();
  return s;
}

Hash32 RefundSet::merkle_root() const {
  if (entries.empty()) return Hash32{};  // zero-root sentinel
  std::vector<Bytes> payloads;
  payloads.reserve(entries.size());
  for (const auto& e : entries) payloads.push_back(PayoutSet::leaf_payload(e));
  return merkle::MerkleTree::build(payloads).root();
}

static void encode_field_vector(CanonicalWriter& w,
                                const crypto::FieldVector& v) {
  w.list_count(v.size());
  for (const auto& fe : v) w.u128_be(fe.value());
}

static crypto::FieldVector decode_field_vector(CanonicalReader& r) {
  size_t n = r.list_count();
  crypto::FieldVector v;
  v.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    uint128_t raw = r.u128_be();
    if (raw >= crypto::kFieldPrime)
      throw DecodeError("non-canonical field element");
    v.push_back(crypto::Fe::from_u128(raw));
  }
  return v;
}

void MaskedVector::encode(CanonicalWriter& w) const {
  w.round_id(round);
  encode_field_vector(w, values);
}

MaskedVector MaskedVector::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  MaskedVector m;
  m.round = r.round_id();
  m.values = decode_field_vector(r);
  r.expect_end();
  return m;
}

void AggregateVector::encode(CanonicalWriter& w) const {
  w.round_id(round);
  encode_field_vector(w, values);
}

AggregateVector AggregateVector::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  AggregateVector a;
  a.round = r.round_id();
  a.values = decode_field_vector(r);
  r.expect_end();
  return a;
}

void CryptoParams::encode(CanonicalWriter& w) const {
  w.str(domain_tag);
  w.u128_be(field_prime);
  w.fixed_bytes(group_modulus_be);
  w.u32_be(dim);
}

CryptoParams CryptoParams::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  CryptoParams p;
  p.domain_tag = r.str();
  p.field_prime = r.u128_be();
  r.fixed_bytes(p.group_modulus_be);
  p.dim = r.u32_be();
  r.expect_end();
  return p;
}

void ValidatorSet::encode(CanonicalWriter& w) const {
  w.list_count(entries.size());
  for (const auto& e : entries) {
    w.node_id(e.id);
    w.var_bytes(e.pubkey);
  }
}

ValidatorSet ValidatorSet::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  ValidatorSet s;
  size_t n = r.list_count();
  for (size_t i = 0; i < n; ++i) {
    Entry e;
    e.id = r.node_id();
    e.pubkey = r.var_bytes();
    s.entries.push_back(e);
  }
  r.expect_end();
  return s;
}

const ValidatorSet::Entry* ValidatorSet::find(const NodeId& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

void RoundMeta::encode(CanonicalWriter& w) const {
  w.round_id(round);
  w.u32_be(committee_m);
  w.u32_be(byzantine_f);
  w.u32_be(share_threshold_t);
  w.fixed_bytes(validator_set_cid.digest);
  w.fixed_bytes(crypto_params_cid.digest);
  w.list_count(committee.size());
  for (const auto& n : committee) w.node_id(n);
  w.list_count(admitted.size());
  for (const auto& p : admitted) w.contributor_id(p);
  w.list_count(dropped.size());
  for (const auto& p : dropped) w.contributor_id(p);
  w.fixed_bytes(weight_set_cid.digest);
  w.list_count(reputations.size());
  for (const auto& e : reputations) {
    w.contributor_id(e.pid);
    w.str(e.rho);
  }
  w.list_count(escrows.size());
  for (const auto& e : escrows) {
    w.fixed_bytes(e.receiver);
    w.u128_be(e.amount.raw());
  }
}

RoundMeta RoundMeta::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  RoundMeta m;
  m.round = r.round_id();
  m.committee_m = r.u32_be();
  m.byzantine_f = r.u32_be();
  m.share_threshold_t = r.u32_be();
  r.fixed_bytes(m.validator_set_cid.digest);
  r.fixed_bytes(m.crypto_params_cid.digest);
  size_t n = r.list_count();
  for (size_t i = 0; i < n; ++i) m.committee.push_back(r.node_id());
  n = r.list_count();
  for (size_t i = 0; i < n; ++i) m.admitted.push_back(r.contributor_id());
  n = r.list_count();
  for (size_t i = 0; i < n; ++i) m.dropped.push_back(r.contributor_id());
  r.fixed_bytes(m.weight_set_cid.digest);
  n = r.list_count();
  for (size_t i = 0; i < n; ++i) {
    ReputationEntry e;
    e.pid = r.contributor_id();
    e.rho = r.str();
    m.reputations.push_back(e);
  }
  n = r.list_count();
  for (size_t i = 0; i < n; ++i) {
    EscrowEntry e;
    r.fixed_bytes(e.receiver);
    e.amount = FixedAmount::from_raw(r.u128_be());
    m.escrows.push_back(e);
  }
  r.expect_end();
  return m;
}

void BasisCheckpoint::encode(CanonicalWriter& w) const {
  w.round_id(round);
  w.u32_be(dim);
  w.u32_be(basis_size);
  w.list_count(ages.size());
  for (uint64_t a : ages) w.u64_be(a);
  w.list_count(columns.size());
  for (const auto& col : columns) {
    w.list_count(col.size());
    for (int64_t v : col) w.u64_be(static_cast<uint64_t>(v));
  }
}

BasisCheckpoint BasisCheckpoint::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  BasisCheckpoint b;
  b.round = r.round_id();
  b.dim = r.u32_be();
  b.basis_size = r.u32_be();
  size_t n = r.list_count();
  for (size_t i = 0; i < n; ++i) b.ages.push_back(r.u64_be());
  n = r.list_count();
  for (size_t i = 0; i < n; ++i) {
    size_t m = r.list_count();
    std::vector<int64_t> col;
    col.reserve(m);
    for (size_t j = 0; j < m; ++j)
      col.push_back(static_cast<int64_t>(r.u64_be()));
    b.columns.push_back(std::move(col));
  }
  r.expect_end();
  return b;
}

void RoundAnchor::encode(CanonicalWriter& w) const {
  w.round_id(round);
  w.fixed_bytes(receipt_cid.digest);
  w.fixed_bytes(payout_contributors_cid.digest);
  w.fixed_bytes(payout_committee_cid.digest);
  w.fixed_bytes(refund_set_cid.digest);
  w.list_count(endorsements.size());
  for (const auto& e : endorsements) {
    w.node_id(e.node);
    w.var_bytes(e.signature);
  }
}

RoundAnchor RoundAnchor::decode_frame(std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  RoundAnchor a;
  a.round = r.round_id();
  r.fixed_bytes(a.receipt_cid.digest);
  r.fixed_bytes(a.payout_contributors_cid.digest);
  r.fixed_bytes(a.payout_committee_cid.digest);
  r.fixed_bytes(a.refund_set_cid.digest);
  size_t n = r.list_count();
  for (size_t i = 0; i < n; ++i) {
    Endorsement e;
    e.node = r.node_id();
    e.signature = r.var_bytes();
    a.endorsements.push_back(e);
  }
  r.expect_end();
  return a;
}

Bytes RoundAnchor::body_bytes() const {
  CanonicalWriter w;
  w.str("pgot/anchor");
  w.round_id(round);
  w.fixed_bytes(receipt_cid.digest);
  w.fixed_bytes(payout_contributors_cid.digest);
  w.fixed_bytes(payout_committee_cid.digest);
  w.fixed_bytes(refund_set_cid.digest);
  return w.take();
}

}  // namespace pgot
