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

#include "pgot/merkle.hpp"

#include "pgot/canonical.hpp"
#include "pgot/errors.hpp"

namespace pgot::merkle {

Hash32 leaf_hash(std::span<const uint8_t> payload) {
  uint8_t version = kLeafVersion;
  return sha256_concat({std::span<const uint8_t>(&version, 1), payload});
}

static Hash32 parent(const Hash32& left, const Hash32& right) {
  return sha256_concat({std::span<const uint8_t>(left.data(), left.size()),
                        std::span<const uint8_t>(right.data(), right.size())});
}

MerkleTree MerkleTree::build(const std::vector<Bytes>& leaf_payloads) {
  if (leaf_payloads.empty()) throw EmptyTreeError("no leaves");
  MerkleTree t;
  t.leaf_count_ = leaf_payloads.size();
  std::vector<Hash32> layer;
  layer.reserve(leaf_payloads.size());
  for (const auto& p : leaf_payloads) layer.push_back(leaf_hash(p));
  t.layers_.push_back(layer);
  while (t.layers_.back().size() > 1) {
    auto& below = t.layers_.back();
    if (below.size() % 2 != 0) below.push_back(below.back());
    std::vector<Hash32> above;
    above.reserve(below.size() / 2);
    for (size_t i = 0; i < below.size(); i += 2)
      above.push_back(parent(below[i], below[i + 1]));
    t.layers_.push_back(std::move(above));
  }
  return t;
}

MerkleTree::InclusionProof MerkleTree::prove(uint64_t leaf_index) const {
  if (leaf_index >= leaf_count_) throw IndexError("leaf index out of range");
  InclusionProof proof;
  proof.leaf_index = leaf_index;
  size_t idx = leaf_index;
  for (size_t level = 0; level + 1 < layers_.size(); ++level) {
    const auto& layer = layers_[level];
    size_t sibling = (idx % 2 == 0) ? idx + 1 : idx - 1;
    ProofStep step;
    step.sibling = layer[sibling];
    step.sibling_on_right = (idx % 2 == 0) ? 1 : 0;
    proof.path.push_back(step);
    idx /= 2;
  }
  return proof;
}

bool verify(const Hash32& root, std::span<const uint8_t> leaf_payload,
            const MerkleTree::InclusionProof& proof) {
  Hash32 cur = leaf_hash(leaf_payload);
  for (const auto& step : proof.path) {
    cur = step.sibling_on_right ? parent(cur, step.sibling)
                                : parent(step.sibling, cur);
  }
  return cur == root;
}

Bytes MerkleTree::InclusionProof::serialize() const {
  CanonicalWriter w;
  w.u64_be(leaf_index);
  for (const auto& step : path) {
    w.fixed_bytes(step.sibling);
    w.u8(step.sibling_on_right);
  }
  return w.take();
}

MerkleTree::InclusionProof MerkleTree::InclusionProof::deserialize(
    std::span<const uint8_t> data) {
  if (data.size() < 8 || (data.size() - 8) % 33 != 0)
    throw DecodeError("malformed inclusion proof");
  CanonicalReader r(data);
  InclusionProof proof;
  proof.leaf_index = r.u64_be();
  size_t steps = (data.size() - 8) / 33;
  for (size_t i = 0; i < steps; ++i) {
    ProofStep step;
    r.fixed_bytes(step.sibling);
    step.sibling_on_right = r.u8();
    proof.path.push_back(step);
  }
  return proof;
}

}  // namespace pgot::merkle
