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

#ifndef PGOT_MERKLE_HPP_
#define PGOT_MERKLE_HPP_

#include <cstdint>
#include <vector>

#include "pgot/bytes.hpp"
#include "pgot/sha256.hpp"

namespace pgot::merkle {

// Binary SHA-256 Merkle tree:
//   leaf          = H(0x01 || payload)
//   internal node = H(left || right)
//   odd layers    = rightmost node duplicated
// Payout, weight and refund commitments all use these exact rules.

inline constexpr uint8_t kLeafVersion = 1;

Hash32 leaf_hash(std::span<const uint8_t> payload);

class MerkleTree {
 public:
  // Throws EmptyTreeError on an empty payload list.
  static MerkleTree build(const std::vector<Bytes>& leaf_payloads);

  const Hash32& root() const { return layers_.back().front(); }
  size_t leaf_count() const { return leaf_count_; }

  struct ProofStep {
    Hash32 sibling;
    uint8_t sibling_on_right = 0;  // 1: sibling hashes on the right
  };
  struct InclusionProof {
    uint64_t leaf_index = 0;
    std::vector<ProofStep> path;

    // index as 8-byte big-endian, then (32-byte hash, 1-byte side) pairs
    Bytes serialize() const;
    static InclusionProof deserialize(std::span<const uint8_t> data);
  };

  // Throws IndexError when leaf_index >= leaf_count (duplicated padding
  // positions are reachable via the rules but are not addressable leaves).
  InclusionProof prove(uint64_t leaf_index) const;

 private:
  MerkleTree() = default;
  size_t leaf_count_ = 0;
  std::vector<std::vector<Hash32>> layers_;
};

// True iff the path recomputed from the payload reaches the root.
bool verify(const Hash32& root, std::span<const uint8_t> leaf_payload,
            const MerkleTree::InclusionProof& proof);

}  // namespace pgot::merkle

#endif  // PGOT_MERKLE_HPP_
