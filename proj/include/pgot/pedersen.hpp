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

#ifndef PGOT_PEDERSEN_HPP_
#define PGOT_PEDERSEN_HPP_

#include <vector>

#include "pgot/field.hpp"
#include "pgot/group.hpp"

namespace pgot::crypto {

// Vector Pedersen commitment Com(v, r) = h^r * prod g_i^{v_i}.
// combine(Com(a, ra), Com(b, rb)) == Com(a + b, ra + rb) because the group
// order equals the mask field prime.
struct Commitment {
  Ge point;
  friend bool operator==(const Commitment& a, const Commitment& b) {
    return a.point == b.point;
  }
  std::array<uint8_t, 24> serialize() const { return point.serialize(); }
  static Commitment deserialize(std::span<const uint8_t> b) {
    return Commitment{Ge::deserialize(b)};
  }
};

// Throws DimensionError when vec is longer than the generator table.
Commitment pedersen_commit(const GroupParams& params, const FieldVector& vec,
                           Fe blinding);

// Group product; throws EmptyError for an empty list.
Commitment pedersen_combine(const std::vector<Commitment>& commitments);

}  // namespace pgot::crypto

#endif  // PGOT_PEDERSEN_HPP_
