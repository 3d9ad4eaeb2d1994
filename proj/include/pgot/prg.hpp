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

#ifndef PGOT_PRG_HPP_
#define PGOT_PRG_HPP_

#include <cstdint>
#include <string_view>

#include "pgot/bytes.hpp"
#include "pgot/field.hpp"
#include "pgot/identifiers.hpp"

namespace pgot::crypto {

// Pairwise mask seed. The pair is stored in canonical (lexicographic) order
// so that seed(A,B) and seed(B,A) are the same object.
struct MaskSeed {
  ContributorId low;
  ContributorId high;
  Hash32 seed{};

  static MaskSeed make(const ContributorId& a, const ContributorId& b,
                       const Hash32& seed);
  // +1 when `self` masks positively for this pair (self == low), -1 when
  // negatively. The two signs cancel in the summed aggregate.
  int sign_for(const ContributorId& self) const;
};

// SHA-256 counter-mode expansion of a 32-byte seed into `dim` field
// elements: block k = H(seed || k) yields two big-endian 128-bit values,
// each reduced into the field.
FieldVector expand_mask(const Hash32& seed, size_t dim);

// Deterministic byte/number stream for everything the simulator draws:
// SHA-256 over (seed || counter). Child streams fork via derive().
class DeterministicRng {
 public:
  explicit DeterministicRng(const Hash32& seed) : seed_(seed) {}
  static DeterministicRng from_u64(uint64_t seed);

  DeterministicRng derive(std::string_view tag) const;
  DeterministicRng derive(std::string_view tag, uint64_t v) const;
  DeterministicRng derive(std::string_view tag,
                          std::span<const uint8_t> v) const;

  uint64_t next_u64();
  uint64_t next_below(uint64_t bound);  // uniform in [0, bound)
  uint128_t next_u128();
  Fe next_fe();
  Hash32 next_hash();
  double next_unit();      // uniform in (0, 1]
  double next_gaussian();  // standard normal, Box-Muller

 private:
  void refill();
  Hash32 seed_;
  uint64_t counter_ = 0;
  Bytes buffer_;
  size_t pos_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pgot::crypto

#endif  // PGOT_PRG_HPP_
