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

#ifndef PGOT_GROUP_HPP_
#define PGOT_GROUP_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pgot/bytes.hpp"
#include "pgot/field.hpp"

namespace pgot::crypto {

// Prime-order group for Pedersen commitments and node signatures: the
// quadratic residues modulo the safe prime P = 2q + 1 = 2^129 - 12273,
// where q is the mask field prime. The group order therefore equals the
// mask field exactly, so exponent arithmetic and masked-sum arithmetic
// agree and the commitment homomorphism holds field-exactly.
//
// Elements are canonical residues < P stored in three 64-bit limbs.
// P is pseudo-Mersenne (2^129 ≡ 12273 mod P); reduction is shift-and-fold.
class Ge {
 public:
  constexpr Ge() : w_{1, 0, 0} {}  // multiplicative identity

  static Ge one() { return Ge(); }
  bool is_one() const { return w_[0] == 1 && w_[1] == 0 && w_[2] == 0; }

  friend Ge operator*(const Ge& a, const Ge& b) { return mul(a, b); }
  friend bool operator==(const Ge& a, const Ge& b) { return a.w_ == b.w_; }

  Ge pow(uint128_t exp) const;
  Ge pow_fe(Fe exp) const { return pow(exp.value()); }

  // 24-byte big-endian serialization; decode rejects non-canonical values.
  std::array<uint8_t, 24> serialize() const;
  static Ge deserialize(std::span<const uint8_t> bytes);

  // Maps arbitrary bytes into the subgroup by squaring a derived residue.
  static Ge map_to_group(const Hash32& digest);

  const std::array<uint64_t, 3>& limbs() const { return w_; }
  static Ge from_limbs(uint64_t w0, uint64_t w1, uint64_t w2);

 private:
  static Ge mul(const Ge& a, const Ge& b);
  std::array<uint64_t, 3> w_;  // little-endian limbs, value < P < 2^130
};

// Deterministically derived, independent generators: d vector generators,
// the blinding generator h, and the signature base. Tables for 4-bit
// windowed multi-exponentiation are precomputed per generator.
class GroupParams {
 public:
  static GroupParams derive(size_t dim, std::string_view domain_tag = "pgot/v1");

  size_t dim() const { return gens_.size(); }
  const Ge& gen(size_t i) const { return gens_[i]; }
  const Ge& h() const { return h_; }
  const Ge& sig_base() const { return sig_base_; }
  std::string_view domain_tag() const { return tag_; }

  // h^blinding * prod gen[i]^vec[i] via interleaved windowed exponentiation.
  Ge commit(const FieldVector& vec, Fe blinding) const;

 private:
  std::string tag_;
  std::vector<Ge> gens_;
  Ge h_;
  Ge sig_base_;
  // table[i][k] = base_i^(k+1), k in 0..14, bases ordered gens..., h
  std::vector<std::array<Ge, 15>> tables_;
};

Ge hash_to_group(std::string_view tag, uint64_t index);

}  // namespace pgot::crypto

#endif  // PGOT_GROUP_HPP_
