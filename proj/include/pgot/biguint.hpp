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

#ifndef PGOT_BIGUINT_HPP_
#define PGOT_BIGUINT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pgot/bytes.hpp"

namespace pgot {

// Small arbitrary-precision unsigned integer backing the exact decimal
// arithmetic of the incentive economy. Limbs are base 2^32, little-endian,
// normalized (no trailing zero limbs). Sized for monetary magnitudes, not
// cryptography; the field and group types do their own fixed-width math.
class BigUint {
 public:
  BigUint() = default;
  explicit BigUint(uint64_t v);
  static BigUint from_u128(uint128_t v);
  static BigUint pow10(uint32_t exp);

  bool is_zero() const { return limbs_.empty(); }
  // -1, 0, 1
  int cmp(const BigUint& o) const;
  bool operator==(const BigUint& o) const { return cmp(o) == 0; }
  bool operator<(const BigUint& o) const { return cmp(o) < 0; }
  bool operator<=(const BigUint& o) const { return cmp(o) <= 0; }

  BigUint add(const BigUint& o) const;
  // Throws OverflowError if o > *this (the economy never owes negative money).
  BigUint sub(const BigUint& o) const;
  BigUint mul(const BigUint& o) const;
  BigUint mul_u64(uint64_t v) const;
  // Quotient and remainder; throws Error on division by zero.
  std::pair<BigUint, BigUint> divmod(const BigUint& d) const;
  BigUint shl_bits(uint32_t bits) const;

  // Throws OverflowError when the value exceeds 128 bits.
  uint128_t to_u128() const;
  uint64_t to_u64() const;
  bool fits_u64() const { return limbs_.size() <= 2; }

  std::string to_decimal_string() const;
  // Throws ParseError unless the string is a nonempty run of digits.
  static BigUint from_decimal_string(const std::string& digits);

 private:
  void trim();
  std::vector<uint32_t> limbs_;
};

}  // namespace pgot

#endif  // PGOT_BIGUINT_HPP_
