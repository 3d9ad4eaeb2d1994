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

#ifndef PGOT_DECIMAL_HPP_
#define PGOT_DECIMAL_HPP_

#include <cstdint>
#include <string>

#include "pgot/biguint.hpp"
#include "pgot/fixed_amount.hpp"

namespace pgot {

// Nonnegative exact decimal: units * 10^-scale. The economy computes its
// receipt-level numbers (pool splits, novelty cap, quality pool) in this
// type so that values like 39.6 survive verbatim into receipt strings;
// conversion to the 2^-16 payout grid happens only at settlement, flooring
// with the residual recorded as dust.
class Decimal {
 public:
  Decimal() : units_(), scale_(0) {}
  static Decimal from_u64(uint64_t whole) { return Decimal(BigUint(whole), 0); }
  // "0.70", "39.6", "10" — digits with at most one point. ParseError otherwise.
  static Decimal parse(const std::string& s);
  // Exact value of a fixed-point amount (raw / 2^16).
  static Decimal from_fixed(FixedAmount a);

  bool is_zero() const { return units_.is_zero(); }
  int cmp(const Decimal& o) const;
  bool operator==(const Decimal& o) const { return cmp(o) == 0; }
  bool operator<(const Decimal& o) const { return cmp(o) < 0; }
  bool operator<=(const Decimal& o) const { return cmp(o) <= 0; }

  Decimal add(const Decimal& o) const;
  Decimal sub(const Decimal& o) const;  // OverflowError if o > *this
  Decimal mul(const Decimal& o) const;
  Decimal mul_u64(uint64_t v) const { return Decimal(units_.mul_u64(v), scale_); }

  // floor(value * 2^16) as a FixedAmount.
  FixedAmount floor_to_fixed() const;
  // floor(value * num / den * 2^16) as a FixedAmount; exact intermediate.
  FixedAmount mul_ratio_floor_fixed(const BigUint& num, const BigUint& den) const;

  // Receipt rendering: exact expansion, trailing zeros stripped, at least one
  // fractional digit, truncated (never rounded) past six fractional digits.
  std::string receipt_string() const;
  // value / divisor rendered under the same rule; used for per-node fees.
  std::string div_receipt_string(uint64_t divisor) const;
  // Full exact expansion, no truncation ("0.0000027").
  std::string exact_string() const;

  double to_double() const;

  const BigUint& units() const { return units_; }
  uint32_t scale() const { return scale_; }

 private:
  Decimal(BigUint units, uint32_t scale) : units_(std::move(units)), scale_(scale) {
    normalize();
  }
  void normalize();
  std::string render(const BigUint& units, uint32_t scale) const;

  BigUint units_;
  uint32_t scale_;
};

}  // namespace pgot

#endif  // PGOT_DECIMAL_HPP_
