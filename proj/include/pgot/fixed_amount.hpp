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

#ifndef PGOT_FIXED_AMOUNT_HPP_
#define PGOT_FIXED_AMOUNT_HPP_

#include <compare>
#include <cstdint>
#include <string>

#include "pgot/bytes.hpp"

namespace pgot {

// Monetary quantity: unsigned 128-bit integer with 16 fractional bits.
// Resolution is exactly 2^-16; the integer part must fit in 112 bits.
// Amounts are never negative — slashing and refunds subtract with an
// underflow check instead.
class FixedAmount {
 public:
  static constexpr unsigned kFracBits = 16;
  static constexpr uint64_t kScale = uint64_t{1} << kFracBits;

  constexpr FixedAmount() : raw_(0) {}
  static constexpr FixedAmount from_raw(uint128_t raw) {
    return FixedAmount(raw);
  }
  static FixedAmount from_whole(uint64_t units) {
    return FixedAmount(static_cast<uint128_t>(units) << kFracBits);
  }

  // Parses a nonnegative decimal numeral ("950.0", "28.571428") and floors
  // toward zero to the 2^-16 grid. Throws ParseError on malformed input and
  // OverflowError past 2^112 whole units.
  static FixedAmount parse(const std::string& decimal);

  constexpr uint128_t raw() const { return raw_; }
  uint128_t whole_units() const { return raw_ >> kFracBits; }
  double to_double() const {
    return static_cast<double>(raw_) / static_cast<double>(kScale);
  }

  // Shortest exact decimal expansion ("700", "39.5999908447265625").
  std::string to_string() const;

  FixedAmount add(FixedAmount o) const;  // OverflowError on wrap
  FixedAmount sub(FixedAmount o) const;  // OverflowError on underflow

  auto operator<=>(const FixedAmount& o) const = default;

 private:
  explicit constexpr FixedAmount(uint128_t raw) : raw_(raw) {}
  uint128_t raw_;
};

}  // namespace pgot

#endif  // PGOT_FIXED_AMOUNT_HPP_
