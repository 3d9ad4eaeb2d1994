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

#include "pgot/fixed_amount.hpp"

#include "pgot/biguint.hpp"
#include "pgot/errors.hpp"

namespace pgot {

FixedAmount FixedAmount::parse(const std::string& decimal) {
  if (decimal.empty()) throw ParseError("empty amount");
  std::string whole, frac;
  bool seen_dot = false;
  for (char c : decimal) {
    if (c == '.') {
      if (seen_dot) throw ParseError("multiple decimal points");
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') throw ParseError("invalid character in amount");
    (seen_dot ? frac : whole).push_back(c);
  }
  if (whole.empty() && frac.empty()) throw ParseError("no digits in amount");
  if (whole.empty()) whole = "0";

  // raw = floor(value * 2^16) = floor(digits * 2^16 / 10^frac_len)
  BigUint digits = BigUint::from_decimal_string(whole + frac);
  BigUint scaled = digits.shl_bits(kFracBits);
  BigUint raw = frac.empty()
                    ? scaled
                    : scaled.divmod(BigUint::pow10(frac.size())).first;
  uint128_t v;
  try {
    v = raw.to_u128();
  } catch (const OverflowError&) {
    throw OverflowError("amount exceeds 2^112 whole units");
  }
  return FixedAmount::from_raw(v);
}

std::string FixedAmount::to_string() const {
  uint128_t whole = raw_ >> kFracBits;
  uint64_t frac = static_cast<uint64_t>(raw_ & (kScale - 1));
  std::string out = BigUint::from_u128(whole).to_decimal_string();
  if (frac == 0) return out;
  // frac/2^16 expands exactly as frac*5^16 over 16 decimal digits.
  uint64_t five16 = 152587890625ull;  // 5^16
  std::string digits =
      BigUint::from_u128(static_cast<uint128_t>(frac) * five16)
          .to_decimal_string();
  digits.insert(0, 16 - digits.size(), '0');
  while (digits.back() == '0') digits.pop_back();
  out.push_back('.');
  out += digits;
  return out;
}

FixedAmount FixedAmount::add(FixedAmount o) const {
  uint128_t s = raw_ + o.raw_;
  if (s < raw_) throw OverflowError("amount addition overflow");
  return FixedAmount::from_raw(s);
}

FixedAmount FixedAmount::sub(FixedAmount o) const {
  if (o.raw_ > raw_) throw OverflowError("amount subtraction underflow");
  return FixedAmount::from_raw(raw_ - o.raw_);
}

}  // namespace pgot
