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

#include "pgot/decimal.hpp"

#include "pgot/errors.hpp"

namespace pgot {

void Decimal::normalize() {
  if (units_.is_zero()) {
    scale_ = 0;
    return;
  }
  BigUint ten(10);
  while (scale_ > 0) {
    auto [q, r] = units_.divmod(ten);
    if (!r.is_zero()) break;
    units_ = q;
    --scale_;
  }
}

Decimal Decimal::parse(const std::string& s) {
  if (s.empty()) throw ParseError("empty decimal");
  std::string whole, frac;
  bool seen_dot = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_dot) throw ParseError("multiple decimal points");
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') throw ParseError("invalid character in decimal");
    (seen_dot ? frac : whole).push_back(c);
  }
  if (whole.empty() && frac.empty()) throw ParseError("no digits in decimal");
  if (whole.empty()) whole = "0";
  return Decimal(BigUint::from_decimal_string(whole + frac),
                 static_cast<uint32_t>(frac.size()));
}

Decimal Decimal::from_fixed(FixedAmount a) {
  // raw / 2^16 == raw * 5^16 / 10^16
  BigUint five16(152587890625ull);
  return Decimal(BigUint::from_u128(a.raw()).mul(five16), 16);
}

int Decimal::cmp(const Decimal& o) const {
  uint32_t s = std::max(scale_, o.scale_);
  BigUint a = units_.mul(BigUint::pow10(s - scale_));
  BigUint b = o.units_.mul(BigUint::pow10(s - o.scale_));
  return a.cmp(b);
}

Decimal Decimal::add(const Decimal& o) const {
  uint32_t s = std::max(scale_, o.scale_);
  BigUint a = units_.mul(BigUint::pow10(s - scale_));
  BigUint b = o.units_.mul(BigUint::pow10(s - o.scale_));
  return Decimal(a.add(b), s);
}

Decimal Decimal::sub(const Decimal& o) const {
  uint32_t s = std::max(scale_, o.scale_);
  BigUint a = units_.mul(BigUint::pow10(s - scale_));
  BigUint b = o.units_.mul(BigUint::pow10(s - o.scale_));
  return Decimal(a.sub(b), s);
}

Decimal Decimal::mul(const Decimal& o) const {
  return Decimal(units_.mul(o.units_), scale_ + o.scale_);
}

FixedAmount Decimal::floor_to_fixed() const {
  BigUint raw =
      units_.shl_bits(FixedAmount::kFracBits).divmod(BigUint::pow10(scale_)).first;
  return FixedAmount::from_raw(raw.to_u128());
}

FixedAmount Decimal::mul_ratio_floor_fixed(const BigUint& num,
                                           const BigUint& den) const {
  if (den.is_zero()) throw Error("zero denominator");
  BigUint raw = units_.mul(num)
                    .shl_bits(FixedAmount::kFracBits)
                    .divmod(BigUint::pow10(scale_).mul(den))
                    .first;
  return FixedAmount::from_raw(raw.to_u128());
}

std::string Decimal::render(const BigUint& units, uint32_t scale) const {
  auto [whole, rem] = units.divmod(BigUint::pow10(scale));
  std::string digits;
  if (!rem.is_zero()) {
    digits = rem.to_decimal_string();
    digits.insert(0, scale - digits.size(), '0');
  }
  while (!digits.empty() && digits.back() == '0') digits.pop_back();
  if (digits.size() > 6) digits.resize(6);  // truncate, ties-to-zero style
  while (!digits.empty() && digits.back() == '0') digits.pop_back();
  if (digits.empty()) digits = "0";
  return whole.to_decimal_string() + "." + digits;
}

std::string Decimal::receipt_string() const { return render(units_, scale_); }

std::string Decimal::exact_string() const {
  auto [whole, rem] = units_.divmod(BigUint::pow10(scale_));
  std::string digits;
  if (!rem.is_zero()) {
    digits = rem.to_decimal_string();
    digits.insert(0, scale_ - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
  }
  if (digits.empty()) digits = "0";
  return whole.to_decimal_string() + "." + digits;
}

std::string Decimal::div_receipt_string(uint64_t divisor) const {
  if (divisor == 0) throw Error("zero divisor");
  // Compute value/divisor to six fractional digits, truncated.
  BigUint num = units_.mul(BigUint::pow10(6));
  BigUint q = num.divmod(BigUint(divisor).mul(BigUint::pow10(scale_))).first;
  return render(q, 6);
}

double Decimal::to_double() const {
  double v = 0.0;
  std::string s = units_.to_decimal_string();
  for (char c : s) v = v * 10.0 + (c - '0');
  for (uint32_t i = 0; i < scale_; ++i) v /= 10.0;
  return v;
}

}  // namespace pgot
