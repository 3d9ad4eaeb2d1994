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

#include "pgot/biguint.hpp"

#include <algorithm>

#include "pgot/errors.hpp"

namespace pgot {

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint::BigUint(uint64_t v) {
  if (v) limbs_.push_back(static_cast<uint32_t>(v));
  if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
}

BigUint BigUint::from_u128(uint128_t v) {
  BigUint r;
  while (v) {
    r.limbs_.push_back(static_cast<uint32_t>(v));
    v >>= 32;
  }
  return r;
}

BigUint BigUint::pow10(uint32_t exp) {
  BigUint r(1);
  for (uint32_t i = 0; i < exp; ++i) r = r.mul_u64(10);
  return r;
}

int BigUint::cmp(const BigUint& o) const {
  if (limbs_.size() != o.limbs_.size())
    return limbs_.size() < o.limbs_.size() ? -1 : 1;
  for (size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
  }
  return 0;
}

BigUint BigUint::add(const BigUint& o) const {
  BigUint r;
  size_t n = std::max(limbs_.size(), o.limbs_.size());
  r.limbs_.reserve(n + 1);
  uint64_t carry = 0;
  for (size_t i = 0; i < n; ++i) {
    uint64_t s = carry;
    if (i < limbs_.size()) s += limbs_[i];
    if (i < o.limbs_.size()) s += o.limbs_[i];
    r.limbs_.push_back(static_cast<uint32_t>(s));
    carry = s >> 32;
  }
  if (carry) r.limbs_.push_back(static_cast<uint32_t>(carry));
  return r;
}

BigUint BigUint::sub(const BigUint& o) const {
  if (cmp(o) < 0) throw OverflowError("BigUint subtraction underflow");
  BigUint r;
  r.limbs_.reserve(limbs_.size());
  int64_t borrow = 0;
  for (size_t i = 0; i < limbs_.size(); ++i) {
    int64_t d = static_cast<int64_t>(limbs_[i]) - borrow -
                (i < o.limbs_.size() ? static_cast<int64_t>(o.limbs_[i]) : 0);
    borrow = 0;
    if (d < 0) {
      d += (int64_t{1} << 32);
      borrow = 1;
    }
    r.limbs_.push_back(static_cast<uint32_t>(d));
  }
  r.trim();
  return r;
}

BigUint BigUint::mul(const BigUint& o) const {
  if (is_zero() || o.is_zero()) return BigUint();
  BigUint r;
  r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < o.limbs_.size(); ++j) {
      uint64_t cur = static_cast<uint64_t>(limbs_[i]) * o.limbs_[j] +
                     r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    size_t k = i + o.limbs_.size();
    while (carry) {
      uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
      ++k;
    }
  }
  r.trim();
  return r;
}

BigUint BigUint::mul_u64(uint64_t v) const { return mul(BigUint(v)); }

BigUint BigUint::shl_bits(uint32_t bits) const {
  if (is_zero()) return BigUint();
  uint32_t limb_shift = bits / 32;
  uint32_t bit_shift = bits % 32;
  BigUint r;
  r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t v = static_cast<uint64_t>(limbs_[i]) << bit_shift;
    r.limbs_[i + limb_shift] |= static_cast<uint32_t>(v);
    r.limbs_[i + limb_shift + 1] |= static_cast<uint32_t>(v >> 32);
  }
  r.trim();
  return r;
}

// Knuth algorithm D over base-2^32 limbs.
std::pair<BigUint, BigUint> BigUint::divmod(const BigUint& d) const {
  if (d.is_zero()) throw Error("BigUint division by zero");
  if (cmp(d) < 0) return {BigUint(), *this};
  if (d.limbs_.size() == 1) {
    uint64_t div = d.limbs_[0];
    BigUint q;
    q.limbs_.assign(limbs_.size(), 0);
    uint64_t rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | limbs_[i];
      q.limbs_[i] = static_cast<uint32_t>(cur / div);
      rem = cur % div;
    }
    q.trim();
    return {q, BigUint(rem)};
  }

  // Normalize so the divisor's top limb has its high bit set.
  uint32_t shift = 0;
  for (uint32_t top = d.limbs_.back(); !(top & 0x80000000u); top <<= 1) ++shift;
  BigUint u = shl_bits(shift);
  BigUint v = d.shl_bits(shift);
  size_t n = v.limbs_.size();
  size_t m = u.limbs_.size() - n;
  u.limbs_.push_back(0);

  BigUint q;
  q.limbs_.assign(m + 1, 0);
  for (size_t j = m + 1; j-- > 0;) {
    uint64_t num =
        (static_cast<uint64_t>(u.limbs_[j + n]) << 32) | u.limbs_[j + n - 1];
    uint64_t qhat = num / v.limbs_[n - 1];
    uint64_t rhat = num % v.limbs_[n - 1];
    while (qhat >> 32 ||
           qhat * static_cast<uint64_t>(v.limbs_[n - 2]) >
               ((rhat << 32) | u.limbs_[j + n - 2])) {
      --qhat;
      rhat += v.limbs_[n - 1];
      if (rhat >> 32) break;
    }
    // Multiply-subtract qhat*v from u[j..j+n].
    int64_t borrow = 0;
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
      uint64_t p = qhat * v.limbs_[i] + carry;
      carry = p >> 32;
      int64_t t = static_cast<int64_t>(u.limbs_[i + j]) -
                  static_cast<int64_t>(p & 0xffffffffu) - borrow;
      borrow = 0;
      if (t < 0) {
        t += (int64_t{1} << 32);
        borrow = 1;
      }
      u.limbs_[i + j] = static_cast<uint32_t>(t);
    }
    int64_t t = static_cast<int64_t>(u.limbs_[j + n]) -
                static_cast<int64_t>(carry) - borrow;
    if (t < 0) {
      // qhat was one too large; add v back.
      t += (int64_t{1} << 32);
      --qhat;
      uint64_t c = 0;
      for (size_t i = 0; i < n; ++i) {
        uint64_t s = static_cast<uint64_t>(u.limbs_[i + j]) + v.limbs_[i] + c;
        u.limbs_[i + j] = static_cast<uint32_t>(s);
        c = s >> 32;
      }
      t += static_cast<int64_t>(c);
      t &= 0xffffffff;
    }
    u.limbs_[j + n] = static_cast<uint32_t>(t);
    q.limbs_[j] = static_cast<uint32_t>(qhat);
  }
  q.trim();
  u.trim();
  // Undo normalization on the remainder.
  BigUint rem;
  if (!u.is_zero()) {
    rem.limbs_.assign(u.limbs_.size(), 0);
    uint32_t carry = 0;
    for (size_t i = u.limbs_.size(); i-- > 0;) {
      rem.limbs_[i] = (u.limbs_[i] >> shift) | carry;
      carry = shift ? (u.limbs_[i] << (32 - shift)) : 0;
    }
    rem.trim();
  }
  return {q, rem};
}

uint128_t BigUint::to_u128() const {
  if (limbs_.size() > 4) throw OverflowError("BigUint exceeds 128 bits");
  uint128_t v = 0;
  for (size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
  return v;
}

uint64_t BigUint::to_u64() const {
  if (limbs_.size() > 2) throw OverflowError("BigUint exceeds 64 bits");
  uint64_t v = 0;
  for (size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
  return v;
}

std::string BigUint::to_decimal_string() const {
  if (is_zero()) return "0";
  std::string out;
  BigUint cur = *this;
  BigUint ten(10);
  while (!cur.is_zero()) {
    auto [q, r] = cur.divmod(ten);
    out.push_back(static_cast<char>('0' + (r.is_zero() ? 0 : r.limbs_[0])));
    cur = q;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

BigUint BigUint::from_decimal_string(const std::string& digits) {
  if (digits.empty()) throw ParseError("empty numeral");
  BigUint r;
  for (char c : digits) {
    if (c < '0' || c > '9') throw ParseError("invalid digit in numeral");
    r = r.mul_u64(10).add(BigUint(static_cast<uint64_t>(c - '0')));
  }
  return r;
}

}  // namespace pgot
