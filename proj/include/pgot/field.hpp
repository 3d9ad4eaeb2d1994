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

#ifndef PGOT_FIELD_HPP_
#define PGOT_FIELD_HPP_

#include <compare>
#include <cstdint>
#include <vector>

#include "pgot/bytes.hpp"

namespace pgot::crypto {

// Prime field F_q with q = 2^128 - 6137, the modulus for masked update
// coordinates, Shamir shares, commitment exponents and signature scalars.
// q is pseudo-Mersenne (2^128 ≡ 6137 mod q) so reduction needs no division,
// and 2q + 1 is also prime, which the commitment group relies on.
inline constexpr uint128_t kFieldC = 6137;
inline constexpr uint128_t kFieldPrime = ~uint128_t{0} - kFieldC + 1;

class Fe {
 public:
  constexpr Fe() : v_(0) {}
  // Value must already be canonical (< q) or reducible by one subtraction.
  static constexpr Fe from_u128(uint128_t v) {
    if (v >= kFieldPrime) v -= kFieldPrime;
    return Fe(v);
  }
  static constexpr Fe from_u64(uint64_t v) { return Fe(v); }

  constexpr uint128_t value() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr Fe operator+(Fe a, Fe b) {
    uint128_t s = a.v_ + b.v_;
    if (s < a.v_) s += kFieldC;  // wrapped past 2^128
    if (s >= kFieldPrime) s -= kFieldPrime;
    return Fe(s);
  }

  friend constexpr Fe operator-(Fe a, Fe b) {
    return Fe(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + (kFieldPrime - b.v_));
  }

  constexpr Fe neg() const { return Fe(v_ == 0 ? 0 : kFieldPrime - v_); }

  friend constexpr Fe operator*(Fe a, Fe b) {
    uint64_t a0 = static_cast<uint64_t>(a.v_);
    uint64_t a1 = static_cast<uint64_t>(a.v_ >> 64);
    uint64_t b0 = static_cast<uint64_t>(b.v_);
    uint64_t b1 = static_cast<uint64_t>(b.v_ >> 64);
    uint128_t lolo = static_cast<uint128_t>(a0) * b0;
    uint128_t mid1 = static_cast<uint128_t>(a0) * b1;
    uint128_t mid2 = static_cast<uint128_t>(a1) * b0;
    uint128_t hihi = static_cast<uint128_t>(a1) * b1;
    uint128_t mid = mid1 + mid2;
    uint128_t midc = (mid < mid1) ? 1 : 0;
    uint128_t lo = lolo + (mid << 64);
    uint128_t c2 = (lo < lolo) ? 1 : 0;
    uint128_t hi = hihi + (mid >> 64) + (midc << 64) + c2;
    return reduce_wide(hi, lo);
  }

  friend constexpr bool operator==(Fe a, Fe b) { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(Fe a, Fe b) { return a.v_ <=> b.v_; }

  Fe pow(uint128_t e) const;
  Fe inverse() const;  // v_ must be nonzero

  // Signed centered lift: value if <= q/2, value - q otherwise. Magnitudes
  // past 2^126 do not occur in lifted data paths.
  int128_t signed_lift() const {
    return v_ <= kFieldPrime / 2
               ? static_cast<int128_t>(v_)
               : static_cast<int128_t>(v_) -
                     static_cast<int128_t>(kFieldPrime);
  }
  static Fe from_signed(int128_t s) {
    return s >= 0 ? Fe(static_cast<uint128_t>(s))
                  : Fe(kFieldPrime - static_cast<uint128_t>(-s));
  }

 private:
  explicit constexpr Fe(uint128_t v) : v_(v) {}

  static constexpr Fe reduce_wide(uint128_t hi, uint128_t lo) {
    // hi*2^128 + lo ≡ hi*6137 + lo (mod q)
    uint64_t h0 = static_cast<uint64_t>(hi);
    uint64_t h1 = static_cast<uint64_t>(hi >> 64);
    uint128_t m0 = static_cast<uint128_t>(h0) * kFieldC;
    uint128_t m1 = static_cast<uint128_t>(h1) * kFieldC;
    uint128_t t_lo = m0 + (m1 << 64);
    uint128_t t_hi = (m1 >> 64) + ((t_lo < m0) ? 1 : 0);
    uint128_t res = t_lo + lo;
    uint128_t wraps = (res < t_lo) ? 1 : 0;
    uint128_t extra = (t_hi + wraps) * kFieldC;
    res += extra;
    if (res < extra) res += kFieldC;  // final fold cannot wrap again
    if (res >= kFieldPrime) res -= kFieldPrime;
    return Fe(res);
  }

  uint128_t v_;
};

using FieldVector = std::vector<Fe>;

// Componentwise operations over masked vectors.
FieldVector fv_add(const FieldVector& a, const FieldVector& b);
FieldVector fv_sub(const FieldVector& a, const FieldVector& b);
void fv_add_scaled_inplace(FieldVector& acc, const FieldVector& v, Fe scale);
FieldVector fv_zero(size_t dim);

}  // namespace pgot::crypto

#endif  // PGOT_FIELD_HPP_
