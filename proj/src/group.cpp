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

#include "pgot/group.hpp"

#include <cstring>

#include "pgot/canonical.hpp"
#include "pgot/errors.hpp"
#include "pgot/sha256.hpp"

namespace pgot::crypto {

namespace {

constexpr uint64_t kModC = 12273;  // 2^129 ≡ 12273 (mod P)
// P = 2^129 - 12273, little-endian limbs
constexpr std::array<uint64_t, 3> kP = {0xFFFFFFFFFFFFD00Full,
                                        0xFFFFFFFFFFFFFFFFull, 1ull};

inline int cmp_limbs(const std::array<uint64_t, 3>& a,
                     const std::array<uint64_t, 3>& b) {
  for (int i = 2; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

inline void sub_p(std::array<uint64_t, 3>& a) {
  unsigned __int128 borrow = 0;
  for (int i = 0; i < 3; ++i) {
    unsigned __int128 d =
        static_cast<unsigned __int128>(a[i]) - kP[i] - borrow;
    a[i] = static_cast<uint64_t>(d);
    borrow = (d >> 64) ? 1 : 0;  // wrapped
  }
}

// v (6 limbs) -> canonical residue < P.
std::array<uint64_t, 3> reduce384(std::array<uint64_t, 6> v) {
  // Fold twice: x = hi*2^129 + lo, x ≡ hi*12273 + lo.
  for (int pass = 0; pass < 2; ++pass) {
    // hi = v >> 129 (up to 129 bits after first pass, tiny after second)
    std::array<uint64_t, 3> hi;
    hi[0] = (v[2] >> 1) | (v[3] << 63);
    hi[1] = (v[3] >> 1) | (v[4] << 63);
    hi[2] = (v[4] >> 1) | (v[5] << 63);
    // lo = v & (2^129 - 1)
    std::array<uint64_t, 3> lo = {v[0], v[1], v[2] & 1};
    // v = hi * 12273 + lo
    unsigned __int128 carry = 0;
    for (int i = 0; i < 3; ++i) {
      unsigned __int128 t = static_cast<unsigned __int128>(hi[i]) * kModC +
                            lo[i] + carry;
      v[i] = static_cast<uint64_t>(t);
      carry = t >> 64;
    }
    v[3] = static_cast<uint64_t>(carry);
    v[4] = v[5] = 0;
  }
  std::array<uint64_t, 3> r = {v[0], v[1], v[2]};
  // After two folds the value fits 130 bits; at most two subtractions left.
  while (v[3] != 0 || cmp_limbs(r, kP) >= 0) {
    unsigned __int128 borrow = 0;
    for (int i = 0; i < 3; ++i) {
      unsigned __int128 d =
          static_cast<unsigned __int128>(r[i]) - kP[i] - borrow;
      r[i] = static_cast<uint64_t>(d);
      borrow = (d >> 64) ? 1 : 0;
    }
    if (borrow) {  // r went negative: v[3] absorbs it
      --v[3];
    }
  }
  return r;
}

}  // namespace

Ge Ge::from_limbs(uint64_t w0, uint64_t w1, uint64_t w2) {
  Ge g;
  g.w_ = {w0, w1, w2};
  while (cmp_limbs(g.w_, kP) >= 0) sub_p(g.w_);
  return g;
}

Ge Ge::mul(const Ge& a, const Ge& b) {
  std::array<uint64_t, 6> prod{};
  for (int i = 0; i < 3; ++i) {
    unsigned __int128 carry = 0;
    for (int j = 0; j < 3; ++j) {
      unsigned __int128 t =
          static_cast<unsigned __int128>(a.w_[i]) * b.w_[j] + prod[i + j] +
          carry;
      prod[i + j] = static_cast<uint64_t>(t);
      carry = t >> 64;
    }
    prod[i + 3] = static_cast<uint64_t>(carry);
  }
  Ge r;
  r.w_ = reduce384(prod);
  return r;
}

Ge Ge::pow(uint128_t exp) const {
  if (exp == 0) return Ge::one();
  // 4-bit window
  std::array<Ge, 15> table;
  table[0] = *this;
  for (int i = 1; i < 15; ++i) table[i] = table[i - 1] * (*this);
  int top = 127;
  while (top >= 0 && ((exp >> top) & 1) == 0) --top;
  int start_nibble = top / 4;
  Ge acc = Ge::one();
  bool started = false;
  for (int n = start_nibble; n >= 0; --n) {
    if (started) {
      acc = acc * acc;
      acc = acc * acc;
      acc = acc * acc;
      acc = acc * acc;
    }
    unsigned nib = static_cast<unsigned>((exp >> (4 * n)) & 0xF);
    if (nib) {
      acc = started ? acc * table[nib - 1] : table[nib - 1];
      started = true;
    } else if (!started) {
      continue;
    }
  }
  return acc;
}

std::array<uint8_t, 24> Ge::serialize() const {
  std::array<uint8_t, 24> out;
  for (int limb = 0; limb < 3; ++limb) {
    uint64_t v = w_[2 - limb];
    for (int i = 0; i < 8; ++i)
      out[limb * 8 + i] = static_cast<uint8_t>(v >> (8 * (7 - i)));
  }
  return out;
}

Ge Ge::deserialize(std::span<const uint8_t> bytes) {
  if (bytes.size() != 24) throw DecodeError("group element must be 24 bytes");
  std::array<uint64_t, 3> w{};
  for (int limb = 0; limb < 3; ++limb) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | bytes[limb * 8 + i];
    w[2 - limb] = v;
  }
  Ge g;
  g.w_ = w;
  if (cmp_limbs(w, kP) >= 0) throw DecodeError("non-canonical group element");
  return g;
}

Ge Ge::map_to_group(const Hash32& digest) {
  // Interpret as a 256-bit integer, reduce mod P, square into the subgroup.
  std::array<uint64_t, 6> wide{};
  for (int limb = 0; limb < 4; ++limb) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | digest[limb * 8 + i];
    wide[3 - limb] = v;
  }
  Ge g;
  g.w_ = reduce384(wide);
  return g * g;
}

Ge hash_to_group(std::string_view tag, uint64_t index) {
  for (uint64_t ctr = 0;; ++ctr) {
    CanonicalWriter w;
    w.str(tag);
    w.u64_be(index);
    w.u64_be(ctr);
    Ge g = Ge::map_to_group(sha256(w.bytes()));
    if (!g.is_one()) return g;
  }
}

GroupParams GroupParams::derive(size_t dim, std::string_view domain_tag) {
  GroupParams p;
  p.tag_ = std::string(domain_tag);
  p.gens_.reserve(dim);
  std::string gen_tag = p.tag_ + "/pedersen/g";
  for (size_t i = 0; i < dim; ++i)
    p.gens_.push_back(hash_to_group(gen_tag, i));
  p.h_ = hash_to_group(p.tag_ + "/pedersen/h", 0);
  p.sig_base_ = hash_to_group(p.tag_ + "/sig/base", 0);

  p.tables_.resize(dim + 1);
  for (size_t i = 0; i <= dim; ++i) {
    const Ge& base = i < dim ? p.gens_[i] : p.h_;
    p.tables_[i][0] = base;
    for (int k = 1; k < 15; ++k) p.tables_[i][k] = p.tables_[i][k - 1] * base;
  }
  return p;
}

Ge GroupParams::commit(const FieldVector& vec, Fe blinding) const {
  if (vec.size() > gens_.size())
    throw DimensionError("vector exceeds generator count");
  // Interleaved (Straus) multi-exponentiation: square the accumulator per
  // nibble position once, multiply in per-base table entries.
  Ge acc = Ge::one();
  bool any = false;
  for (int n = 31; n >= 0; --n) {
    if (any) {
      acc = acc * acc;
      acc = acc * acc;
      acc = acc * acc;
      acc = acc * acc;
    }
    for (size_t i = 0; i <= vec.size(); ++i) {
      uint128_t e = i < vec.size() ? vec[i].value() : blinding.value();
      unsigned nib = static_cast<unsigned>((e >> (4 * n)) & 0xF);
      if (nib) {
        size_t t = i < vec.size() ? i : gens_.size();
        acc = acc * tables_[t][nib - 1];
        any = true;
      }
    }
  }
  return acc;
}

}  // namespace pgot::crypto
