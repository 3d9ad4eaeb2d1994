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

#include "pgot/prg.hpp"

#include <cmath>
#include <cstring>

#include "pgot/canonical.hpp"
#include "pgot/sha256.hpp"

namespace pgot::crypto {

MaskSeed MaskSeed::make(const ContributorId& a, const ContributorId& b,
                        const Hash32& seed) {
  MaskSeed m;
  if (a < b) {
    m.low = a;
    m.high = b;
  } else {
    m.low = b;
    m.high = a;
  }
  m.seed = seed;
  return m;
}

int MaskSeed::sign_for(const ContributorId& self) const {
  return self == low ? 1 : -1;
}

static uint128_t be128(const uint8_t* p) {
  uint128_t v = 0;
  for (int i = 0; i < 16; ++i) v = (v << 8) | p[i];
  return v;
}

FieldVector expand_mask(const Hash32& seed, size_t dim) {
  FieldVector out;
  out.reserve(dim);
  uint8_t msg[40];
  std::memcpy(msg, seed.data(), 32);
  for (uint64_t k = 0; out.size() < dim; ++k) {
    for (int i = 0; i < 8; ++i)
      msg[32 + i] = static_cast<uint8_t>(k >> (8 * (7 - i)));
    Hash32 block = sha256(std::span<const uint8_t>(msg, sizeof(msg)));
    out.push_back(Fe::from_u128(be128(block.data())));
    if (out.size() < dim) out.push_back(Fe::from_u128(be128(block.data() + 16)));
  }
  return out;
}

DeterministicRng DeterministicRng::from_u64(uint64_t seed) {
  CanonicalWriter w;
  w.str("pgot/rng/root");
  w.u64_be(seed);
  return DeterministicRng(sha256(w.bytes()));
}

DeterministicRng DeterministicRng::derive(std::string_view tag) const {
  CanonicalWriter w;
  w.fixed_bytes(seed_);
  w.str(tag);
  return DeterministicRng(sha256(w.bytes()));
}

DeterministicRng DeterministicRng::derive(std::string_view tag,
                                          uint64_t v) const {
  CanonicalWriter w;
  w.fixed_bytes(seed_);
  w.str(tag);
  w.u64_be(v);
  return DeterministicRng(sha256(w.bytes()));
}

DeterministicRng DeterministicRng::derive(std::string_view tag,
                                          std::span<const uint8_t> v) const {
  CanonicalWriter w;
  w.fixed_bytes(seed_);
  w.str(tag);
  w.var_bytes(v);
  return DeterministicRng(sha256(w.bytes()));
}

void DeterministicRng::refill() {
  uint8_t msg[40];
  std::memcpy(msg, seed_.data(), 32);
  for (int i = 0; i < 8; ++i)
    msg[32 + i] = static_cast<uint8_t>(counter_ >> (8 * (7 - i)));
  ++counter_;
  Hash32 block = sha256(std::span<const uint8_t>(msg, sizeof(msg)));
  buffer_.assign(block.begin(), block.end());
  pos_ = 0;
}

uint64_t DeterministicRng::next_u64() {
  if (pos_ + 8 > buffer_.size()) refill();
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | buffer_[pos_++];
  return v;
}

uint64_t DeterministicRng::next_below(uint64_t bound) {
  if (bound == 0) return 0;
  // Rejection sampling over the largest multiple of bound.
  uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  for (;;) {
    uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

uint128_t DeterministicRng::next_u128() {
  uint128_t hi = next_u64();
  return (hi << 64) | next_u64();
}

Fe DeterministicRng::next_fe() { return Fe::from_u128(next_u128()); }

Hash32 DeterministicRng::next_hash() {
  Hash32 h;
  for (size_t i = 0; i < 32; i += 8) {
    uint64_t v = next_u64();
    for (int j = 0; j < 8; ++j)
      h[i + j] = static_cast<uint8_t>(v >> (8 * (7 - j)));
  }
  return h;
}

double DeterministicRng::next_unit() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
}

double DeterministicRng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_unit();
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace pgot::crypto
