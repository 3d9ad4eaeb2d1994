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

#include "pgot/shamir.hpp"

#include <set>

#include "pgot/errors.hpp"

namespace pgot::crypto {

namespace {

// secret (256-bit big-endian) -> limbs of 96, 96 and 64 bits, low first.
std::array<Fe, 3> secret_limbs(const Hash32& secret) {
  auto be = [&](size_t off, size_t len) {
    uint128_t v = 0;
    for (size_t i = 0; i < len; ++i) v = (v << 8) | secret[off + i];
    return Fe::from_u128(v);
  };
  return {be(20, 12), be(8, 12), be(0, 8)};
}

Hash32 limbs_to_secret(const std::array<Fe, 3>& limbs) {
  Hash32 out{};
  auto put = [&](size_t off, size_t len, uint128_t v) {
    for (size_t i = 0; i < len; ++i)
      out[off + len - 1 - i] = static_cast<uint8_t>(v >> (8 * i));
  };
  put(20, 12, limbs[0].value());
  put(8, 12, limbs[1].value());
  put(0, 8, limbs[2].value());
  return out;
}

}  // namespace

std::vector<ShamirShare> shamir_split(const Hash32& secret, uint32_t t,
                                      uint32_t n, DeterministicRng& rng) {
  if (t < 1 || t > n) throw ThresholdError("threshold must satisfy 1 <= t <= n");
  std::array<Fe, 3> limbs = secret_limbs(secret);
  // coeffs[limb][0] = secret limb, higher coefficients random
  std::array<std::vector<Fe>, 3> coeffs;
  for (int l = 0; l < 3; ++l) {
    coeffs[l].resize(t);
    coeffs[l][0] = limbs[l];
    for (uint32_t k = 1; k < t; ++k) coeffs[l][k] = rng.next_fe();
  }
  std::vector<ShamirShare> shares(n);
  for (uint32_t i = 0; i < n; ++i) {
    Fe x = Fe::from_u64(i + 1);
    shares[i].x = x;
    shares[i].threshold = t;
    for (int l = 0; l < 3; ++l) {
      // Horner evaluation
      Fe acc;
      for (size_t k = coeffs[l].size(); k-- > 0;) acc = acc * x + coeffs[l][k];
      shares[i].y[l] = acc;
    }
  }
  return shares;
}

Hash32 shamir_reconstruct(const std::vector<ShamirShare>& shares) {
  if (shares.empty()) throw InsufficientSharesError("no shares");
  uint32_t t = shares[0].threshold;
  std::set<uint128_t> seen;
  for (const auto& s : shares) {
    if (!seen.insert(s.x.value()).second)
      throw DuplicateShareError("duplicate share x coordinate");
  }
  if (shares.size() < t)
    throw InsufficientSharesError("fewer shares than threshold");

  std::array<Fe, 3> limbs{};
  for (uint32_t i = 0; i < t; ++i) {
    // Lagrange basis at x = 0: prod_{j != i} x_j / (x_j - x_i)
    Fe num = Fe::from_u64(1);
    Fe den = Fe::from_u64(1);
    for (uint32_t j = 0; j < t; ++j) {
      if (j == i) continue;
      num = num * shares[j].x;
      den = den * (shares[j].x - shares[i].x);
    }
    Fe lambda = num * den.inverse();
    for (int l = 0; l < 3; ++l)
      limbs[l] = limbs[l] + shares[i].y[l] * lambda;
  }
  return limbs_to_secret(limbs);
}

}  // namespace pgot::crypto
