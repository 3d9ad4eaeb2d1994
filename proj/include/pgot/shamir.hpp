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

#ifndef PGOT_SHAMIR_HPP_
#define PGOT_SHAMIR_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "pgot/field.hpp"
#include "pgot/identifiers.hpp"
#include "pgot/prg.hpp"

namespace pgot::crypto {

// Threshold sharing of 32-byte mask seeds over the mask field. A 256-bit
// secret does not fit one 128-bit field element, so it is decomposed into
// three sub-2^96 limbs, each shared by its own degree-(t-1) polynomial
// evaluated at common x coordinates. Any t shares reconstruct; t-1 leave
// every limb information-theoretically undetermined.
struct ShamirShare {
  NodeId holder;
  Fe x;
  std::array<Fe, 3> y;
  uint32_t threshold = 0;
};

// n shares at x = 1..n of polynomials with constant terms = secret limbs.
// Coefficients are drawn from `rng`. Throws ThresholdError if t > n or t < 1.
std::vector<ShamirShare> shamir_split(const Hash32& secret, uint32_t t,
                                      uint32_t n, DeterministicRng& rng);

// Lagrange interpolation at x = 0 from the first t distinct shares.
// Throws InsufficientSharesError with fewer than t shares and
// DuplicateShareError when two shares carry the same x.
Hash32 shamir_reconstruct(const std::vector<ShamirShare>& shares);

}  // namespace pgot::crypto

#endif  // PGOT_SHAMIR_HPP_
