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

#ifndef PGOT_SHA256_HPP_
#define PGOT_SHA256_HPP_

#include <cstdint>
#include <initializer_list>
#include <span>

#include "pgot/bytes.hpp"

namespace pgot {

// SHA-256 is the only hash in the system: Merkle trees, content addressing,
// mask expansion and signature challenges all run through it.
Hash32 sha256(std::span<const uint8_t> data);

inline Hash32 sha256(const Bytes& b) {
  return sha256(std::span<const uint8_t>(b.data(), b.size()));
}

// Hash of the concatenation of several byte chunks, without copying.
Hash32 sha256_concat(std::initializer_list<std::span<const uint8_t>> chunks);

}  // namespace pgot

#endif  // PGOT_SHA256_HPP_
