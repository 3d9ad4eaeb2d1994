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

#ifndef PGOT_IDENTIFIERS_HPP_
#define PGOT_IDENTIFIERS_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "pgot/bytes.hpp"

namespace pgot {

// Identifier widths are part of the wire format: contributor and node ids
// serialize as exactly 32 bytes, round ids as 8-byte big-endian, cohorts as
// one byte.

struct ContributorId {
  std::array<uint8_t, 32> bytes{};
  auto operator<=>(const ContributorId&) const = default;
  std::string hex() const { return to_hex(bytes.data(), bytes.size()); }
};

struct NodeId {
  std::array<uint8_t, 32> bytes{};
  auto operator<=>(const NodeId&) const = default;
  std::string hex() const { return to_hex(bytes.data(), bytes.size()); }
};

struct RoundId {
  uint64_t value = 0;
  auto operator<=>(const RoundId&) const = default;
};

struct CohortId {
  uint8_t value = 0;
  auto operator<=>(const CohortId&) const = default;
};

}  // namespace pgot

#endif  // PGOT_IDENTIFIERS_HPP_
