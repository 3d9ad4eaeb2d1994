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

#ifndef PGOT_CID_HPP_
#define PGOT_CID_HPP_

#include <compare>
#include <string>

#include "pgot/canonical.hpp"
#include "pgot/sha256.hpp"

namespace pgot {

// Content identifier: SHA-256 of a canonical frame, rendered as
// "cid:" + 64 lowercase hex chars. Equal frames yield equal cids.
struct Cid {
  Hash32 digest{};

  auto operator<=>(const Cid&) const = default;

  std::string text() const { return "cid:" + to_hex(digest); }
  static Cid parse(const std::string& text);
  bool is_zero() const;
};

inline Cid cid_of_frame(std::span<const uint8_t> frame) {
  return Cid{sha256(frame)};
}

template <SchemaObject T>
Cid cid_of(const T& obj) {
  return cid_of_frame(canonical_bytes(obj));
}

}  // namespace pgot

#endif  // PGOT_CID_HPP_
