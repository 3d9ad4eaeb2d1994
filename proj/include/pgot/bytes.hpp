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

#ifndef PGOT_BYTES_HPP_
#define PGOT_BYTES_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pgot {

using Bytes = std::vector<uint8_t>;
using Hash32 = std::array<uint8_t, 32>;

using uint128_t = unsigned __int128;
using int128_t = __int128;

std::string to_hex(const uint8_t* data, size_t len);

inline std::string to_hex(const Bytes& b) { return to_hex(b.data(), b.size()); }

inline std::string to_hex(const Hash32& h) { return to_hex(h.data(), h.size()); }

// Throws ParseError on non-hex input or odd length.
Bytes from_hex(const std::string& hex);

inline Bytes str_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

}  // namespace pgot

#endif  // PGOT_BYTES_HPP_
