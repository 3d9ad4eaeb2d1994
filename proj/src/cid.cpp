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

#include "pgot/cid.hpp"

#include <algorithm>

#include "pgot/errors.hpp"

namespace pgot {

Cid Cid::parse(const std::string& text) {
  if (text.rfind("cid:", 0) != 0 || text.size() != 4 + 64)
    throw ParseError("malformed cid text");
  Bytes raw = from_hex(text.substr(4));
  Cid c;
  std::copy(raw.begin(), raw.end(), c.digest.begin());
  return c;
}

bool Cid::is_zero() const {
  return std::all_of(digest.begin(), digest.end(),
                     [](uint8_t b) { return b == 0; });
}

}  // namespace pgot
