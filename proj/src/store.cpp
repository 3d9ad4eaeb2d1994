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

#include "pgot/store.hpp"

#include <filesystem>
#include <fstream>

#include "pgot/errors.hpp"

namespace pgot {

Cid ContentStore::put_frame(const Bytes& frame) {
  require_registered(frame_schema(frame));
  Cid cid = cid_of_frame(frame);
  entries_.emplace(cid, frame);
  return cid;
}

const Bytes& ContentStore::get_frame(const Cid& cid) const {
  auto it = entries_.find(cid);
  if (it == entries_.end())
    throw AvailabilityError("artifact not in content store: " + cid.text());
  return it->second;
}

void ContentStore::save_to_directory(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& [cid, frame] : entries_) {
    std::ofstream out(dir + "/" + to_hex(cid.digest), std::ios::binary);
    out.write(reinterpret_cast<const char*>(frame.data()),
              static_cast<std::streamsize>(frame.size()));
  }
}

ContentStore ContentStore::load_from_directory(const std::string& dir) {
  ContentStore store;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    Bytes frame((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
    // Keyed by the file name so deliberately tampered artifacts round-trip
    // for audit exercises; honest files hash to their names anyway.
    Cid cid;
    Bytes digest = from_hex(entry.path().filename().string());
    if (digest.size() != 32) throw ParseError("bad store file name");
    std::copy(digest.begin(), digest.end(), cid.digest.begin());
    store.entries_[cid] = std::move(frame);
  }
  return store;
}

}  // namespace pgot
