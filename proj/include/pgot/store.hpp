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

#ifndef PGOT_STORE_HPP_
#define PGOT_STORE_HPP_

#include <map>
#include <optional>
#include <string>

#include "pgot/cid.hpp"

namespace pgot {

// Local content-addressed store standing in for the multi-provider storage
// layer. Every entry is a self-describing canonical frame keyed by its cid;
// a frame can never be modified in place, only inserted under a new cid.
class ContentStore {
 public:
  Cid put_frame(const Bytes& frame);

  template <SchemaObject T>
  Cid put(const T& obj) {
    return put_frame(canonical_bytes(obj));
  }

  // Throws AvailabilityError when the cid is unknown.
  const Bytes& get_frame(const Cid& cid) const;
  bool contains(const Cid& cid) const { return entries_.count(cid) > 0; }

  template <typename T>
  T get(const Cid& cid) const {
    return T::decode_frame(get_frame(cid));
  }

  size_t size() const { return entries_.size(); }

  // Writes one file per entry under dir/<hex cid>, and can load them back.
  void save_to_directory(const std::string& dir) const;
  static ContentStore load_from_directory(const std::string& dir);

  // Test-only escape hatch: replaces the frame stored under `cid` without
  // rehashing, modelling a storage provider serving tampered bytes.
  void tamper(const Cid& cid, Bytes frame) { entries_[cid] = std::move(frame); }
  void erase(const Cid& cid) { entries_.erase(cid); }

 private:
  std::map<Cid, Bytes> entries_;
};

}  // namespace pgot

#endif  // PGOT_STORE_HPP_
