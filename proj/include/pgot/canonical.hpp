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

#ifndef PGOT_CANONICAL_HPP_
#define PGOT_CANONICAL_HPP_

#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "pgot/bytes.hpp"
#include "pgot/errors.hpp"
#include "pgot/identifiers.hpp"

namespace pgot {

// Canonical wire grammar shared by every schema object:
//   - integers big-endian at fixed width,
//   - byte strings and text prefixed with a 4-byte big-endian length,
//   - lists prefixed with a 4-byte big-endian count,
//   - struct fields in schema declaration order, no tags,
//   - booleans as a single 0x00/0x01 byte.
// A schema frame starts with the schema name as a length-prefixed string;
// identical objects always produce identical frames.
class CanonicalWriter {
 public:
  void u8(uint8_t v) { buf_.push_back(v); }
  void u32_be(uint32_t v);
  void u64_be(uint64_t v);
  void u128_be(uint128_t v);
  void boolean(bool v) { buf_.push_back(v ? 1 : 0); }
  void fixed_bytes(std::span<const uint8_t> b);  // width fixed by schema
  void var_bytes(std::span<const uint8_t> b);
  void str(std::string_view s);
  void list_count(size_t n);

  void contributor_id(const ContributorId& id) { fixed_bytes(id.bytes); }
  void node_id(const NodeId& id) { fixed_bytes(id.bytes); }
  void round_id(RoundId r) { u64_be(r.value); }
  void cohort_id(CohortId c) { u8(c.value); }

  const Bytes& bytes() const { return buf_; }
  Bytes take() { return std::move(buf_); }

 private:
  Bytes buf_;
};

// Mirror of CanonicalWriter with bounds checking; throws DecodeError on
// truncated or trailing input.
class CanonicalReader {
 public:
  explicit CanonicalReader(std::span<const uint8_t> data)
      : data_(data), pos_(0) {}

  uint8_t u8();
  uint32_t u32_be();
  uint64_t u64_be();
  uint128_t u128_be();
  bool boolean();
  void fixed_bytes(std::span<uint8_t> out);
  Bytes var_bytes();
  std::string str();
  size_t list_count();

  ContributorId contributor_id();
  NodeId node_id();
  RoundId round_id() { return RoundId{u64_be()}; }
  CohortId cohort_id() { return CohortId{u8()}; }

  bool at_end() const { return pos_ == data_.size(); }
  void expect_end() const;

 private:
  void need(size_t n) const;
  std::span<const uint8_t> data_;
  size_t pos_;
};

// A type is a schema object when it names itself and can write its fields.
template <typename T>
concept SchemaObject = requires(const T& t, CanonicalWriter& w) {
  { T::kSchemaName } -> std::convertible_to<std::string_view>;
  { t.encode(w) };
};

// Registry of schema names the artifact understands; frames naming anything
// else are rejected with SchemaError.
bool schema_registered(std::string_view name);
void require_registered(std::string_view name);

// Full canonical frame: length-prefixed schema name followed by the fields.
template <SchemaObject T>
Bytes canonical_bytes(const T& obj) {
  require_registered(T::kSchemaName);
  CanonicalWriter w;
  w.str(T::kSchemaName);
  obj.encode(w);
  return w.take();
}

// Reads the frame header and positions the reader at the first field.
// Throws SchemaError if the frame names a different schema.
CanonicalReader open_frame(std::span<const uint8_t> frame,
                           std::string_view expected_schema);

// Schema name carried in a frame, without decoding the body.
std::string frame_schema(std::span<const uint8_t> frame);

}  // namespace pgot

#endif  // PGOT_CANONICAL_HPP_
