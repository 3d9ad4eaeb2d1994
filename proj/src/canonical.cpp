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

#include "pgot/canonical.hpp"

#include <algorithm>
#include <array>

namespace pgot {

void CanonicalWriter::u32_be(uint32_t v) {
  for (int i = 3; i >= 0; --i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void CanonicalWriter::u64_be(uint64_t v) {
  for (int i = 7; i >= 0; --i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void CanonicalWriter::u128_be(uint128_t v) {
  for (int i = 15; i >= 0; --i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void CanonicalWriter::fixed_bytes(std::span<const uint8_t> b) {
  buf_.insert(buf_.end(), b.begin(), b.end());
}

void CanonicalWriter::var_bytes(std::span<const uint8_t> b) {
  u32_be(static_cast<uint32_t>(b.size()));
  fixed_bytes(b);
}

void CanonicalWriter::str(std::string_view s) {
  u32_be(static_cast<uint32_t>(s.size()));
  buf_.insert(buf_.end(), s.begin(), s.end());
}

void CanonicalWriter::list_count(size_t n) {
  u32_be(static_cast<uint32_t>(n));
}

void CanonicalReader::need(size_t n) const {
  if (pos_ + n > data_.size()) throw DecodeError("truncated canonical frame");
}

uint8_t CanonicalReader::u8() {
  need(1);
  return data_[pos_++];
}

uint32_t CanonicalReader::u32_be() {
  need(4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_++];
  return v;
}

uint64_t CanonicalReader::u64_be() {
  need(8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | data_[pos_++];
  return v;
}

uint128_t CanonicalReader::u128_be() {
  need(16);
  uint128_t v = 0;
  for (int i = 0; i < 16; ++i) v = (v << 8) | data_[pos_++];
  return v;
}

bool CanonicalReader::boolean() {
  uint8_t v = u8();
  if (v > 1) throw DecodeError("invalid boolean byte");
  return v == 1;
}

void CanonicalReader::fixed_bytes(std::span<uint8_t> out) {
  need(out.size());
  std::copy_n(data_.begin() + pos_, out.size(), out.begin());
  pos_ += out.size();
}

Bytes CanonicalReader::var_bytes() {
  uint32_t len = u32_be();
  need(len);
  Bytes out(data_.begin() + pos_, data_.begin() + pos_ + len);
  pos_ += len;
  return out;
}

std::string CanonicalReader::str() {
  Bytes b = var_bytes();
  return std::string(b.begin(), b.end());
}

size_t CanonicalReader::list_count() { return u32_be(); }

ContributorId CanonicalReader::contributor_id() {
  ContributorId id;
  fixed_bytes(id.bytes);
  return id;
}

NodeId CanonicalReader::node_id() {
  NodeId id;
  fixed_bytes(id.bytes);
  return id;
}

void CanonicalReader::expect_end() const {
  if (!at_end()) throw DecodeError("trailing bytes after canonical frame");
}

namespace {
constexpr std::array<std::string_view, 16> kSchemas = {
    "pgot.blob",
    "pgot.policy_bundle",
    "pgot.receipt",
    "pgot.sum_integrity_proof",
    "pgot.dropout_set",
    "pgot.weight_set",
    "pgot.payout_set",
    "pgot.refund_set",
    "pgot.round_meta",
    "pgot.validator_set",
    "pgot.basis_checkpoint",
    "pgot.masked_vector",
    "pgot.aggregate_vector",
    "pgot.crypto_params",
    "pgot.round_anchor",
    "pgot.audit_report",
};
}  // namespace

bool schema_registered(std::string_view name) {
  return std::find(kSchemas.begin(), kSchemas.end(), name) != kSchemas.end();
}

void require_registered(std::string_view name) {
  if (!schema_registered(name))
    throw SchemaError("unregistered schema: " + std::string(name));
}

CanonicalReader open_frame(std::span<const uint8_t> frame,
                           std::string_view expected_schema) {
  CanonicalReader r(frame);
  std::string name = r.str();
  if (name != expected_schema)
    throw SchemaError("frame is '" + name + "', expected '" +
                      std::string(expected_schema) + "'");
  return r;
}

std::string frame_schema(std::span<const uint8_t> frame) {
  CanonicalReader r(frame);
  return r.str();
}

}  // namespace pgot
