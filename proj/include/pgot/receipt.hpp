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

#ifndef PGOT_RECEIPT_HPP_
#define PGOT_RECEIPT_HPP_

#include <string>
#include <vector>

#include "pgot/canonical.hpp"
#include "pgot/cid.hpp"

namespace pgot {

// The round's public economic record. Monetary fields are string-encoded
// exact decimals; Accepted rounds carry payout roots and dust, Failed rounds
// carry the refund structures instead and zero out the pool splits.
struct AggregateReceipt {
  static constexpr std::string_view kSchemaName = "pgot.receipt";

  struct FailedProxy {
    std::string name;
    std::string delta;      // decimal string, candidate minus baseline
    std::string threshold;  // decimal string
  };

  // identifiers
  uint64_t receipt_id = 0;
  uint64_t round_id = 0;
  std::string round_status;  // "Accepted" | "Failed(<reason>)"

  // pool formation
  std::string p_receivers = "0.0";
  std::string p_bootstrap = "0.0";
  std::string p_total = "0.0";
  bool bootstrap_active = false;
  std::string ema_value = "0.0";

  // pool allocation
  std::string alpha_c = "0.70";
  std::string alpha_m = "0.20";
  std::string alpha_t = "0.10";
  std::string p_c = "0.0";
  std::string p_m = "0.0";
  std::string p_t = "0.0";
  std::string allocation_dust = "0.0";

  // contributor economics
  uint64_t n_admitted = 0;
  std::string r_base = "0.01";
  std::string beta = "0.3";
  std::string phi_t_ema = "0.0";
  std::string novelty_cap = "0.0";
  std::string p_nov = "0.0";
  std::string p_quality = "0.0";

  // committee economics
  uint32_t committee_m = 0;
  std::string fee_committee = "0.0";

  // payout commitments (Accepted)
  Hash32 payout_root_contributors{};
  Hash32 payout_root_committee{};
  std::string payout_dust_contributors = "0.0";
  std::string payout_dust_committee = "0.0";

  // failed-round structures
  Hash32 refund_root{};
  std::string refund_dust = "0.0";
  std::string bootstrap_reclaimed = "0.0";
  std::vector<FailedProxy> failed_proxies;

  // encoding constants
  std::string hash_fn = "sha256";
  uint32_t tree_fanout = 2;
  uint32_t precision_bits = 16;
  std::string rounding_mode = "ties_to_zero";

  // references
  Cid proof_cid;
  Cid policy_cid;

  bool accepted() const { return round_status == "Accepted"; }

  void encode(CanonicalWriter& w) const;
  static AggregateReceipt decode_frame(std::span<const uint8_t> frame);
};

}  // namespace pgot

#endif  // PGOT_RECEIPT_HPP_
