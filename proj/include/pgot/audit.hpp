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

#ifndef PGOT_AUDIT_HPP_
#define PGOT_AUDIT_HPP_

#include <string>
#include <vector>

#include "pgot/aggregation.hpp"
#include "pgot/policy.hpp"
#include "pgot/receipt.hpp"
#include "pgot/store.hpp"

namespace pgot::audit {

// Independent verification from public artifacts only. The view below is
// all an auditor ever touches: the content store, the public policy log and
// the anchor of the round under audit. No blindings, seeds or plaintext
// updates are reachable through this interface.
struct PublicView {
  const ContentStore* store = nullptr;
  const policy::PolicyLog* policy_log = nullptr;
  const crypto::GroupParams* params = nullptr;
  Cid validator_set_cid;  // published at genesis
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AuditReport {
  static constexpr std::string_view kSchemaName = "pgot.audit_report";

  Cid receipt_cid;
  std::vector<CheckResult> checks;
  bool verdict = false;  // pass iff all checks pass

  void finalize();  // computes the verdict
  std::string render_text() const;
  void encode(CanonicalWriter& w) const;
};

// Full audit of one finalized round: anchor endorsements, the five-step
// SumIntegrityProof check, policy binding, lock-period enforcement, payout
// or refund verification and exact conservation. Fetched artifacts are
// re-hashed against their cids. Throws AvailabilityError when a referenced
// artifact is missing from the store (distinct from a failed verdict).
AuditReport verify_receipt(const PublicView& view, const RoundAnchor& anchor);

// Sampling audit of k contributor payouts: recomputes each sampled reward
// from receipt economics and public round metadata, verifies Merkle
// inclusion against the payout root, then checks conservation. Appends its
// checks to `report`.
void sample_payouts(const PublicView& view, const RoundAnchor& anchor,
                    const AggregateReceipt& receipt, size_t k,
                    AuditReport& report);

// Refund verification for a Failed round: every escrow refunded in full,
// bootstrap reclaimed, pool splits zeroed.
void verify_failed_round(const PublicView& view, const RoundAnchor& anchor,
                         const AggregateReceipt& receipt, AuditReport& report);

}  // namespace pgot::audit

#endif  // PGOT_AUDIT_HPP_
