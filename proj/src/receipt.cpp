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

#include "pgot/receipt.hpp"

namespace pgot {

void AggregateReceipt::encode(CanonicalWriter& w) const {
  w.u64_be(receipt_id);
  w.u64_be(round_id);
  w.str(round_status);

  w.str(p_receivers);
  w.str(p_bootstrap);
  w.str(p_total);
  w.boolean(bootstrap_active);
  w.str(ema_value);

  w.str(alpha_c);
  w.str(alpha_m);
  w.str(alpha_t);
  w.str(p_c);
  w.str(p_m);
  w.str(p_t);
  w.str(allocation_dust);

  w.u64_be(n_admitted);
  w.str(r_base);
  w.str(beta);
  w.str(phi_t_ema);
  w.str(novelty_cap);
  w.str(p_nov);
  w.str(p_quality);

  w.u32_be(committee_m);
  w.str(fee_committee);

  w.fixed_bytes(payout_root_contributors);
  w.fixed_bytes(payout_root_committee);
  w.str(payout_dust_contributors);
  w.str(payout_dust_committee);

  w.fixed_bytes(refund_root);
  w.str(refund_dust);
  w.str(bootstrap_reclaimed);
  w.list_count(failed_proxies.size());
  for (const auto& p : failed_proxies) {
    w.str(p.name);
    w.str(p.delta);
    w.str(p.threshold);
  }

  w.str(hash_fn);
  w.u32_be(tree_fanout);
  w.u32_be(precision_bits);
  w.str(rounding_mode);

  w.fixed_bytes(proof_cid.digest);
  w.fixed_bytes(policy_cid.digest);
}

AggregateReceipt AggregateReceipt::decode_frame(
    std::span<const uint8_t> frame) {
  CanonicalReader r = open_frame(frame, kSchemaName);
  AggregateReceipt x;
  x.receipt_id = r.u64_be();
  x.round_id = r.u64_be();
  x.round_status = r.str();

  x.p_receivers = r.str();
  x.p_bootstrap = r.str();
  x.p_total = r.str();
  x.bootstrap_active = r.boolean();
  x.ema_value = r.str();

  x.alpha_c = r.str();
  x.alpha_m = r.str();
  x.alpha_t = r.str();
  x.p_c = r.str();
  x.p_m = r.str();
  x.p_t = r.str();
  x.allocation_dust = r.str();

  x.n_admitted = r.u64_be();
  x.r_base = r.str();
  x.beta = r.str();
  x.phi_t_ema = r.str();
  x.novelty_cap = r.str();
  x.p_nov = r.str();
  x.p_quality = r.str();

  x.committee_m = r.u32_be();
  x.fee_committee = r.str();

  r.fixed_bytes(x.payout_root_contributors);
  r.fixed_bytes(x.payout_root_committee);
  x.payout_dust_contributors = r.str();
  x.payout_dust_committee = r.str();

  r.fixed_bytes(x.refund_root);
  x.refund_dust = r.str();
  x.bootstrap_reclaimed = r.str();
  size_t n = r.list_count();
  for (size_t i = 0; i < n; ++i) {
    FailedProxy p;
    p.name = r.str();
    p.delta = r.str();
    p.threshold = r.str();
    x.failed_proxies.push_back(p);
  }

  x.hash_fn = r.str();
  x.tree_fanout = r.u32_be();
  x.precision_bits = r.u32_be();
  x.rounding_mode = r.str();

  r.fixed_bytes(x.proof_cid.digest);
  r.fixed_bytes(x.policy_cid.digest);
  r.expect_end();
  return x;
}

}  // namespace pgot
