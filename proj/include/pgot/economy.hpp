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

#ifndef PGOT_ECONOMY_HPP_
#define PGOT_ECONOMY_HPP_

#include <string>
#include <vector>

#include "pgot/artifacts.hpp"
#include "pgot/decimal.hpp"
#include "pgot/fixed_amount.hpp"
#include "pgot/identifiers.hpp"

namespace pgot::econ {

// Pool-level figures are exact decimals so receipts carry values like 39.6
// verbatim; individual settlements floor to the 2^-16 grid and the lost
// residue lands in explicit dust fields. Conservation
//   P_total == P_C + P_M + P_T + dust
// therefore holds raw-exactly for every round.

// ---------------------------------------------------------------------------
// Pool formation & split
// ---------------------------------------------------------------------------

struct RoundPool {
  FixedAmount p_receivers;
  FixedAmount p_bootstrap;
  FixedAmount p_total;
  bool bootstrap_active = false;
  FixedAmount ema_value;
};

// P_receivers = sum of escrows; bootstrap subsidy 50 * (1 - round/1000)
// declining linearly to zero; ema = 0.7 * prev + 0.3 * receivers.
RoundPool form_pool(const std::vector<FixedAmount>& receiver_escrows,
                    uint64_t round, FixedAmount prev_ema);

struct PoolAlphas {
  Decimal alpha_c = Decimal::parse("0.70");
  Decimal alpha_m = Decimal::parse("0.20");
  Decimal alpha_t = Decimal::parse("0.10");
};

struct PoolAllocation {
  PoolAlphas alphas;
  FixedAmount p_c;
  FixedAmount p_m;
  FixedAmount p_t;
  FixedAmount allocation_dust;  // flooring residue, <= 3 raw units
};

// Throws AllocationError unless the alphas sum to exactly 1.
PoolAllocation split_pool(const RoundPool& pool, const PoolAlphas& alphas);

// ---------------------------------------------------------------------------
// Contributor rewards
// ---------------------------------------------------------------------------

struct RewardInput {
  ContributorId pid;
  Decimal rho;               // reputation multiplier in [0.8, 1.2]
  uint128_t novelty_weight;  // admitted weight (raw); share = weight / total
};

struct ContributorReward {
  ContributorId pid;
  FixedAmount base;     // floor(r_base * rho)
  FixedAmount quality;  // floor(P_quality * rho / sum rho)
  FixedAmount novelty;  // floor(P_nov * weight share)
  FixedAmount total;
};

struct RewardBreakdown {
  // Receipt-level exact decimals.
  Decimal base_total;   // sum_i r_base * rho_i
  Decimal novelty_cap;  // beta * (P_C - base_total)
  Decimal p_nov;        // novelty_cap * phi_ema
  Decimal p_quality;    // P_C - base_total - p_nov
  std::vector<ContributorReward> rewards;
  FixedAmount dust;  // P_C minus everything paid
};

// Splits P_C into base, novelty and quality components and settles each
// contributor. Throws InsolvencyError when the base obligations exceed P_C.
RewardBreakdown contributor_rewards(FixedAmount p_c,
                                    const std::vector<RewardInput>& inputs,
                                    const Decimal& r_base, const Decimal& beta,
                                    const Decimal& phi_ema);

// ---------------------------------------------------------------------------
// Committee fees, reputation, slashing
// ---------------------------------------------------------------------------

struct CommitteeFees {
  FixedAmount fee_per_node;  // floor(P_M / M)
  FixedAmount dust;          // P_M - M * fee
  std::string fee_string;    // exact P_M/M truncated to six decimals
};

// Throws NoFeesError unless the round was Accepted (fees are success-only).
CommitteeFees committee_fees(FixedAmount p_m, uint32_t m, bool round_accepted);

// +0.05 per successful round capped at 1.2; -0.1 under high variance,
// floored at 0.8. Variance decay takes precedence.
Decimal update_reputation(const Decimal& rho_prev, bool round_success,
                          bool high_variance);

// ---------------------------------------------------------------------------
// Payout trees & refunds
// ---------------------------------------------------------------------------

PayoutSet make_payout_set(RoundId round, PayoutSet::Kind kind,
                          std::vector<PayoutSet::Entry> entries);

struct RefundResult {
  RefundSet set;
  Hash32 refund_root{};        // zero sentinel when no receivers
  FixedAmount refund_dust;     // always zero: escrows refund verbatim
  FixedAmount bootstrap_reclaimed;
};

// Full-escrow refunds for a Failed round; the bootstrap subsidy returns to
// the treasury untouched.
RefundResult refunds(RoundId round,
                     const std::vector<PayoutSet::Entry>& receiver_escrows,
                     FixedAmount p_bootstrap);

// ---------------------------------------------------------------------------
// Slashing
// ---------------------------------------------------------------------------

enum class SlashFault : uint8_t {
  kInvalidProof = 0,            // 30% stake
  kSelectiveReconstruction = 1, // 20% stake
  kLivenessFailure = 2,         // 10% stake
};

struct SlashEvent {
  NodeId node;
  SlashFault fault;
  FixedAmount amount;
};

SlashEvent slash(const NodeId& node, FixedAmount stake, SlashFault fault);

}  // namespace pgot::econ

#endif  // PGOT_ECONOMY_HPP_
