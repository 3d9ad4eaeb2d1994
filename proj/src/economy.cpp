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

#include "pgot/economy.hpp"

#include <algorithm>

#include "pgot/errors.hpp"

namespace pgot::econ {

namespace {

// floor(amount * frac) on the raw grid, with frac an exact decimal.
FixedAmount scale_floor(FixedAmount amount, const Decimal& frac) {
  BigUint raw = BigUint::from_u128(amount.raw())
                    .mul(frac.units())
                    .divmod(BigUint::pow10(frac.scale()))
                    .first;
  return FixedAmount::from_raw(raw.to_u128());
}

}  // namespace

RoundPool form_pool(const std::vector<FixedAmount>& receiver_escrows,
                    uint64_t round, FixedAmount prev_ema) {
  RoundPool pool;
  for (const auto& e : receiver_escrows)
    pool.p_receivers = pool.p_receivers.add(e);

  if (round < 1000) {
    // 50 * (1000 - round) / 1000, floored on the raw grid.
    uint128_t raw = static_cast<uint128_t>(1000 - round) * 50 *
                    FixedAmount::kScale / 1000;
    pool.p_bootstrap = FixedAmount::from_raw(raw);
  }
  pool.bootstrap_active = round < 1000 && pool.p_bootstrap.raw() > 0;
  pool.p_total = pool.p_receivers.add(pool.p_bootstrap);
  pool.ema_value = FixedAmount::from_raw(
      (prev_ema.raw() * 7 + pool.p_receivers.raw() * 3) / 10);
  return pool;
}

PoolAllocation split_pool(const RoundPool& pool, const PoolAlphas& alphas) {
  Decimal total_frac =
      alphas.alpha_c.add(alphas.alpha_m).add(alphas.alpha_t);
  if (!(total_frac == Decimal::from_u64(1)))
    throw AllocationError("pool fractions must sum to exactly 1");

  PoolAllocation out;
  out.alphas = alphas;
  out.p_c = scale_floor(pool.p_total, alphas.alpha_c);
  out.p_m = scale_floor(pool.p_total, alphas.alpha_m);
  out.p_t = scale_floor(pool.p_total, alphas.alpha_t);
  out.allocation_dust = pool.p_total.sub(out.p_c).sub(out.p_m).sub(out.p_t);
  return out;
}

RewardBreakdown contributor_rewards(FixedAmount p_c,
                                    const std::vector<RewardInput>& inputs,
                                    const Decimal& r_base, const Decimal& beta,
                                    const Decimal& phi_ema) {
  RewardBreakdown out;
  Decimal p_c_dec = Decimal::from_fixed(p_c);

  for (const auto& in : inputs)
    out.base_total = out.base_total.add(r_base.mul(in.rho));
  if (p_c_dec < out.base_total)
    throw InsolvencyError("base rewards exceed contributor pool");

  out.novelty_cap = beta.mul(p_c_dec.sub(out.base_total));
  out.p_nov = out.novelty_cap.mul(phi_ema);
  out.p_quality = p_c_dec.sub(out.base_total).sub(out.p_nov);

  // Common denominators for the proportional components.
  BigUint weight_total;
  for (const auto& in : inputs)
    weight_total = weight_total.add(BigUint::from_u128(in.novelty_weight));
  uint32_t rho_scale = 0;
  for (const auto& in : inputs) rho_scale = std::max(rho_scale, in.rho.scale());
  BigUint rho_total;
  std::vector<BigUint> rho_units(inputs.size());
  for (size_t i = 0; i < inputs.size(); ++i) {
    rho_units[i] = inputs[i].rho.units().mul(
        BigUint::pow10(rho_scale - inputs[i].rho.scale()));
    rho_total = rho_total.add(rho_units[i]);
  }

  FixedAmount paid;
  for (size_t i = 0; i < inputs.size(); ++i) {
    ContributorReward r;
    r.pid = inputs[i].pid;
    r.base = r_base.mul(inputs[i].rho).floor_to_fixed();
    r.novelty = weight_total.is_zero()
                    ? FixedAmount()
                    : out.p_nov.mul_ratio_floor_fixed(
                          BigUint::from_u128(inputs[i].novelty_weight),
                          weight_total);
    r.quality = rho_total.is_zero()
                    ? FixedAmount()
                    : out.p_quality.mul_ratio_floor_fixed(rho_units[i],
                                                          rho_total);
    r.total = r.base.add(r.quality).add(r.novelty);
    paid = paid.add(r.total);
    out.rewards.push_back(std::move(r));
  }
  out.dust = p_c.sub(paid);
  return out;
}

CommitteeFees committee_fees(FixedAmount p_m, uint32_t m,
                             bool round_accepted) {
  if (!round_accepted)
    throw NoFeesError("committee fees accrue only on Accepted rounds");
  if (m == 0) throw Error("committee cannot be empty");
  CommitteeFees out;
  out.fee_per_node = FixedAmount::from_raw(p_m.raw() / m);
  out.dust = FixedAmount::from_raw(p_m.raw() -
                                   out.fee_per_node.raw() * m);
  out.fee_string = Decimal::from_fixed(p_m).div_receipt_string(m);
  return out;
}

Decimal update_reputation(const Decimal& rho_prev, bool round_success,
                          bool high_variance) {
  static const Decimal kFloor = Decimal::parse("0.8");
  static const Decimal kCap = Decimal::parse("1.2");
  static const Decimal kBump = Decimal::parse("0.05");
  static const Decimal kDecay = Decimal::parse("0.1");

  Decimal rho = rho_prev;
  if (high_variance) {
    rho = kFloor.add(kDecay) <= rho ? rho.sub(kDecay) : kFloor;
  } else if (round_success) {
    rho = rho.add(kBump);
    if (kCap < rho) rho = kCap;
  }
  if (rho < kFloor) rho = kFloor;
  if (kCap < rho) rho = kCap;
  return rho;
}

PayoutSet make_payout_set(RoundId round, PayoutSet::Kind kind,
                          std::vector<PayoutSet::Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  PayoutSet set;
  set.round = round;
  set.kind = kind;
  set.entries = std::move(entries);
  return set;
}

RefundResult refunds(RoundId round,
                     const std::vector<PayoutSet::Entry>& receiver_escrows,
                     FixedAmount p_bootstrap) {
  RefundResult out;
  out.set.round = round;
  out.set.entries = receiver_escrows;
  std::sort(out.set.entries.begin(), out.set.entries.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  out.refund_root = out.set.merkle_root();
  out.refund_dust = FixedAmount();  // escrows refund verbatim
  out.bootstrap_reclaimed = p_bootstrap;
  return out;
}

SlashEvent slash(const NodeId& node, FixedAmount stake, SlashFault fault) {
  Decimal frac;
  switch (fault) {
    case SlashFault::kInvalidProof:
      frac = Decimal::parse("0.30");
      break;
    case SlashFault::kSelectiveReconstruction:
      frac = Decimal::parse("0.20");
      break;
    case SlashFault::kLivenessFailure:
      frac = Decimal::parse("0.10");
      break;
  }
  BigUint raw = BigUint::from_u128(stake.raw())
                    .mul(frac.units())
                    .divmod(BigUint::pow10(frac.scale()))
                    .first;
  return SlashEvent{node, fault, FixedAmount::from_raw(raw.to_u128())};
}

}  // namespace pgot::econ
