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

#include "pgot/ledger.hpp"

#include <cstring>
#include <set>

#include "pgot/errors.hpp"
#include "pgot/sha256.hpp"

namespace pgot::ledger {

Bytes ContributorRegistry::state_bytes() const {
  CanonicalWriter w;
  w.contributor_id(pid);
  w.var_bytes(owner_pubkey);
  w.str(reputation.receipt_string());
  w.u128_be(stake.raw());
  uint64_t eps_bits;
  std::memcpy(&eps_bits, &epsilon_spent, sizeof(eps_bits));
  w.u64_be(eps_bits);
  w.list_count(participation.size());
  for (uint64_t r : participation) w.u64_be(r);
  w.u64_be(version);
  return w.take();
}

ContributorRegistry ContributorRegistry::from_state_bytes(
    std::span<const uint8_t> b) {
  CanonicalReader r(b);
  ContributorRegistry reg;
  reg.pid = r.contributor_id();
  reg.owner_pubkey = r.var_bytes();
  reg.reputation = Decimal::parse(r.str());
  reg.stake = FixedAmount::from_raw(r.u128_be());
  uint64_t eps_bits = r.u64_be();
  std::memcpy(&reg.epsilon_spent, &eps_bits, sizeof(eps_bits));
  size_t n = r.list_count();
  for (size_t i = 0; i < n; ++i) reg.participation.push_back(r.u64_be());
  reg.version = r.u64_be();
  r.expect_end();
  return reg;
}

std::string GasMeter::gas_units_string() const {
  return Decimal::parse(std::to_string(microgas()))
      .mul(Decimal::parse("0.000001"))
      .exact_string();
}

std::string GasMeter::dollars_string() const {
  // 1 micro-gas is exactly one nano-dollar under fixed pricing.
  return Decimal::parse(std::to_string(microgas()))
      .mul(Decimal::parse("0.000000001"))
      .exact_string();
}

std::string GasReport::per_contributor_dollars_string() const {
  if (contributors == 0) return "0.0";
  // nano-dollars / N carried to 1e-21 dollars, exact for the scales used
  BigUint scaled = BigUint(meter.microgas()).mul(BigUint::pow10(12));
  BigUint per = scaled.divmod(BigUint(contributors)).first;
  std::string digits = per.to_decimal_string();
  if (digits.size() < 22) digits.insert(0, 22 - digits.size(), '0');
  std::string whole = digits.substr(0, digits.size() - 21);
  std::string frac = digits.substr(digits.size() - 21);
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  return whole + "." + frac;
}

double GasReport::per_contributor_dollars() const {
  if (contributors == 0) return 0.0;
  return meter.dollars() / static_cast<double>(contributors);
}

GasReport round_gas_report(uint64_t n_contributors, uint64_t shared_updates) {
  GasReport r;
  r.meter.owned_updates = n_contributors;
  r.meter.shared_updates = shared_updates;
  r.contributors = n_contributors;
  return r;
}

Ledger::Ledger(const crypto::GroupParams& params, ValidatorSet validators,
               uint32_t byzantine_f)
    : params_(params),
      validators_(std::move(validators)),
      byzantine_f_(byzantine_f) {
  shared_[SharedKind::kRoundRegistry] =
      SharedObject{SharedKind::kRoundRegistry, 0, Cid{}};
  shared_[SharedKind::kModelRegistry] =
      SharedObject{SharedKind::kModelRegistry, 0, Cid{}};
  shared_[SharedKind::kPolicyOracle] =
      SharedObject{SharedKind::kPolicyOracle, 0, Cid{}};
}

ContributorRegistry& Ledger::create_registry(const ContributorId& pid,
                                             const Bytes& owner_pubkey,
                                             FixedAmount stake) {
  ContributorRegistry reg;
  reg.pid = pid;
  reg.owner_pubkey = owner_pubkey;
  reg.stake = stake;
  auto [it, inserted] = registries_.emplace(pid, std::move(reg));
  if (!inserted) throw Error("registry already exists for pid");
  return it->second;
}

const ContributorRegistry* Ledger::find_registry(
    const ContributorId& pid) const {
  auto it = registries_.find(pid);
  return it == registries_.end() ? nullptr : &it->second;
}

Bytes Ledger::owned_write_message(const ContributorId& pid,
                                  uint64_t next_version,
                                  std::span<const uint8_t> intent) {
  CanonicalWriter w;
  w.str("pgot/owned-write");
  w.contributor_id(pid);
  w.u64_be(next_version);
  w.var_bytes(intent);
  return w.take();
}

ContributorRegistry& Ledger::owned_write(
    const ContributorId& pid, std::span<const uint8_t> intent,
    const crypto::SchnorrSignature& signature,
    const std::function<void(ContributorRegistry&)>& mutate) {
  auto it = registries_.find(pid);
  if (it == registries_.end()) throw AuthError("unknown registry owner");
  ContributorRegistry& reg = it->second;
  Bytes msg = owned_write_message(pid, reg.version + 1, intent);
  auto pub = crypto::SchnorrPublicKey::deserialize(std::span<const uint8_t>(
      reg.owner_pubkey.data(), reg.owner_pubkey.size()));
  if (!crypto::schnorr_verify(params_, pub, msg, signature))
    throw AuthError("owned write signature invalid for registry owner");

  mutate(reg);
  reg.version += 1;
  gas_.owned_updates += 1;

  CanonicalWriter ev;
  ev.u8(0);  // owned event
  ev.var_bytes(reg.state_bytes());
  ev.var_bytes(signature.serialize());
  ev.var_bytes(intent);
  events_.push_back(ev.take());
  return reg;
}

Bytes Ledger::shared_write_message(SharedKind kind, uint64_t next_version,
                                   const Cid& payload) {
  CanonicalWriter w;
  w.str("pgot/shared-write");
  w.u8(static_cast<uint8_t>(kind));
  w.u64_be(next_version);
  w.fixed_bytes(payload.digest);
  return w.take();
}

SharedObject& Ledger::shared_write(SharedKind kind, const Cid& payload,
                                   const std::vector<Approval>& approvals) {
  SharedObject& obj = shared_.at(kind);
  Bytes msg = shared_write_message(kind, obj.version + 1, payload);
  std::set<NodeId> distinct;
  for (const auto& a : approvals) {
    const auto* v = validators_.find(a.node);
    if (v == nullptr) continue;
    auto pub = crypto::SchnorrPublicKey::deserialize(
        std::span<const uint8_t>(v->pubkey.data(), v->pubkey.size()));
    auto sig = crypto::SchnorrSignature::deserialize(
        std::span<const uint8_t>(a.signature.data(), a.signature.size()));
    if (crypto::schnorr_verify(params_, pub, msg, sig)) distinct.insert(a.node);
  }
  uint32_t needed = 2 * byzantine_f_ + 1;
  if (distinct.size() < needed)
    throw ConsensusError("shared write has " +
                         std::to_string(distinct.size()) + " approvals, needs " +
                         std::to_string(needed));

  obj.version += 1;
  obj.payload = payload;
  gas_.shared_updates += 1;
  if (kind == SharedKind::kModelRegistry) lineage_.push_back(payload);

  CanonicalWriter ev;
  ev.u8(1);  // shared event
  ev.u8(static_cast<uint8_t>(kind));
  ev.u64_be(obj.version);
  ev.fixed_bytes(payload.digest);
  ev.list_count(approvals.size());
  for (const auto& a : approvals) {
    ev.node_id(a.node);
    ev.var_bytes(a.signature);
  }
  events_.push_back(ev.take());
  return obj;
}

const SharedObject& Ledger::shared(SharedKind kind) const {
  return shared_.at(kind);
}

Ledger Ledger::replay(const crypto::GroupParams& params,
                      ValidatorSet validators, uint32_t byzantine_f,
                      const std::vector<Bytes>& events) {
  Ledger ledger(params, std::move(validators), byzantine_f);
  for (const Bytes& ev : events) {
    CanonicalReader r(std::span<const uint8_t>(ev.data(), ev.size()));
    uint8_t tag = r.u8();
    if (tag == 0) {
      Bytes state = r.var_bytes();
      ContributorRegistry reg = ContributorRegistry::from_state_bytes(
          std::span<const uint8_t>(state.data(), state.size()));
      ledger.registries_[reg.pid] = reg;
      ledger.gas_.owned_updates += 1;
    } else {
      SharedKind kind = static_cast<SharedKind>(r.u8());
      SharedObject& obj = ledger.shared_.at(kind);
      obj.version = r.u64_be();
      r.fixed_bytes(obj.payload.digest);
      ledger.gas_.shared_updates += 1;
      if (kind == SharedKind::kModelRegistry)
        ledger.lineage_.push_back(obj.payload);
    }
    ledger.events_.push_back(ev);
  }
  return ledger;
}

Bytes Ledger::state_digest() const {
  CanonicalWriter w;
  for (const auto& [pid, reg] : registries_) w.var_bytes(reg.state_bytes());
  for (const auto& [kind, obj] : shared_) {
    w.u8(static_cast<uint8_t>(obj.kind));
    w.u64_be(obj.version);
    w.fixed_bytes(obj.payload.digest);
  }
  for (const auto& c : lineage_) w.fixed_bytes(c.digest);
  w.u64_be(gas_.owned_updates);
  w.u64_be(gas_.shared_updates);
  Hash32 h = sha256(w.bytes());
  return Bytes(h.begin(), h.end());
}

}  // namespace pgot::ledger
