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

#include "pgot/schnorr.hpp"

#include "pgot/canonical.hpp"
#include "pgot/errors.hpp"
#include "pgot/prg.hpp"
#include "pgot/sha256.hpp"

namespace pgot::crypto {

namespace {

Fe challenge(const GroupParams& params, const Ge& r,
             const SchnorrPublicKey& pub, std::span<const uint8_t> message) {
  CanonicalWriter w;
  w.str(params.domain_tag());
  w.str("sig/challenge");
  auto rb = r.serialize();
  w.fixed_bytes(rb);
  auto pb = pub.point.serialize();
  w.fixed_bytes(pb);
  w.var_bytes(message);
  return Fe::from_u128([&] {
    Hash32 h = sha256(w.bytes());
    uint128_t v = 0;
    for (int i = 0; i < 16; ++i) v = (v << 8) | h[i];
    return v;
  }());
}

}  // namespace

Bytes SchnorrPublicKey::serialize() const {
  auto b = point.serialize();
  return Bytes(b.begin(), b.end());
}

SchnorrPublicKey SchnorrPublicKey::deserialize(std::span<const uint8_t> b) {
  return SchnorrPublicKey{Ge::deserialize(b)};
}

Bytes SchnorrSignature::serialize() const {
  Bytes out;
  auto rb = commitment_r.serialize();
  out.insert(out.end(), rb.begin(), rb.end());
  CanonicalWriter w;
  w.u128_be(response_s.value());
  const Bytes& sb = w.bytes();
  out.insert(out.end(), sb.begin(), sb.end());
  return out;
}

SchnorrSignature SchnorrSignature::deserialize(std::span<const uint8_t> b) {
  if (b.size() != 40) throw DecodeError("signature must be 40 bytes");
  SchnorrSignature sig;
  sig.commitment_r = Ge::deserialize(b.subspan(0, 24));
  uint128_t v = 0;
  for (int i = 0; i < 16; ++i) v = (v << 8) | b[24 + i];
  if (v >= kFieldPrime) throw DecodeError("non-canonical signature scalar");
  sig.response_s = Fe::from_u128(v);
  return sig;
}

SchnorrKeyPair SchnorrKeyPair::generate(const GroupParams& params,
                                        DeterministicRng& rng) {
  SchnorrKeyPair kp;
  do {
    kp.secret = rng.next_fe();
  } while (kp.secret.is_zero());
  kp.pub.point = params.sig_base().pow_fe(kp.secret);
  return kp;
}

SchnorrSignature schnorr_sign(const GroupParams& params, const Fe& secret,
                              std::span<const uint8_t> message) {
  // Deterministic nonce from (secret, message).
  CanonicalWriter w;
  w.str(params.domain_tag());
  w.str("sig/nonce");
  w.u128_be(secret.value());
  w.var_bytes(message);
  DeterministicRng nonce_rng(sha256(w.bytes()));
  Fe k;
  do {
    k = nonce_rng.next_fe();
  } while (k.is_zero());

  SchnorrSignature sig;
  sig.commitment_r = params.sig_base().pow_fe(k);
  SchnorrPublicKey pub{params.sig_base().pow_fe(secret)};
  Fe e = challenge(params, sig.commitment_r, pub, message);
  sig.response_s = k + e * secret;
  return sig;
}

bool schnorr_verify(const GroupParams& params, const SchnorrPublicKey& pub,
                    std::span<const uint8_t> message,
                    const SchnorrSignature& sig) {
  Fe e = challenge(params, sig.commitment_r, pub, message);
  Ge lhs = params.sig_base().pow_fe(sig.response_s);
  Ge rhs = sig.commitment_r * pub.point.pow_fe(e);
  return lhs == rhs;
}

Hash32 key_fingerprint(const SchnorrPublicKey& pub) {
  auto b = pub.point.serialize();
  return sha256(std::span<const uint8_t>(b.data(), b.size()));
}

}  // namespace pgot::crypto
