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

#ifndef PGOT_SCHNORR_HPP_
#define PGOT_SCHNORR_HPP_

#include "pgot/bytes.hpp"
#include "pgot/field.hpp"
#include "pgot/group.hpp"
#include "pgot/identifiers.hpp"
#include "pgot/prg.hpp"

namespace pgot::crypto {

// Schnorr signatures over the commitment group; used for node-signed local
// commitments, committee endorsements and owned-object authorization.
// Nonces are derived deterministically from the secret key and message.

struct SchnorrPublicKey {
  Ge point;
  Bytes serialize() const;
  static SchnorrPublicKey deserialize(std::span<const uint8_t> b);
};

struct SchnorrSignature {
  Ge commitment_r;
  Fe response_s;
  Bytes serialize() const;  // 24-byte R || 16-byte s
  static SchnorrSignature deserialize(std::span<const uint8_t> b);
};

struct SchnorrKeyPair {
  Fe secret;
  SchnorrPublicKey pub;

  static SchnorrKeyPair generate(const GroupParams& params,
                                 DeterministicRng& rng);
};

SchnorrSignature schnorr_sign(const GroupParams& params, const Fe& secret,
                              std::span<const uint8_t> message);

bool schnorr_verify(const GroupParams& params, const SchnorrPublicKey& pub,
                    std::span<const uint8_t> message,
                    const SchnorrSignature& sig);

// Identity bound to a key: 32-byte hash of the serialized public key.
Hash32 key_fingerprint(const SchnorrPublicKey& pub);

}  // namespace pgot::crypto

#endif  // PGOT_SCHNORR_HPP_
