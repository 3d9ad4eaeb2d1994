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

#include "pgot/pedersen.hpp"

#include "pgot/errors.hpp"

namespace pgot::crypto {

Commitment pedersen_commit(const GroupParams& params, const FieldVector& vec,
                           Fe blinding) {
  return Commitment{params.commit(vec, blinding)};
}

Commitment pedersen_combine(const std::vector<Commitment>& commitments) {
  if (commitments.empty()) throw EmptyError("no commitments to combine");
  Ge acc = commitments[0].point;
  for (size_t i = 1; i < commitments.size(); ++i)
    acc = acc * commitments[i].point;
  return Commitment{acc};
}

}  // namespace pgot::crypto
