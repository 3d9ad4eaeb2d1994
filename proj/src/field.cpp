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

#include "pgot/field.hpp"

#include "pgot/errors.hpp"

namespace pgot::crypto {

Fe Fe::pow(uint128_t e) const {
  Fe base = *this;
  Fe acc = Fe::from_u64(1);
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Fe Fe::inverse() const {
  if (is_zero()) throw pgot::Error("inverse of zero field element");
  return pow(kFieldPrime - 2);
}

FieldVector fv_add(const FieldVector& a, const FieldVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector size mismatch");
  FieldVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

FieldVector fv_sub(const FieldVector& a, const FieldVector& b) {
  if (a.size() != b.size()) throw DimensionError("vector size mismatch");
  FieldVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

void fv_add_scaled_inplace(FieldVector& acc, const FieldVector& v, Fe scale) {
  if (acc.size() != v.size()) throw DimensionError("vector size mismatch");
  for (size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + v[i] * scale;
}

FieldVector fv_zero(size_t dim) { return FieldVector(dim, Fe()); }

}  // namespace pgot::crypto
