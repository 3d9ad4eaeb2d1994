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

#include "pgot/novelty.hpp"

#include <algorithm>
#include <cmath>

#include "pgot/errors.hpp"

namespace pgot::novelty {

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

static double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Decomposition decompose(const std::vector<double>& g, const Basis& basis) {
  if (basis.dim != 0 && g.size() != basis.dim)
    throw DimensionError("update dimension does not match basis");
  for (double x : g) {
    if (!std::isfinite(x)) throw NumericError("non-finite update coordinate");
  }
  Decomposition d;
  d.parallel.assign(g.size(), 0.0);
  for (const auto& col : basis.columns) {
    double c = dot(col, g);
    for (size_t i = 0; i < g.size(); ++i) d.parallel[i] += c * col[i];
  }
  d.perpendicular.resize(g.size());
  for (size_t i = 0; i < g.size(); ++i)
    d.perpendicular[i] = g[i] - d.parallel[i];
  d.phi = norm(d.perpendicular) / (norm(g) + kEpsilon);
  return d;
}

static void orthogonalize_against(std::vector<double>& v,
                                  const std::vector<std::vector<double>>& cols) {
  // Two modified Gram-Schmidt sweeps keep orthogonality near machine eps.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& col : cols) {
      double c = dot(col, v);
      for (size_t i = 0; i < v.size(); ++i) v[i] -= c * col[i];
    }
  }
}

void rotate_basis(Basis& basis, const std::vector<double>& g_perp) {
  double n = norm(g_perp);
  if (n == 0.0) throw ZeroNoveltyError("perpendicular component is zero");
  if (basis.dim != 0 && g_perp.size() != basis.dim)
    throw DimensionError("direction dimension does not match basis");
  if (basis.dim == 0) basis.dim = g_perp.size();

  if (basis.columns.size() >= basis.max_size) {
    size_t oldest = 0;
    for (size_t i = 1; i < basis.columns.size(); ++i) {
      if (basis.ages[i] < basis.ages[oldest]) oldest = i;
    }
    basis.columns.erase(basis.columns.begin() + oldest);
    basis.ages.erase(basis.ages.begin() + oldest);
  }

  std::vector<double> dir(g_perp);
  for (double& x : dir) x /= n;
  orthogonalize_against(dir, basis.columns);
  double rn = norm(dir);
  if (rn < 1e-12)
    throw ZeroNoveltyError("direction already spanned by basis");
  for (double& x : dir) x /= rn;

  basis.columns.push_back(std::move(dir));
  basis.ages.push_back(basis.insert_counter++);

  if (basis.full_reorthogonalize) {
    // Re-run Gram-Schmidt over all columns in age order.
    std::vector<size_t> order(basis.columns.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return basis.ages[a] < basis.ages[b]; });
    std::vector<std::vector<double>> rebuilt;
    std::vector<uint64_t> rebuilt_ages;
    for (size_t idx : order) {
      std::vector<double> col = basis.columns[idx];
      orthogonalize_against(col, rebuilt);
      double cn = norm(col);
      if (cn < 1e-12) continue;  // collapsed onto earlier columns
      for (double& x : col) x /= cn;
      rebuilt.push_back(std::move(col));
      rebuilt_ages.push_back(basis.ages[idx]);
    }
    basis.columns = std::move(rebuilt);
    basis.ages = std::move(rebuilt_ages);
  }
}

double smooth(double phi_prev_ema, double phi_t, double lambda) {
  return lambda * phi_prev_ema + (1.0 - lambda) * phi_t;
}

BasisCheckpoint make_checkpoint(const Basis& basis, RoundId round) {
  BasisCheckpoint cp;
  cp.round = round;
  cp.dim = static_cast<uint32_t>(basis.dim);
  cp.basis_size = static_cast<uint32_t>(basis.max_size);
  cp.ages = basis.ages;
  const double scale = static_cast<double>(int64_t{1} << BasisCheckpoint::kFracBits);
  for (const auto& col : basis.columns) {
    std::vector<int64_t> q(col.size());
    for (size_t i = 0; i < col.size(); ++i)
      q[i] = static_cast<int64_t>(std::llround(col[i] * scale));
    cp.columns.push_back(std::move(q));
  }
  return cp;
}

}  // namespace pgot::novelty
