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

#ifndef PGOT_NOVELTY_HPP_
#define PGOT_NOVELTY_HPP_

#include <string>
#include <vector>

#include "pgot/artifacts.hpp"

namespace pgot::novelty {

inline constexpr double kEpsilon = 1e-9;  // guards the norm ratio

// Orthonormal memory of already-rewarded directions, at most `max_size`
// columns. Rotation appends the normalized perpendicular component and
// evicts the oldest column once full; novelty is measured only against
// aggregates, never individual submissions.
struct Basis {
  size_t dim = 0;
  size_t max_size = 20;
  bool full_reorthogonalize = false;  // "full" vs "incremental" rotation
  std::vector<std::vector<double>> columns;
  std::vector<uint64_t> ages;  // insertion counter per column
  uint64_t insert_counter = 0;
};

struct Decomposition {
  std::vector<double> parallel;
  std::vector<double> perpendicular;
  double phi = 0.0;  // ||g_perp|| / (||g|| + eps)
};

// g = g_parallel + g_perpendicular against the basis columns.
// Throws DimensionError on size mismatch, NumericError on non-finite input.
Decomposition decompose(const std::vector<double>& g, const Basis& basis);

// Appends g_perp / ||g_perp||, evicting the oldest column when the basis is
// full, then re-establishes orthonormality (one pass in incremental mode,
// all columns in full mode). Throws ZeroNoveltyError for a zero vector.
void rotate_basis(Basis& basis, const std::vector<double>& g_perp);

// EMA: lambda * prev + (1 - lambda) * current.
double smooth(double phi_prev_ema, double phi_t, double lambda);

BasisCheckpoint make_checkpoint(const Basis& basis, RoundId round);

double norm(const std::vector<double>& v);

}  // namespace pgot::novelty

#endif  // PGOT_NOVELTY_HPP_
