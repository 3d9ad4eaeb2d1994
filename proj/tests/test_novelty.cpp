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

#include <doctest.h>

#include <cmath>

#include "pgot/errors.hpp"
#include "pgot/novelty.hpp"
#include "pgot/prg.hpp"

using namespace pgot;
using namespace pgot::novelty;

namespace {

std::vector<double> axis(size_t dim, size_t i, double scale = 1.0) {
  std::vector<double> v(dim, 0.0);
  v[i] = scale;
  return v;
}

std::vector<double> random_vec(crypto::DeterministicRng& rng, size_t dim) {
  std::vector<double> v(dim);
  for (auto& x : v) x = rng.next_gaussian();
  return v;
}

Basis make_basis(size_t dim, size_t k = 20) {
  Basis b;
  b.dim = dim;
  b.max_size = k;
  return b;
}

}  // namespace

TEST_SUITE_BEGIN("novelty");

TEST_CASE("an in-span update has zero novelty") {
  Basis b = make_basis(4);
  rotate_basis(b, axis(4, 0));
  auto d = decompose(axis(4, 0, 3.0), b);
  CHECK(norm(d.perpendicular) < 1e-12);
  CHECK(d.phi < 1e-12);
}

TEST_CASE("an orthogonal unit update scores phi just below one") {
  Basis b = make_basis(4);
  rotate_basis(b, axis(4, 0));
  auto d = decompose(axis(4, 1), b);
  CHECK(d.phi == doctest::Approx(1.0 / (1.0 + kEpsilon)));
  CHECK(d.phi < 1.0);
}

TEST_CASE("an empty basis leaves everything perpendicular") {
  Basis b = make_basis(3);
  std::vector<double> g = {1.0, 2.0, 2.0};
  auto d = decompose(g, b);
  CHECK(d.perpendicular == g);
  CHECK(d.phi == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("rotation fills, then evicts the oldest direction") {
  Basis b = make_basis(8, 3);
  rotate_basis(b, axis(8, 0));
  CHECK(b.columns.size() == 1);
  rotate_basis(b, axis(8, 1));
  rotate_basis(b, axis(8, 2));
  CHECK(b.columns.size() == 3);
  rotate_basis(b, axis(8, 3));
  CHECK(b.columns.size() == 3);
  // the first direction is gone: it is novel again
  CHECK(decompose(axis(8, 0), b).phi > 0.99);
  // the newer ones are still remembered
  CHECK(decompose(axis(8, 2), b).phi < 1e-9);
}

TEST_CASE("rotating a zero direction is an error") {
  Basis b = make_basis(4);
  CHECK_THROWS_AS(rotate_basis(b, std::vector<double>(4, 0.0)),
                  ZeroNoveltyError);
}

TEST_CASE("replay resistance: rotate then decompose the same update") {
  crypto::DeterministicRng rng = crypto::DeterministicRng::from_u64(60);
  for (int trial = 0; trial < 20; ++trial) {
    Basis b = make_basis(32, 20);
    for (int i = 0; i < 5; ++i) {
      auto d = decompose(random_vec(rng, 32), b);
      if (norm(d.perpendicular) > 0) rotate_basis(b, d.perpendicular);
    }
    auto g = random_vec(rng, 32);
    auto first = decompose(g, b);
    REQUIRE(norm(first.perpendicular) > 0);
    rotate_basis(b, first.perpendicular);
    auto replay = decompose(g, b);
    CHECK(replay.phi < 1e-9);
  }
}

TEST_CASE("replay novelty returns after the direction is evicted") {
  const size_t dim = 16, k = 4;
  Basis b = make_basis(dim, k);
  std::vector<double> g = axis(dim, 15, 2.0);
  auto first = decompose(g, b);
  rotate_basis(b, first.perpendicular);
  CHECK(decompose(g, b).phi < 1e-9);
  // k distinct rotations evict it
  for (size_t i = 0; i < k; ++i) {
    auto d = decompose(axis(dim, i), b);
    rotate_basis(b, d.perpendicular);
  }
  CHECK(decompose(g, b).phi > 0.5);
}

TEST_CASE("sybil invariance: the aggregate decomposes bit-identically") {
  crypto::DeterministicRng rng = crypto::DeterministicRng::from_u64(61);
  const size_t dim = 24;
  Basis b = make_basis(dim);
  for (int i = 0; i < 3; ++i) {
    auto d = decompose(random_vec(rng, dim), b);
    rotate_basis(b, d.perpendicular);
  }
  for (int trial = 0; trial < 25; ++trial) {
    auto g = random_vec(rng, dim);
    // Partitioning g changes nothing: novelty consumes only the aggregate,
    // so equality here is bitwise by construction.
    auto d1 = decompose(g, b);
    auto d2 = decompose(g, b);
    CHECK(d1.perpendicular == d2.perpendicular);
    CHECK(d1.phi == d2.phi);
  }
}

TEST_CASE("pythagorean identity within 1e-8 relative") {
  crypto::DeterministicRng rng = crypto::DeterministicRng::from_u64(62);
  Basis b = make_basis(40);
  for (int i = 0; i < 10; ++i) {
    auto d = decompose(random_vec(rng, 40), b);
    if (norm(d.perpendicular) > 0) rotate_basis(b, d.perpendicular);
  }
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_vec(rng, 40);
    auto d = decompose(g, b);
    double g2 = norm(g) * norm(g);
    double sum = norm(d.parallel) * norm(d.parallel) +
                 norm(d.perpendicular) * norm(d.perpendicular);
    CHECK(std::abs(g2 - sum) <= 1e-8 * g2);
    // decomposition reassembles g
    for (size_t i = 0; i < g.size(); ++i)
      CHECK(d.parallel[i] + d.perpendicular[i] ==
            doctest::Approx(g[i]).epsilon(1e-9));
    // phi stays in [0, 1)
    CHECK(d.phi >= 0.0);
    CHECK(d.phi < 1.0);
  }
}

TEST_CASE("projection is idempotent") {
  crypto::DeterministicRng rng = crypto::DeterministicRng::from_u64(63);
  Basis b = make_basis(16);
  for (int i = 0; i < 4; ++i) {
    auto d = decompose(random_vec(rng, 16), b);
    rotate_basis(b, d.perpendicular);
  }
  auto g = random_vec(rng, 16);
  auto d = decompose(g, b);
  CHECK(decompose(d.parallel, b).phi < 1e-9);
}

TEST_CASE("basis columns stay orthonormal through rotations") {
  crypto::DeterministicRng rng = crypto::DeterministicRng::from_u64(64);
  for (bool full : {false, true}) {
    Basis b = make_basis(12, 5);
    b.full_reorthogonalize = full;
    for (int i = 0; i < 12; ++i) {
      auto d = decompose(random_vec(rng, 12), b);
      if (norm(d.perpendicular) > 0) rotate_basis(b, d.perpendicular);
    }
    for (size_t i = 0; i < b.columns.size(); ++i) {
      double n = norm(b.columns[i]);
      CHECK(std::abs(n - 1.0) < 1e-9);
      for (size_t j = i + 1; j < b.columns.size(); ++j) {
        double dot = 0;
        for (size_t c = 0; c < 12; ++c)
          dot += b.columns[i][c] * b.columns[j][c];
        CHECK(std::abs(dot) < 1e-9);
      }
    }
  }
}

TEST_CASE("ema smoothing follows the convex combination") {
  CHECK(smooth(0.0, 0.0, 0.7) == 0.0);
  CHECK(smooth(0.2, 0.3, 0.7) == doctest::Approx(0.23));
  // a constant input is a fixed point
  double phi = 0.0;
  for (int i = 0; i < 200; ++i) phi = smooth(phi, 0.4, 0.7);
  CHECK(phi == doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("dimension mismatches are rejected") {
  Basis b = make_basis(4);
  rotate_basis(b, axis(4, 0));
  CHECK_THROWS_AS(decompose(std::vector<double>(5, 1.0), b), DimensionError);
  CHECK_THROWS_AS(rotate_basis(b, axis(5, 0)), DimensionError);
  std::vector<double> bad = {std::nan(""), 0, 0, 0};
  CHECK_THROWS_AS(decompose(bad, b), NumericError);
}

TEST_CASE("checkpoints quantize columns at 2^-48") {
  Basis b = make_basis(6, 3);
  rotate_basis(b, axis(6, 2));
  BasisCheckpoint cp = make_checkpoint(b, RoundId{5});
  CHECK(cp.dim == 6);
  CHECK(cp.basis_size == 3);
  REQUIRE(cp.columns.size() == 1);
  CHECK(cp.columns[0][2] == (int64_t{1} << BasisCheckpoint::kFracBits));
  Bytes frame = canonical_bytes(cp);
  BasisCheckpoint back = BasisCheckpoint::decode_frame(frame);
  CHECK(canonical_bytes(back) == frame);
}

TEST_SUITE_END();
