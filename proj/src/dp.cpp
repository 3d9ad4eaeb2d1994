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

#include "pgot/dp.hpp"

#include <cmath>

#include "pgot/errors.hpp"

namespace pgot::agg {

std::vector<double> clip_and_noise(const std::vector<double>& update,
                                   const DpConfig& cfg,
                                   crypto::DeterministicRng& rng) {
  double norm_sq = 0.0;
  for (double v : update) {
    if (!std::isfinite(v)) throw NumericError("non-finite update coordinate");
    norm_sq += v * v;
  }
  double norm = std::sqrt(norm_sq);
  double scale = (norm > cfg.clipping_norm && norm > 0.0)
                     ? cfg.clipping_norm / norm
                     : 1.0;
  double stddev = cfg.noise_scale * cfg.clipping_norm;
  std::vector<double> out(update.size());
  for (size_t i = 0; i < update.size(); ++i) {
    double noise = stddev > 0.0 ? stddev * rng.next_gaussian() : 0.0;
    out[i] = update[i] * scale + noise;
  }
  return out;
}

RdpAccountant::RdpAccountant() {
  // Dense low orders where the optimum for small T sits, sparser above.
  for (int i = 101; i < 2000; ++i) orders_.push_back(i / 100.0);
  for (double a = 20.0; a <= 512.0; a += 1.0) orders_.push_back(a);
  eps_rdp_.assign(orders_.size(), 0.0);
}

void RdpAccountant::add_gaussian(double sigma, uint64_t rounds) {
  if (sigma <= 0.0) throw NumericError("noise scale must be positive");
  for (size_t i = 0; i < orders_.size(); ++i)
    eps_rdp_[i] +=
        static_cast<double>(rounds) * orders_[i] / (2.0 * sigma * sigma);
}

double RdpAccountant::epsilon(double delta) const {
  double log_inv_delta = std::log(1.0 / delta);
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < orders_.size(); ++i) {
    double eps = eps_rdp_[i] + log_inv_delta / (orders_[i] - 1.0);
    if (eps < best) best = eps;
  }
  return best;
}

double account_privacy(const DpConfig& cfg, uint64_t rounds) {
  if (rounds == 0) return 0.0;
  RdpAccountant acct;
  acct.add_gaussian(cfg.noise_scale, rounds);
  double eps = acct.epsilon(cfg.delta_global);
  if (eps > cfg.epsilon_budget_total)
    throw BudgetError("privacy budget exhausted after " +
                      std::to_string(rounds) + " rounds");
  return eps;
}

}  // namespace pgot::agg
