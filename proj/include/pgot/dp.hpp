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

#ifndef PGOT_DP_HPP_
#define PGOT_DP_HPP_

#include <cstdint>
#include <vector>

#include "pgot/prg.hpp"

namespace pgot::agg {

struct DpConfig {
  double epsilon_per_round = 1.0;  // declared per-round budget
  double delta_global = 1e-6;
  double clipping_norm = 1.0;  // L2 bound C
  double noise_scale = 0.5;    // Gaussian sigma (noise multiplier)
  // Cumulative (eps, delta)-DP allowance before a contributor is excluded.
  double epsilon_budget_total = 4000.0;
};

// Clips to L2 norm <= C, then adds N(0, sigma^2 C^2) per coordinate.
// Throws NumericError on non-finite input.
std::vector<double> clip_and_noise(const std::vector<double>& update,
                                   const DpConfig& cfg,
                                   crypto::DeterministicRng& rng);

// Rényi-divergence ledger for the subsampled-free Gaussian mechanism:
// eps_rdp(alpha) = alpha * T / (2 sigma^2), converted to (eps, delta)-DP
// as min over alpha of eps_rdp(alpha) + log(1/delta)/(alpha - 1).
class RdpAccountant {
 public:
  RdpAccountant();
  void add_gaussian(double sigma, uint64_t rounds);
  double epsilon(double delta) const;
  const std::vector<double>& orders() const { return orders_; }

 private:
  std::vector<double> orders_;
  std::vector<double> eps_rdp_;
};

// Cumulative epsilon after `rounds` compositions at the configured sigma.
// Throws BudgetError when it exceeds the configured total allowance.
double account_privacy(const DpConfig& cfg, uint64_t rounds);

}  // namespace pgot::agg

#endif  // PGOT_DP_HPP_
