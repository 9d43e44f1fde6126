// Copyright 2026 The riscf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "riscf/matrix.hpp"

namespace riscf {

// Power-control coefficients eta[m][k]. Feasible when
// sum_k eta[m][k] gamma[m][k] <= 1 for every AP.
struct PowerControl {
  RealMatrix eta;
};

// Full power split uniformly over users: eta[m][k] = 1 / sum_k' gamma[m][k'].
// Throws std::invalid_argument if any gamma is not strictly positive.
PowerControl default_eta(const RealMatrix& gamma);

// sum_k eta[m][k] gamma[m][k] for AP m.
double power_constraint_value(const PowerControl& pc, const RealMatrix& gamma, std::size_t m);

// Expected-value terms of the use-and-then-forget decomposition, per user k:
//   desired[k]          = sqrt(p_d) sum_m eta[m][k]^1/2 gamma[m][k]
//   uncertainty[k]      = E|B_k|^2 = p_d sum_m eta[m][k] gamma[m][k] rho[m][k]
//   interference(k, k') = E|U_kk'|^2 = p_d sum_m eta[m][k'] gamma[m][k'] rho[m][k]
// The diagonal of `interference` coincides with `uncertainty`.
struct SinrTerms {
  std::vector<double> desired;
  std::vector<double> uncertainty;
  RealMatrix interference;

  std::size_t users() const noexcept { return desired.size(); }
  // E|B_k|^2 + sum_{k' != k} E|U_kk'|^2 + 1
  double effective_noise(std::size_t k) const;
};

SinrTerms sinr_terms(const RealMatrix& gamma, const RealMatrix& rho, const PowerControl& pc,
                     double p_d);

// log2(1 + D_k^2 / (E|B_k|^2 + sum_{k'!=k} E|U_kk'|^2 + 1))
std::vector<double> closed_form_rate(const SinrTerms& terms);

// Single-fraction form: numerator p_d (sum_m eta^1/2 gamma)^2, denominator
// p_d sum_{k'} sum_m eta[m][k'] gamma[m][k'] rho[m][k] + 1.
std::vector<double> closed_form_rate_direct(const RealMatrix& gamma, const RealMatrix& rho,
                                            const PowerControl& pc, double p_d);
// The two denominators above, for the identity check.
std::vector<double> single_fraction_denominator(const RealMatrix& gamma, const RealMatrix& rho,
                                                const PowerControl& pc, double p_d);

// (1 - tau_c/tau) / 2
double prelog(std::size_t tau_c, std::size_t tau);
double sum_rate(std::span<const double> rates, std::size_t tau_c, std::size_t tau);
double per_user_throughput(double rate, double bandwidth_hz, std::size_t tau_c, std::size_t tau);

// x[m] = sqrt(p_d) sum_k eta[m][k]^1/2 conj(g_hat[m][k]) s[k]
std::vector<cdouble> transmit_signal(const ComplexMatrix& g_hat, const PowerControl& pc,
                                     double p_d, std::span<const cdouble> symbols);

// gains(k, k') = sum_m eta[m][k']^1/2 g[m][k] conj(g_hat[m][k'])
ComplexMatrix beamforming_gains(const ComplexMatrix& g, const ComplexMatrix& g_hat,
                                const PowerControl& pc);

// Per-user rate when the receiver knows the effective gains of this draw.
std::vector<double> instantaneous_rates(const ComplexMatrix& gains, double p_d);

// Per-user sample mean and standard error.
struct McRate {
  std::vector<double> mean;
  std::vector<double> stderr_;
  std::size_t draws = 0;

  double user_average() const;
  // Standard error of the user-averaged rate, estimated from per-draw averages.
  double user_average_stderr = 0.0;
};

// Running per-user sums for rate samples.
class RateAccumulator {
 public:
  explicit RateAccumulator(std::size_t users = 0)
      : sum_(users, 0.0), sum_sq_(users, 0.0) {}
  void add(std::span<const double> rates);
  void merge(const RateAccumulator& other);
  McRate result() const;
  std::size_t count() const noexcept { return count_; }

 private:
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
  double avg_sum_ = 0.0;
  double avg_sum_sq_ = 0.0;
  std::size_t count_ = 0;
};

struct ChannelPair {
  ComplexMatrix g;
  ComplexMatrix g_hat;
};

// Returns the true channel and its estimate for draw index i.
using ChannelDrawFn = std::function<ChannelPair(std::size_t draw)>;

// Draws are processed in fixed blocks whose partial sums are merged in block
// order, so the result does not depend on `threads`. Throws
// std::invalid_argument for zero draws.
McRate mc_rate(const ChannelDrawFn& draw, const PowerControl& pc, double p_d, std::size_t draws,
               std::size_t threads = 1);

}  // namespace riscf
