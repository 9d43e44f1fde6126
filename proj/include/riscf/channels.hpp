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
#include <random>
#include <vector>

#include "riscf/large_scale.hpp"
#include "riscf/matrix.hpp"
#include "riscf/seed.hpp"

namespace riscf {

// Reflection coefficients v[s][n] = amplitude * exp(j theta). Amplitudes are
// kept separately so Theta Theta^H = diag(amplitude^2) is exact.
struct RisPhaseConfig {
  std::size_t surfaces = 0;
  std::size_t elements = 0;
  std::vector<double> theta;      // surfaces * elements, radians in [0, 2 pi)
  std::vector<double> amplitude;  // surfaces * elements

  cdouble coefficient(std::size_t s, std::size_t n) const {
    const std::size_t i = s * elements + n;
    return std::polar(amplitude[i], theta[i]);
  }
};

// Uniform phases, unit amplitudes. Uses seed.topology and seed.channel.
RisPhaseConfig draw_ris_phases(std::size_t surfaces, std::size_t elements, const SeedContext& seed);

// AP-RIS line-of-sight channel h_1[m][s][n] = sqrt(beta_1[m][s]) exp(j psi).
// Element power is stored exactly so |h_1|^2 = beta_1 holds by construction.
struct LosChannel {
  std::size_t aps = 0;
  std::size_t surfaces = 0;
  std::size_t elements = 0;
  RealMatrix power;          // M x S, equals beta_1
  std::vector<double> psi;   // M * S * N

  double element_power(std::size_t m, std::size_t s, std::size_t /*n*/) const {
    return power(m, s);
  }
  cdouble entry(std::size_t m, std::size_t s, std::size_t n) const {
    return std::polar(std::sqrt(power(m, s)), psi[(m * surfaces + s) * elements + n]);
  }
};

// Drawn once per topology; phases keyed by (m, s) so deployments nest.
LosChannel draw_los_channel(const LargeScale& ls, std::size_t elements, const SeedContext& seed);

// Per-coherence-block Rayleigh channels.
struct RayleighChannels {
  ComplexMatrix h_d;  // M x K, CN(0, beta_d)
  ComplexMatrix h_2;  // K x (S*N): row k holds h_2[s][k][n] at column s*N + n
};

RayleighChannels draw_small_scale(const LargeScale& ls, std::size_t elements, std::mt19937_64& eng);

// cascade[m][s*N + n] = h_1[m][s][n] * v[s][n]
ComplexMatrix cascade_matrix(const LosChannel& los, const RisPhaseConfig& phases);

// g[m][k] = sum_{s,n} cascade[m][s*N + n] * h_2[k][s*N + n] + h_d[m][k].
// Throws std::invalid_argument on shape mismatch.
ComplexMatrix aggregate_channel(const ComplexMatrix& h_d, const ComplexMatrix& cascade,
                                const ComplexMatrix& h_2);
ComplexMatrix aggregate_channel(const RayleighChannels& ray, const LosChannel& los,
                                const RisPhaseConfig& phases);

// rho[m][k] = sum_s beta_2[s][k] * h_1 Theta Theta^H h_1^H + beta_d[m][k].
RealMatrix channel_variance(const LargeScale& ls, const LosChannel& los,
                            const RisPhaseConfig& phases);

// g[m][k] ~ CN(0, rho[m][k]) independently.
ComplexMatrix draw_marginal_channel(const RealMatrix& rho, std::mt19937_64& eng);

// Standard circularly-symmetric complex Gaussian with variance `var`.
template <class Urbg>
cdouble complex_normal(Urbg& eng, double var = 1.0) {
  std::normal_distribution<double> n(0.0, std::sqrt(var / 2.0));
  const double re = n(eng);
  const double im = n(eng);
  return {re, im};
}

}  // namespace riscf
