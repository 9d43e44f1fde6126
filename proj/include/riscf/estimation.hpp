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
#include <span>

#include "riscf/matrix.hpp"

namespace riscf {

// K orthonormal pilot sequences of length tau_c.
class PilotBook {
 public:
  // First K columns of the unitary tau_c-point DFT matrix.
  static PilotBook dft(std::size_t length, std::size_t users);

  std::size_t length() const noexcept { return by_user_.cols(); }
  std::size_t users() const noexcept { return by_user_.rows(); }
  std::span<const cdouble> pilot(std::size_t k) const noexcept { return by_user_.row(k); }
  // Row t holds symbol t of every pilot.
  std::span<const cdouble> symbol(std::size_t t) const noexcept { return by_symbol_.row(t); }

 private:
  ComplexMatrix by_user_;    // K x tau_c
  ComplexMatrix by_symbol_;  // tau_c x K
};

// y[m] = sqrt(tau_c p_c) sum_k g[m][k] phi_k + w[m]; returns M x tau_c.
ComplexMatrix receive_pilots(const ComplexMatrix& g, const PilotBook& pilots, double p_c,
                             const ComplexMatrix& noise);
ComplexMatrix receive_pilots(const ComplexMatrix& g, const PilotBook& pilots, double p_c,
                             std::mt19937_64& eng);

// projected[m][k] = phi_k^H y[m]
ComplexMatrix project_pilots(const ComplexMatrix& received, const PilotBook& pilots);

inline cdouble mmse_estimate(cdouble projected, double rho, double tau_c, double p_c) noexcept {
  const double tp = tau_c * p_c;
  return (std::sqrt(tp) * rho / (tp * rho + 1.0)) * projected;
}

// Variance of the MMSE estimate: tau_c p_c rho^2 / (tau_c p_c rho + 1).
inline double gamma_of(double rho, double tau_c, double p_c) noexcept {
  const double tp = tau_c * p_c;
  return tp * rho * rho / (tp * rho + 1.0);
}

RealMatrix gamma_matrix(const RealMatrix& rho, double tau_c, double p_c);

struct ChannelEstimate {
  ComplexMatrix g_hat;
  RealMatrix gamma;
};

// Full uplink training: pilot reception with fresh noise, projection, MMSE.
ChannelEstimate estimate_channels(const ComplexMatrix& g, const RealMatrix& rho,
                                  const PilotBook& pilots, double p_c, std::mt19937_64& eng);

// Same, with gamma precomputed (it depends only on rho).
ComplexMatrix estimate_from_pilots(const ComplexMatrix& g, const RealMatrix& rho,
                                   const PilotBook& pilots, double p_c, std::mt19937_64& eng);

}  // namespace riscf
