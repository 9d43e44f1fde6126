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

#include "riscf/channels.hpp"

#include <numbers>
#include <stdexcept>

#include "riscf/kernels.hpp"

namespace riscf {

RisPhaseConfig draw_ris_phases(std::size_t surfaces, std::size_t elements, const SeedContext& seed) {
  RisPhaseConfig out;
  out.surfaces = surfaces;
  out.elements = elements;
  out.theta.resize(surfaces * elements);
  out.amplitude.assign(surfaces * elements, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const SeedContext ctx = seed.with_purpose(Stream::RisPhase);
  for (std::size_t s = 0; s < surfaces; ++s) {
    auto eng = ctx.keyed(s);
    for (std::size_t n = 0; n < elements; ++n) out.theta[s * elements + n] = phase(eng);
  }
  return out;
}

LosChannel draw_los_channel(const LargeScale& ls, std::size_t elements, const SeedContext& seed) {
  LosChannel los;
  los.aps = ls.beta_1.rows();
  los.surfaces = ls.beta_1.cols();
  los.elements = elements;
  los.power = ls.beta_1;
  los.psi.resize(los.aps * los.surfaces * elements);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const SeedContext ctx = seed.with_channel(0).with_purpose(Stream::LosPhase);
  for (std::size_t m = 0; m < los.aps; ++m)
    for (std::size_t s = 0; s < los.surfaces; ++s) {
      auto eng = ctx.keyed(m, s);
      double* out = los.psi.data() + (m * los.surfaces + s) * elements;
      for (std::size_t n = 0; n < elements; ++n) out[n] = phase(eng);
    }
  return los;
}

RayleighChannels draw_small_scale(const LargeScale& ls, std::size_t elements,
                                  std::mt19937_64& eng) {
  const std::size_t M = ls.beta_d.rows();
  const std::size_t K = ls.beta_d.cols();
  const std::size_t S = ls.beta_2.rows();
  RayleighChannels out{ComplexMatrix(M, K), ComplexMatrix(K, S * elements)};
  std::normal_distribution<double> unit(0.0, std::numbers::sqrt2 / 2.0);
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t k = 0; k < K; ++k) {
      const double a = std::sqrt(ls.beta_d(m, k));
      const double re = unit(eng);
      const double im = unit(eng);
      out.h_d(m, k) = {a * re, a * im};
    }
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t s = 0; s < S; ++s) {
      const double a = std::sqrt(ls.beta_2(s, k));
      for (std::size_t n = 0; n < elements; ++n) {
        const double re = unit(eng);
        const double im = unit(eng);
        out.h_2(k, s * elements + n) = {a * re, a * im};
      }
    }
  return out;
}

ComplexMatrix cascade_matrix(const LosChannel& los, const RisPhaseConfig& phases) {
  if (phases.surfaces != los.surfaces || phases.elements != los.elements)
    throw std::invalid_argument("cascade_matrix: phase configuration does not match LoS channel");
  const std::size_t N = los.elements;
  ComplexMatrix out(los.aps, los.surfaces * N);
  for (std::size_t m = 0; m < los.aps; ++m)
    for (std::size_t s = 0; s < los.surfaces; ++s)
      for (std::size_t n = 0; n < N; ++n)
        out(m, s * N + n) = los.entry(m, s, n) * phases.coefficient(s, n);
  return out;
}

ComplexMatrix aggregate_channel(const ComplexMatrix& h_d, const ComplexMatrix& cascade,
                                const ComplexMatrix& h_2) {
  const std::size_t M = h_d.rows();
  const std::size_t K = h_d.cols();
  if (cascade.rows() != M || h_2.rows() != K || cascade.cols() != h_2.cols())
    throw std::invalid_argument("aggregate_channel: shape mismatch");
  ComplexMatrix g = h_d;
  if (cascade.cols() == 0) return g;
  const auto& kern = kernels::active();
  for (std::size_t m = 0; m < M; ++m) {
    const auto a = cascade.row(m);
    for (std::size_t k = 0; k < K; ++k)
      g(m, k) += kern.dotu(a.data(), h_2.row(k).data(), a.size());
  }
  return g;
}

ComplexMatrix aggregate_channel(const RayleighChannels& ray, const LosChannel& los,
                                const RisPhaseConfig& phases) {
  return aggregate_channel(ray.h_d, cascade_matrix(los, phases), ray.h_2);
}

RealMatrix channel_variance(const LargeScale& ls, const LosChannel& los,
                            const RisPhaseConfig& phases) {
  const std::size_t M = ls.beta_d.rows();
  const std::size_t K = ls.beta_d.cols();
  const std::size_t S = ls.beta_2.rows();
  const std::size_t N = los.elements;
  if (los.aps != M || los.surfaces != S || phases.surfaces != S || phases.elements != N)
    throw std::invalid_argument("channel_variance: shape mismatch");

  // reflected[m][s] = h_1 Theta Theta^H h_1^H = sum_n |h_1[m][s][n]|^2 amplitude[s][n]^2
  RealMatrix reflected(M, S);
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t s = 0; s < S; ++s) {
      double acc = 0.0;
      for (std::size_t n = 0; n < N; ++n) {
        const double a = phases.amplitude[s * N + n];
        acc += los.element_power(m, s, n) * (a * a);
      }
      reflected(m, s) = acc;
    }

  RealMatrix rho = ls.beta_d;
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t k = 0; k < K; ++k) {
      double acc = 0.0;
      for (std::size_t s = 0; s < S; ++s) acc += ls.beta_2(s, k) * reflected(m, s);
      rho(m, k) = acc + ls.beta_d(m, k);
    }
  return rho;
}

ComplexMatrix draw_marginal_channel(const RealMatrix& rho, std::mt19937_64& eng) {
  ComplexMatrix g(rho.rows(), rho.cols());
  std::normal_distribution<double> unit(0.0, std::numbers::sqrt2 / 2.0);
  for (std::size_t m = 0; m < rho.rows(); ++m)
    for (std::size_t k = 0; k < rho.cols(); ++k) {
      const double a = std::sqrt(rho(m, k));
      const double re = unit(eng);
      const double im = unit(eng);
      g(m, k) = {a * re, a * im};
    }
  return g;
}

}  // namespace riscf
