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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "riscf/channels.hpp"
#include "riscf/geometry.hpp"

using namespace riscf;

namespace {

LargeScale uniform_beta(std::size_t M, std::size_t S, std::size_t K, double v) {
  return {RealMatrix(M, K, v), RealMatrix(M, S, v), RealMatrix(S, K, v)};
}

LargeScale random_beta(std::size_t M, std::size_t S, std::size_t K, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  LargeScale ls = uniform_beta(M, S, K, 0.0);
  for (auto& v : ls.beta_d.flat()) v = u(eng);
  for (auto& v : ls.beta_1.flat()) v = u(eng);
  for (auto& v : ls.beta_2.flat()) v = u(eng);
  return ls;
}

SeedContext seed_of(std::uint64_t master, std::uint64_t topo = 0) {
  SeedContext s;
  s.master_seed = master;
  s.topology = topo;
  return s;
}

}  // namespace

TEST_CASE("surface phases are unit modulus and uniform") {
  const RisPhaseConfig one = draw_ris_phases(1, 1, seed_of(1));
  CHECK(std::abs(one.coefficient(0, 0)) == doctest::Approx(1.0).epsilon(1e-15));

  const std::size_t n = 1000000;
  const RisPhaseConfig many = draw_ris_phases(4, n / 4, seed_of(2));
  const std::size_t bins = 64;
  std::vector<double> hist(bins, 0.0);
  for (std::size_t i = 0; i < many.theta.size(); ++i) {
    CHECK_FALSE((many.theta[i] < 0.0 || many.theta[i] >= 2.0 * std::numbers::pi));
    CHECK(many.amplitude[i] == 1.0);
    ++hist[static_cast<std::size_t>(many.theta[i] / (2.0 * std::numbers::pi) * bins)];
  }
  const double expected = static_cast<double>(n) / bins;
  double chi2 = 0.0;
  for (double h : hist) chi2 += (h - expected) * (h - expected) / expected;
  // 63 degrees of freedom: the 0.999 quantile is about 103.4.
  CHECK(chi2 < 103.4);
}

TEST_CASE("LoS entries carry exactly the AP-surface gain") {
  const LargeScale ls = random_beta(3, 2, 2, 5);
  const LosChannel los = draw_los_channel(ls, 7, seed_of(3));
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t n = 0; n < 7; ++n) {
        CHECK(los.element_power(m, s, n) == ls.beta_1(m, s));
        CHECK(std::norm(los.entry(m, s, n)) == doctest::Approx(ls.beta_1(m, s)).epsilon(1e-14));
      }
}

TEST_CASE("Rayleigh draws have the configured variances") {
  std::mt19937_64 eng(4);
  const std::size_t n = 1000000;
  LargeScale ls = uniform_beta(1, 1, 1, 1.0);
  ls.beta_d(0, 0) = 1e-30;
  double s2 = 0.0, sd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const RayleighChannels r = draw_small_scale(ls, 1, eng);
    s2 += std::norm(r.h_2(0, 0));
    sd += std::norm(r.h_d(0, 0));
  }
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(sd / n < 1e-28);
}

TEST_CASE("aggregate channel hand case and reductions") {
  ComplexMatrix h_d(1, 1, {1.0, 0.0});
  ComplexMatrix cascade(1, 1);
  LosChannel los;
  los.aps = los.surfaces = los.elements = 1;
  los.power = RealMatrix(1, 1, 1.0);
  los.psi = {0.0};
  RisPhaseConfig v;
  v.surfaces = v.elements = 1;
  v.theta = {std::numbers::pi / 2.0};
  v.amplitude = {1.0};
  ComplexMatrix h_2(1, 1, {1.0, 0.0});
  const ComplexMatrix g = aggregate_channel(h_d, cascade_matrix(los, v), h_2);
  CHECK(g(0, 0).real() == doctest::Approx(1.0));
  CHECK(g(0, 0).imag() == doctest::Approx(1.0));

  // No surfaces: g is h_d.
  std::mt19937_64 eng(6);
  const LargeScale ls0 = random_beta(4, 0, 3, 7);
  const RayleighChannels r0 = draw_small_scale(ls0, 5, eng);
  const LosChannel los0 = draw_los_channel(ls0, 5, seed_of(1));
  const RisPhaseConfig ph0 = draw_ris_phases(0, 5, seed_of(1));
  CHECK(aggregate_channel(r0, los0, ph0) == r0.h_d);
  CHECK(channel_variance(ls0, los0, ph0) == ls0.beta_d);
  CHECK_THROWS_AS(aggregate_channel(r0.h_d, ComplexMatrix(3, 2), r0.h_2), std::invalid_argument);
}

TEST_CASE("aggregate channel is linear in h_d and h_2") {
  std::mt19937_64 eng(8);
  const LargeScale ls = random_beta(3, 2, 2, 9);
  const LosChannel los = draw_los_channel(ls, 4, seed_of(2));
  const RisPhaseConfig ph = draw_ris_phases(2, 4, seed_of(2));
  const ComplexMatrix c = cascade_matrix(los, ph);
  const RayleighChannels a = draw_small_scale(ls, 4, eng);
  const RayleighChannels b = draw_small_scale(ls, 4, eng);
  const cdouble x{0.7, -1.3}, y{2.0, 0.5};
  ComplexMatrix hd(3, 2), h2(2, 8), zero_d(3, 2), zero_2(2, 8);
  for (std::size_t i = 0; i < hd.size(); ++i) hd.flat()[i] = x * a.h_d.flat()[i] + y * b.h_d.flat()[i];
  for (std::size_t i = 0; i < h2.size(); ++i) h2.flat()[i] = x * a.h_2.flat()[i] + y * b.h_2.flat()[i];
  // Linear in h_2 with h_d fixed at zero, and additive in h_d.
  const ComplexMatrix lhs = aggregate_channel(zero_d, c, h2);
  const ComplexMatrix ga = aggregate_channel(zero_d, c, a.h_2);
  const ComplexMatrix gb = aggregate_channel(zero_d, c, b.h_2);
  for (std::size_t i = 0; i < lhs.size(); ++i)
    CHECK(std::abs(lhs.flat()[i] - (x * ga.flat()[i] + y * gb.flat()[i])) < 1e-12);
  const ComplexMatrix full = aggregate_channel(hd, c, zero_2);
  CHECK(full == hd);
}

TEST_CASE("channel variance: symmetric value, phase invariance, affine scaling") {
  const LargeScale ls = uniform_beta(5, 30, 4, 1.0);
  const LosChannel los = draw_los_channel(ls, 10, seed_of(1));
  const RealMatrix rho = channel_variance(ls, los, draw_ris_phases(30, 10, seed_of(1)));
  for (double v : rho.flat()) CHECK(v == 301.0);

  const LargeScale rl = random_beta(6, 3, 5, 11);
  const LosChannel rlos = draw_los_channel(rl, 12, seed_of(4));
  const RealMatrix r1 = channel_variance(rl, rlos, draw_ris_phases(3, 12, seed_of(4, 0)));
  const RealMatrix r2 = channel_variance(rl, rlos, draw_ris_phases(3, 12, seed_of(4, 77)));
  CHECK(r1 == r2);

  for (std::size_t N : {1u, 5u, 16u}) {
    const LosChannel l1 = draw_los_channel(rl, N, seed_of(1));
    const LosChannel l2 = draw_los_channel(rl, 2 * N, seed_of(1));
    const RealMatrix a = channel_variance(rl, l1, draw_ris_phases(3, N, seed_of(2)));
    const RealMatrix b = channel_variance(rl, l2, draw_ris_phases(3, 2 * N, seed_of(2)));
    for (std::size_t m = 0; m < 6; ++m)
      for (std::size_t k = 0; k < 5; ++k) {
        double slope = 0.0;
        for (std::size_t s = 0; s < 3; ++s) slope += rl.beta_1(m, s) * rl.beta_2(s, k);
        CHECK(b(m, k) - a(m, k) ==
              doctest::Approx(slope * static_cast<double>(N)).epsilon(1e-12));
      }
  }
  // Affine in S with slope beta_1 beta_2 N per surface: unit betas give S N + 1 exactly.
  for (std::size_t S : {0u, 1u, 2u, 7u}) {
    const LargeScale u = uniform_beta(2, S, 2, 1.0);
    const RealMatrix r = channel_variance(u, draw_los_channel(u, 9, seed_of(1)),
                                          draw_ris_phases(S, 9, seed_of(1)));
    CHECK(r(1, 1) == static_cast<double>(9 * S + 1));
  }
}

TEST_CASE("structured channel variance matches rho") {
  const LargeScale ls = random_beta(2, 3, 2, 13);
  const std::size_t N = 6;
  const LosChannel los = draw_los_channel(ls, N, seed_of(9));
  const RisPhaseConfig ph = draw_ris_phases(3, N, seed_of(9));
  const RealMatrix rho = channel_variance(ls, los, ph);
  const ComplexMatrix c = cascade_matrix(los, ph);
  std::mt19937_64 eng(10);
  const std::size_t n = 100000;
  RealMatrix acc(2, 2);
  ComplexMatrix mean(2, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const RayleighChannels r = draw_small_scale(ls, N, eng);
    const ComplexMatrix g = aggregate_channel(r.h_d, c, r.h_2);
    for (std::size_t j = 0; j < 4; ++j) {
      acc.flat()[j] += std::norm(g.flat()[j]);
      mean.flat()[j] += g.flat()[j];
    }
  }
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(acc.flat()[j] / n == doctest::Approx(rho.flat()[j]).epsilon(0.02));
    CHECK(std::abs(mean.flat()[j] / static_cast<double>(n)) <
          4.0 * std::sqrt(rho.flat()[j] / n));
  }
}

TEST_CASE("marginal channel draws have variance rho") {
  RealMatrix rho(2, 3);
  for (std::size_t i = 0; i < rho.size(); ++i) rho.flat()[i] = 0.5 + static_cast<double>(i);
  std::mt19937_64 eng(12);
  const std::size_t n = 100000;
  RealMatrix acc(2, 3);
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix g = draw_marginal_channel(rho, eng);
    for (std::size_t j = 0; j < g.size(); ++j) acc.flat()[j] += std::norm(g.flat()[j]);
  }
  for (std::size_t j = 0; j < rho.size(); ++j)
    CHECK(acc.flat()[j] / n == doctest::Approx(rho.flat()[j]).epsilon(0.02));
}
