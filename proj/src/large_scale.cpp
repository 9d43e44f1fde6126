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

#include "riscf/large_scale.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace riscf {

std::string_view link_kind_name(LinkKind kind) noexcept {
  switch (kind) {
    case LinkKind::Direct:
      return "direct";
    case LinkKind::ApRis:
      return "ap_ris";
    case LinkKind::RisUser:
      return "ris_user";
  }
  return "?";
}

double far_exponent(LinkKind kind, const ScenarioConfig& cfg) noexcept {
  switch (kind) {
    case LinkKind::Direct:
      return cfg.pathloss_exp_direct;
    case LinkKind::ApRis:
      return cfg.pathloss_exp_ap_ris;
    case LinkKind::RisUser:
      return cfg.pathloss_exp_ris_user;
  }
  return cfg.pathloss_exp_direct;
}

LinkHeights link_heights(LinkKind kind, const ScenarioConfig& cfg) noexcept {
  switch (kind) {
    case LinkKind::Direct:
      return {std::max(cfg.ap_height_m, cfg.user_height_m),
              std::min(cfg.ap_height_m, cfg.user_height_m)};
    case LinkKind::ApRis:
      return {std::max(cfg.ap_height_m, cfg.ris_height_m),
              std::min(cfg.ap_height_m, cfg.ris_height_m)};
    case LinkKind::RisUser:
      return {std::max(cfg.ris_height_m, cfg.user_height_m),
              std::min(cfg.ris_height_m, cfg.user_height_m)};
  }
  return {cfg.ap_height_m, cfg.user_height_m};
}

double hata_fixed_loss_db(double carrier_mhz, double high_m, double low_m) noexcept {
  const double lf = std::log10(carrier_mhz);
  return 46.3 + 33.9 * lf - 13.82 * std::log10(high_m) - (1.1 * lf - 0.7) * low_m +
         (1.56 * lf - 0.8);
}

double path_loss_db(double d_m, LinkKind kind, const ScenarioConfig& cfg) {
  if (!(d_m > 0.0)) throw std::invalid_argument("path_loss_db: distance must be > 0");
  const LinkHeights h = link_heights(kind, cfg);
  const double fixed = hata_fixed_loss_db(cfg.carrier_freq_ghz * 1000.0, h.high_m, h.low_m);
  const double alpha = far_exponent(kind, cfg);
  const double d0 = cfg.breakpoint_d0_m;
  const double d1 = cfg.breakpoint_d1_m;
  if (d_m > d1) return -fixed - 10.0 * alpha * std::log10(d_m / 1000.0);
  const double at_d1 = -fixed - 10.0 * alpha * std::log10(d1 / 1000.0);
  if (d_m > d0) return at_d1 - 20.0 * std::log10(d_m / d1);
  return at_d1 - 20.0 * std::log10(d0 / d1);
}

namespace {

double link_beta(double d_m, LinkKind kind, const ScenarioConfig& cfg, SplitMix64 eng) {
  // Coincident nodes fall in the constant near-field region anyway.
  const double d = std::max(d_m, std::min(cfg.breakpoint_d0_m, 1e-9));
  const double gain = db_to_linear(path_loss_db(d, kind, cfg));
  return gain * shadowing_linear(d, cfg.breakpoint_d1_m, cfg.shadow_std_db, eng);
}

}  // namespace

LargeScale compute_large_scale(const Topology& topo, const ScenarioConfig& cfg,
                               const SeedContext& seed) {
  const std::size_t M = topo.aps.size();
  const std::size_t K = topo.users.size();
  const std::size_t S = topo.surfaces.size();
  LargeScale ls{RealMatrix(M, K), RealMatrix(M, S), RealMatrix(S, K)};

  if (cfg.beta_override > 0.0) {
    ls.beta_d = RealMatrix(M, K, cfg.beta_override);
    ls.beta_1 = RealMatrix(M, S, cfg.beta_override);
    ls.beta_2 = RealMatrix(S, K, cfg.beta_override);
    return ls;
  }

  const SeedContext base = seed.with_channel(0);
  const SeedContext direct = base.with_purpose(Stream::ShadowDirect);
  const SeedContext ap_ris = base.with_purpose(Stream::ShadowApRis);
  const SeedContext ris_user = base.with_purpose(Stream::ShadowRisUser);

  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t k = 0; k < K; ++k)
      ls.beta_d(m, k) = link_beta(distance_m(topo.aps[m], topo.users[k]), LinkKind::Direct, cfg,
                                  direct.keyed(m, k));
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t s = 0; s < S; ++s)
      ls.beta_1(m, s) = link_beta(distance_m(topo.aps[m], topo.surfaces[s]), LinkKind::ApRis, cfg,
                                  ap_ris.keyed(m, s));
  for (std::size_t s = 0; s < S; ++s)
    for (std::size_t k = 0; k < K; ++k)
      ls.beta_2(s, k) = link_beta(distance_m(topo.surfaces[s], topo.users[k]), LinkKind::RisUser,
                                  cfg, ris_user.keyed(s, k));
  return ls;
}

void write_large_scale_csv(std::ostream& out, const LargeScale& ls) {
  out << "link_kind,i,j,beta_linear,beta_db\n";
  const auto old = out.precision(17);
  auto dump = [&out](LinkKind kind, const RealMatrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        out << link_kind_name(kind) << ',' << i << ',' << j << ',' << b(i, j) << ','
            << linear_to_db(b(i, j)) << '\n';
  };
  dump(LinkKind::Direct, ls.beta_d);
  dump(LinkKind::ApRis, ls.beta_1);
  dump(LinkKind::RisUser, ls.beta_2);
  out.precision(old);
}

}  // namespace riscf
