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

#include <cmath>
#include <iosfwd>
#include <random>
#include <string_view>

#include "riscf/geometry.hpp"
#include "riscf/matrix.hpp"
#include "riscf/scenario.hpp"
#include "riscf/seed.hpp"

namespace riscf {

enum class LinkKind { Direct, ApRis, RisUser };

std::string_view link_kind_name(LinkKind kind) noexcept;

// Far-field (d > d1) path-loss exponent configured for the link kind.
double far_exponent(LinkKind kind, const ScenarioConfig& cfg) noexcept;

// Transmitter (higher) and receiver (lower) heights entering the fixed loss.
struct LinkHeights {
  double high_m;
  double low_m;
};
LinkHeights link_heights(LinkKind kind, const ScenarioConfig& cfg) noexcept;

// Hata-COST231 fixed term in dB for carrier f (MHz), base height h_high and
// mobile height h_low (metres).
double hata_fixed_loss_db(double carrier_mhz, double high_m, double low_m) noexcept;

// Three-slope path loss, returned as a (negative) gain in dB:
//   d > d1        : -L - 10 a log10(d/1km)
//   d0 < d <= d1  : -L - 10 a log10(d1/1km) - 20 log10(d/d1)
//   d <= d0       : -L - 10 a log10(d1/1km) - 20 log10(d0/d1)
// Throws std::invalid_argument for d <= 0.
double path_loss_db(double d_m, LinkKind kind, const ScenarioConfig& cfg);

// 10^(sigma z / 10) beyond the breakpoint d1, exactly 1 inside it.
inline double shadowing_linear(double d_m, double d1_m, double sigma_db, double z) noexcept {
  if (d_m <= d1_m || sigma_db == 0.0) return 1.0;
  return std::pow(10.0, sigma_db * z / 10.0);
}

template <class Urbg>
double shadowing_linear(double d_m, double d1_m, double sigma_db, Urbg& eng) {
  if (d_m <= d1_m || sigma_db == 0.0) return 1.0;
  std::normal_distribution<double> z(0.0, 1.0);
  return shadowing_linear(d_m, d1_m, sigma_db, z(eng));
}

struct LargeScale {
  RealMatrix beta_d;  // M x K
  RealMatrix beta_1;  // M x S
  RealMatrix beta_2;  // S x K
};

// Path loss times independent per-link shadowing. Each link's shadowing draw
// is keyed by its endpoint indices. With cfg.beta_override > 0 every entry is
// set to that value and no randomness is consumed.
LargeScale compute_large_scale(const Topology& topo, const ScenarioConfig& cfg,
                               const SeedContext& seed);

// link_kind,i,j,beta_linear,beta_db
void write_large_scale_csv(std::ostream& out, const LargeScale& ls);

}  // namespace riscf
