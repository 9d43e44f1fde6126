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

#include <cstdint>
#include <vector>

#include "riscf/channels.hpp"
#include "riscf/downlink.hpp"
#include "riscf/estimation.hpp"
#include "riscf/geometry.hpp"
#include "riscf/large_scale.hpp"
#include "riscf/scenario.hpp"

namespace riscf {

// Everything that is fixed for one topology draw: node placement, large-scale
// fading, the LoS AP-RIS channel, the RIS phases, and the statistics that the
// closed-form rate depends on.
struct NetworkRealization {
  std::uint64_t topology_index = 0;
  LinkBudget budget{};
  Topology topology;
  LargeScale large_scale;
  LosChannel los;
  RisPhaseConfig phases;
  RealMatrix rho;
  RealMatrix gamma;
  PowerControl power;
  SinrTerms terms;
  std::vector<double> closed_form;  // per-user bits/s/Hz
};

SeedContext topology_seed(const ScenarioConfig& cfg, std::uint64_t topology_index);

// cfg must be finalized.
NetworkRealization realize_network(const ScenarioConfig& cfg, std::uint64_t topology_index);

// Recomputes rho, gamma, eta, the SINR terms and the closed-form rates from
// the large-scale state, LoS channel and phases already in `net`.
void refresh_statistics(const ScenarioConfig& cfg, NetworkRealization& net);

// Fresh coherence block `draw`: true channel per cfg.channel_model, then
// uplink training with new pilot noise.
class ChannelSampler {
 public:
  ChannelSampler(const ScenarioConfig& cfg, const NetworkRealization& net);
  ChannelPair operator()(std::size_t draw) const;
  const PilotBook& pilots() const noexcept { return pilots_; }

  // True channel only (no estimation) for draw `draw`.
  ComplexMatrix true_channel(std::size_t draw) const;

 private:
  const ScenarioConfig* cfg_;
  const NetworkRealization* net_;
  PilotBook pilots_;
  ComplexMatrix cascade_;
  SeedContext seed_;
};

McRate simulate_mc_rate(const ScenarioConfig& cfg, const NetworkRealization& net,
                        std::size_t draws, std::size_t threads = 1);

}  // namespace riscf
