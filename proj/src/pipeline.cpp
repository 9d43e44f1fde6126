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

#include "riscf/pipeline.hpp"

namespace riscf {

SeedContext topology_seed(const ScenarioConfig& cfg, std::uint64_t topology_index) {
  SeedContext s;
  s.master_seed = cfg.master_seed;
  s.topology = topology_index;
  return s;
}

void refresh_statistics(const ScenarioConfig& cfg, NetworkRealization& net) {
  net.rho = channel_variance(net.large_scale, net.los, net.phases);
  net.gamma = gamma_matrix(net.rho, static_cast<double>(cfg.pilot_len_symbols), net.budget.p_c);
  net.power = default_eta(net.gamma);
  net.terms = sinr_terms(net.gamma, net.rho, net.power, net.budget.p_d);
  net.closed_form = closed_form_rate(net.terms);
}

NetworkRealization realize_network(const ScenarioConfig& cfg, std::uint64_t topology_index) {
  NetworkRealization net;
  net.topology_index = topology_index;
  net.budget = link_budget(cfg);
  const SeedContext seed = topology_seed(cfg, topology_index);
  net.topology = draw_topology(cfg, seed);
  net.large_scale = compute_large_scale(net.topology, cfg, seed);
  net.los = draw_los_channel(net.large_scale, cfg.elements_per_ris, seed);
  net.phases = draw_ris_phases(cfg.ris_count, cfg.elements_per_ris, seed.with_channel(0));
  refresh_statistics(cfg, net);
  return net;
}

ChannelSampler::ChannelSampler(const ScenarioConfig& cfg, const NetworkRealization& net)
    : cfg_(&cfg),
      net_(&net),
      pilots_(PilotBook::dft(cfg.pilot_len_symbols, cfg.user_count)),
      seed_(topology_seed(cfg, net.topology_index)) {
  if (cfg.channel_model == ChannelModel::Structured && !cfg.redraw_phases)
    cascade_ = cascade_matrix(net.los, net.phases);
}

ComplexMatrix ChannelSampler::true_channel(std::size_t draw) const {
  // Channel index 0 is reserved for per-topology draws.
  const SeedContext blk = seed_.with_channel(draw + 1);
  if (cfg_->channel_model == ChannelModel::Marginal) {
    auto eng = blk.with_purpose(Stream::MarginalChannel).engine();
    return draw_marginal_channel(net_->rho, eng);
  }
  auto eng = blk.with_purpose(Stream::RisUserFading).engine();
  const RayleighChannels ray = draw_small_scale(net_->large_scale, cfg_->elements_per_ris, eng);
  if (cfg_->redraw_phases) {
    const RisPhaseConfig phases = draw_ris_phases(cfg_->ris_count, cfg_->elements_per_ris, blk);
    return aggregate_channel(ray, net_->los, phases);
  }
  return aggregate_channel(ray.h_d, cascade_, ray.h_2);
}

ChannelPair ChannelSampler::operator()(std::size_t draw) const {
  ComplexMatrix g = true_channel(draw);
  auto noise = seed_.with_channel(draw + 1).with_purpose(Stream::PilotNoise).engine();
  ComplexMatrix g_hat = estimate_from_pilots(g, net_->rho, pilots_, net_->budget.p_c, noise);
  return {std::move(g), std::move(g_hat)};
}

McRate simulate_mc_rate(const ScenarioConfig& cfg, const NetworkRealization& net,
                        std::size_t draws, std::size_t threads) {
  const ChannelSampler sampler(cfg, net);
  return mc_rate([&sampler](std::size_t i) { return sampler(i); }, net.power, net.budget.p_d,
                 draws, threads);
}

}  // namespace riscf
