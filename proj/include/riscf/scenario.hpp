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
#include <cstdint>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace riscf {

// Raised for malformed scenario input or violated invariants. `field()` names
// the offending key so the CLI can report it.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// How per-draw aggregate channels are generated for Monte-Carlo rates.
//   Marginal   - g[m,k] ~ CN(0, rho[m,k]) independently per AP/user pair.
//   Structured - g = h_1 * Theta * h_2 + h_d from the per-link realizations.
enum class ChannelModel { Marginal, Structured };

struct ScenarioConfig {
  double area_side_km = 1.0;
  std::size_t ap_count = 0;
  std::size_t user_count = 0;
  std::size_t ris_count = 0;
  std::size_t elements_per_ris = 0;
  double carrier_freq_ghz = 1.9;
  double bandwidth_hz = 20e6;
  double noise_figure_db = 9.0;
  double ap_height_m = 15.0;
  double ris_height_m = 18.0;
  double user_height_m = 1.65;
  double shadow_std_db = 8.0;
  double data_power_w = 0.2;
  double pilot_power_w = 0.2;
  double breakpoint_d0_m = 10.0;
  double breakpoint_d1_m = 50.0;
  std::size_t coherence_len_symbols = 200;
  // 0 until finalize(); then K unless set explicitly.
  std::size_t pilot_len_symbols = 0;
  double pathloss_exp_direct = 3.5;
  double pathloss_exp_ris_user = 2.8;
  double pathloss_exp_ap_ris = 2.0;
  std::size_t topology_draws = 100;
  std::size_t channel_draws_per_topology = 1000;
  std::uint64_t master_seed = 1;

  // When > 0 every large-scale coefficient is forced to this value.
  double beta_override = 0.0;
  ChannelModel channel_model = ChannelModel::Marginal;
  // Redraw RIS phases for every channel draw (structured model only).
  bool redraw_phases = false;

  bool pilot_len_defaulted = true;
  std::set<std::string> explicit_keys;

  bool is_explicit(std::string_view key) const {
    return explicit_keys.count(std::string(key)) != 0;
  }
};

// Key/value assignment with parsing. `key` must be a field name or one of the
// short aliases M, K, S, N, D, tau, tau_c. Throws ConfigError.
void set_field(ScenarioConfig& cfg, std::string_view key, std::string_view value);

// Canonical field name for `key` (aliases resolved). Throws ConfigError for
// unknown keys.
std::string resolve_key(std::string_view key);

// Resolves defaults that depend on other fields and checks every invariant.
void finalize(ScenarioConfig& cfg);
void validate(const ScenarioConfig& cfg);

// Parses the flat `key = value` format. '#' starts a comment. Does not finalize.
ScenarioConfig parse_scenario_text(std::string_view text);

// Reads, parses and finalizes a scenario file.
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Sorted `key = value` lines covering every field; the input to config_hash.
std::string canonical_text(const ScenarioConfig& cfg);
std::uint64_t config_hash(const ScenarioConfig& cfg);
std::string config_hash_hex(const ScenarioConfig& cfg);
// Hash of the canonical text followed by `extra` (e.g. a sweep description).
std::string config_hash_hex(const ScenarioConfig& cfg, std::string_view extra);

std::string_view channel_model_name(ChannelModel m) noexcept;

inline constexpr double kBoltzmann = 1.381e-23;
inline constexpr double kNoiseTemperatureK = 290.0;

double db_to_linear(double db) noexcept;
double linear_to_db(double linear) noexcept;
double dbm_to_w(double dbm) noexcept;
double w_to_dbm(double watts) noexcept;

// bandwidth * k_B * T0 * 10^(NF/10)
double noise_power_w(double bandwidth_hz, double noise_figure_db);
double normalized_snr(double tx_power_w, double noise_power_w);

// Normalized data and pilot SNRs p_d, p_c for a finalized config.
struct LinkBudget {
  double noise_w;
  double p_d;
  double p_c;
};
LinkBudget link_budget(const ScenarioConfig& cfg);

}  // namespace riscf
