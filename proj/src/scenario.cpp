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

#include "riscf/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace riscf {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end || !std::isfinite(out))
    throw ConfigError(std::string(key), "expected a number, got '" + std::string(value) + "'");
  return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    // Accept integral values written in floating notation, e.g. 2e4.
    const double d = parse_double(key, value);
    if (d < 0 || d != std::floor(d) || d > 1.8e19)
      throw ConfigError(std::string(key),
                        "expected a non-negative integer, got '" + std::string(value) + "'");
    return static_cast<std::uint64_t>(d);
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw ConfigError(std::string(key), "expected a boolean, got '" + std::string(value) + "'");
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

struct Field {
  std::string_view name;
  std::function<void(ScenarioConfig&, std::string_view, std::string_view)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

template <class T>
Field real_field(std::string_view name, T ScenarioConfig::*member) {
  return {name,
          [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
            c.*member = parse_double(k, v);
          },
          [member](const ScenarioConfig& c) { return format_double(c.*member); }};
}

template <class T>
Field count_field(std::string_view name, T ScenarioConfig::*member) {
  return {name,
          [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
            c.*member = static_cast<T>(parse_u64(k, v));
          },
          [member](const ScenarioConfig& c) { return std::to_string(c.*member); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(real_field("area_side_km", &ScenarioConfig::area_side_km));
    f.push_back(count_field("ap_count", &ScenarioConfig::ap_count));
    f.push_back(count_field("user_count", &ScenarioConfig::user_count));
    f.push_back(count_field("ris_count", &ScenarioConfig::ris_count));
    f.push_back(count_field("elements_per_ris", &ScenarioConfig::elements_per_ris));
    f.push_back(real_field("carrier_freq_ghz", &ScenarioConfig::carrier_freq_ghz));
    f.push_back(real_field("bandwidth_hz", &ScenarioConfig::bandwidth_hz));
    f.push_back(real_field("noise_figure_db", &ScenarioConfig::noise_figure_db));
    f.push_back(real_field("ap_height_m", &ScenarioConfig::ap_height_m));
    f.push_back(real_field("ris_height_m", &ScenarioConfig::ris_height_m));
    f.push_back(real_field("user_height_m", &ScenarioConfig::user_height_m));
    f.push_back(real_field("shadow_std_db", &ScenarioConfig::shadow_std_db));
    f.push_back(real_field("data_power_w", &ScenarioConfig::data_power_w));
    f.push_back(real_field("pilot_power_w", &ScenarioConfig::pilot_power_w));
    f.push_back(real_field("breakpoint_d0_m", &ScenarioConfig::breakpoint_d0_m));
    f.push_back(real_field("breakpoint_d1_m", &ScenarioConfig::breakpoint_d1_m));
    f.push_back(count_field("coherence_len_symbols", &ScenarioConfig::coherence_len_symbols));
    f.push_back({"pilot_len_symbols",
                 [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                   c.pilot_len_symbols = static_cast<std::size_t>(parse_u64(k, v));
                   c.pilot_len_defaulted = false;
                 },
                 [](const ScenarioConfig& c) { return std::to_string(c.pilot_len_symbols); }});
    f.push_back(real_field("pathloss_exp_direct", &ScenarioConfig::pathloss_exp_direct));
    f.push_back(real_field("pathloss_exp_ris_user", &ScenarioConfig::pathloss_exp_ris_user));
    f.push_back(real_field("pathloss_exp_ap_ris", &ScenarioConfig::pathloss_exp_ap_ris));
    f.push_back(count_field("topology_draws", &ScenarioConfig::topology_draws));
    f.push_back(count_field("channel_draws_per_topology",
                            &ScenarioConfig::channel_draws_per_topology));
    f.push_back(count_field("master_seed", &ScenarioConfig::master_seed));
    f.push_back(real_field("beta_override", &ScenarioConfig::beta_override));
    f.push_back({"channel_model",
                 [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                   if (v == "marginal") {
                     c.channel_model = ChannelModel::Marginal;
                   } else if (v == "structured") {
                     c.channel_model = ChannelModel::Structured;
                   } else {
                     throw ConfigError(std::string(k), "expected 'marginal' or 'structured', got '" +
                                                           std::string(v) + "'");
                   }
                 },
                 [](const ScenarioConfig& c) {
                   return std::string(channel_model_name(c.channel_model));
                 }});
    f.push_back({"redraw_phases",
                 [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                   c.redraw_phases = parse_bool(k, v);
                 },
                 [](const ScenarioConfig& c) { return std::string(c.redraw_phases ? "1" : "0"); }});
    return f;
  }();
  return table;
}

const Field* find_field(std::string_view name) {
  for (const auto& f : fields())
    if (f.name == name) return &f;
  return nullptr;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw ConfigError(name, "must be strictly positive, got " + format_double(v));
}

}  // namespace

std::string resolve_key(std::string_view key) {
  static const std::array<std::pair<std::string_view, std::string_view>, 7> aliases{{
      {"M", "ap_count"},
      {"K", "user_count"},
      {"S", "ris_count"},
      {"N", "elements_per_ris"},
      {"D", "area_side_km"},
      {"tau", "coherence_len_symbols"},
      {"tau_c", "pilot_len_symbols"},
  }};
  for (const auto& [alias, name] : aliases)
    if (alias == key) return std::string(name);
  if (find_field(key) == nullptr) throw ConfigError(std::string(key), "unknown key");
  return std::string(key);
}

void set_field(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  const std::string name = resolve_key(trim(key));
  find_field(name)->set(cfg, name, trim(value));
  cfg.explicit_keys.insert(name);
}

void finalize(ScenarioConfig& cfg) {
  for (const char* required : {"ap_count", "user_count", "ris_count", "elements_per_ris"})
    if (!cfg.is_explicit(required)) throw ConfigError(required, "required field is missing");
  if (cfg.pilot_len_defaulted) cfg.pilot_len_symbols = cfg.user_count;
  validate(cfg);
}

void validate(const ScenarioConfig& cfg) {
  if (cfg.ap_count < 1) throw ConfigError("ap_count", "must be >= 1");
  if (cfg.user_count < 1) throw ConfigError("user_count", "must be >= 1");
  if (cfg.elements_per_ris < 1) throw ConfigError("elements_per_ris", "must be >= 1");
  if (cfg.pilot_len_symbols < cfg.user_count)
    throw ConfigError("pilot_len_symbols",
                      "orthogonal pilots need tau_c >= user_count (" +
                          std::to_string(cfg.pilot_len_symbols) + " < " +
                          std::to_string(cfg.user_count) + ")");
  if (cfg.pilot_len_symbols >= cfg.coherence_len_symbols)
    throw ConfigError("pilot_len_symbols", "tau_c must be < coherence_len_symbols (" +
                                               std::to_string(cfg.pilot_len_symbols) +
                                               " >= " + std::to_string(cfg.coherence_len_symbols) +
                                               ")");
  require_positive(cfg.area_side_km, "area_side_km");
  require_positive(cfg.carrier_freq_ghz, "carrier_freq_ghz");
  require_positive(cfg.bandwidth_hz, "bandwidth_hz");
  require_positive(cfg.ap_height_m, "ap_height_m");
  require_positive(cfg.ris_height_m, "ris_height_m");
  require_positive(cfg.user_height_m, "user_height_m");
  require_positive(cfg.data_power_w, "data_power_w");
  require_positive(cfg.pilot_power_w, "pilot_power_w");
  require_positive(cfg.breakpoint_d0_m, "breakpoint_d0_m");
  if (!(cfg.breakpoint_d1_m > cfg.breakpoint_d0_m))
    throw ConfigError("breakpoint_d1_m", "must exceed breakpoint_d0_m");
  if (cfg.shadow_std_db < 0.0) throw ConfigError("shadow_std_db", "must be >= 0");
  if (cfg.beta_override < 0.0) throw ConfigError("beta_override", "must be >= 0");
  if (cfg.topology_draws < 1) throw ConfigError("topology_draws", "must be >= 1");
  if (cfg.channel_draws_per_topology < 1)
    throw ConfigError("channel_draws_per_topology", "must be >= 1");
}

ScenarioConfig parse_scenario_text(std::string_view text) {
  ScenarioConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    // The file format takes full field names only; aliases are a CLI convenience.
    if (find_field(key) == nullptr) throw ConfigError(std::string(key), "unknown key");
    set_field(cfg, key, line.substr(eq + 1));
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  ScenarioConfig cfg = parse_scenario_text(ss.str());
  finalize(cfg);
  return cfg;
}

std::string canonical_text(const ScenarioConfig& cfg) {
  std::vector<std::pair<std::string_view, std::string>> lines;
  for (const auto& f : fields()) lines.emplace_back(f.name, f.get(cfg));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& [k, v] : lines) {
    out.append(k);
    out.append(" = ");
    out.append(v);
    out.push_back('\n');
  }
  return out;
}

namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  std::array<char, 17> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + 16, v, 16);
  (void)ec;
  std::string s(buf.data(), ptr);
  return std::string(16 - s.size(), '0') + s;
}

}  // namespace

std::uint64_t config_hash(const ScenarioConfig& cfg) { return fnv1a(canonical_text(cfg)); }

std::string config_hash_hex(const ScenarioConfig& cfg) { return hex16(config_hash(cfg)); }

std::string config_hash_hex(const ScenarioConfig& cfg, std::string_view extra) {
  std::string text = canonical_text(cfg);
  text.append(extra);
  return hex16(fnv1a(text));
}

std::string_view channel_model_name(ChannelModel m) noexcept {
  return m == ChannelModel::Marginal ? "marginal" : "structured";
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) noexcept { return 10.0 * std::log10(linear); }
double dbm_to_w(double dbm) noexcept { return std::pow(10.0, dbm / 10.0) * 1e-3; }
double w_to_dbm(double watts) noexcept { return 10.0 * std::log10(watts * 1e3); }

double noise_power_w(double bandwidth_hz, double noise_figure_db) {
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("noise_power_w: bandwidth must be > 0");
  return bandwidth_hz * kBoltzmann * kNoiseTemperatureK * db_to_linear(noise_figure_db);
}

double normalized_snr(double tx_power_w, double noise_power_w) {
  if (!(tx_power_w > 0.0) || !(noise_power_w > 0.0))
    throw std::invalid_argument("normalized_snr: powers must be > 0");
  return tx_power_w / noise_power_w;
}

LinkBudget link_budget(const ScenarioConfig& cfg) {
  const double noise = noise_power_w(cfg.bandwidth_hz, cfg.noise_figure_db);
  return {noise, normalized_snr(cfg.data_power_w, noise), normalized_snr(cfg.pilot_power_w, noise)};
}

}  // namespace riscf
