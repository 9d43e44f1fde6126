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

#include "riscf/report.hpp"

#include <array>
#include <charconv>
#include <ostream>

namespace riscf {

ReportMetadata make_metadata(const ScenarioConfig& cfg) {
  ReportMetadata m;
  m.config_hash = config_hash_hex(cfg);
  m.master_seed = cfg.master_seed;
  m.topology_draws = cfg.topology_draws;
  m.channel_draws = cfg.channel_draws_per_topology;
  m.pilot_len_symbols = cfg.pilot_len_symbols;
  m.pilot_len_defaulted = cfg.pilot_len_defaulted;
  m.channel_model = std::string(channel_model_name(cfg.channel_model));
  return m;
}

nlohmann::json to_json(const ReportMetadata& meta) {
  return {
      {"tool", kToolName},
      {"tool_version", meta.tool_version},
      {"config_hash", meta.config_hash},
      {"master_seed", meta.master_seed},
      {"topology_draws", meta.topology_draws},
      {"channel_draws_per_topology", meta.channel_draws},
      {"pilot_len_symbols", meta.pilot_len_symbols},
      {"pilot_len_defaulted_to_user_count", meta.pilot_len_defaulted},
      {"channel_model", meta.channel_model},
      {"topology_index", meta.topology_index},
      {"area_boundary", "finite square, no wrap-around"},
  };
}

void write_csv_header(std::ostream& out, const ReportMetadata& meta) {
  out << "# tool=" << kToolName << ' ' << meta.tool_version << '\n'
      << "# config_hash=" << meta.config_hash << '\n'
      << "# master_seed=" << meta.master_seed << '\n'
      << "# pilot_len_symbols=" << meta.pilot_len_symbols
      << (meta.pilot_len_defaulted ? " (defaulted to user_count)" : "") << '\n'
      << "# channel_model=" << meta.channel_model << '\n';
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

nlohmann::json to_json(const RateReport& r) {
  nlohmann::json users = nlohmann::json::array();
  for (std::size_t k = 0; k < r.closed_form.size(); ++k) {
    users.push_back({{"user_id", k},
                     {"rate_closed_form", r.closed_form[k]},
                     {"rate_mc", k < r.mc_mean.size() ? r.mc_mean[k] : 0.0},
                     {"rate_mc_stderr", k < r.mc_stderr.size() ? r.mc_stderr[k] : 0.0},
                     {"throughput_bps", k < r.throughput.size() ? r.throughput[k] : 0.0}});
  }
  return {{"metadata", to_json(r.meta)},
          {"sum_rate_closed_form", r.sum_rate_closed},
          {"sum_rate_mc", r.sum_rate_mc},
          {"min_rate_closed_form", r.min_rate},
          {"users", users}};
}

void write_csv(std::ostream& out, const RateReport& r) {
  write_csv_header(out, r.meta);
  out << "user_id,R_closed,R_mc,R_mc_stderr,S_k\n";
  for (std::size_t k = 0; k < r.closed_form.size(); ++k)
    out << k << ',' << format_number(r.closed_form[k]) << ','
        << format_number(k < r.mc_mean.size() ? r.mc_mean[k] : 0.0) << ','
        << format_number(k < r.mc_stderr.size() ? r.mc_stderr[k] : 0.0) << ','
        << format_number(k < r.throughput.size() ? r.throughput[k] : 0.0) << '\n';
}

}  // namespace riscf
