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
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "riscf/scenario.hpp"

namespace riscf {

inline constexpr const char* kToolName = "riscf";
inline constexpr const char* kToolVersion = "0.1.0";

struct ReportMetadata {
  std::string tool_version = kToolVersion;
  std::string config_hash;
  std::uint64_t master_seed = 0;
  std::size_t topology_draws = 0;
  std::size_t channel_draws = 0;
  std::size_t pilot_len_symbols = 0;
  bool pilot_len_defaulted = true;
  std::string channel_model;
  std::uint64_t topology_index = 0;
};

ReportMetadata make_metadata(const ScenarioConfig& cfg);
nlohmann::json to_json(const ReportMetadata& meta);
// Comment lines ("# key=value") prefixed to every CSV file.
void write_csv_header(std::ostream& out, const ReportMetadata& meta);

struct RateReport {
  std::vector<double> closed_form;  // bits/s/Hz
  std::vector<double> mc_mean;
  std::vector<double> mc_stderr;
  std::vector<double> throughput;  // bits/s, from the closed form
  double sum_rate_closed = 0.0;
  double sum_rate_mc = 0.0;
  double min_rate = 0.0;
  ReportMetadata meta;
};

nlohmann::json to_json(const RateReport& r);
// user_id,R_closed,R_mc,R_mc_stderr,S_k
void write_csv(std::ostream& out, const RateReport& r);

// Shortest round-trip decimal form, used for every number written to CSV.
std::string format_number(double v);

}  // namespace riscf
