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
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "riscf/downlink.hpp"
#include "riscf/report.hpp"
#include "riscf/scenario.hpp"
#include "riscf/seed.hpp"

namespace riscf {

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

struct RunOptions {
  std::size_t threads = 1;
  ProgressFn progress;  // may be empty; called from the coordinating thread
};

enum class SweepParameter { ApCount, RisCount, Elements, UserCount, AreaSide };

// Accepts M, S, N, K, D or the full field names.
SweepParameter parse_sweep_parameter(std::string_view name);
std::string_view sweep_parameter_key(SweepParameter p) noexcept;

struct SweepSpec {
  SweepParameter parameter = SweepParameter::ApCount;
  std::vector<double> values;
  ScenarioConfig base;
  std::size_t draws = 0;  // channel or topology draws per point, by experiment

  // Nonempty, strictly increasing. Throws ConfigError.
  void check() const;
  // Base config with the swept field set and re-finalized.
  ScenarioConfig at(double value) const;
};

// Empirical CDF over a sample. level(i) = (i + 1) / n for the i-th smallest.
class CdfTable {
 public:
  CdfTable() = default;
  explicit CdfTable(std::vector<double> samples);

  std::size_t size() const noexcept { return sorted_.size(); }
  std::span<const double> values() const noexcept { return sorted_; }
  double level(std::size_t i) const noexcept;
  // Smallest sample whose CDF level is >= p. Throws on an empty table.
  double quantile(double p) const;
  // Fraction of samples <= x.
  double cdf(double x) const noexcept;

 private:
  std::vector<double> sorted_;
};

// Percentile bootstrap interval for quantile(p).
std::pair<double, double> bootstrap_quantile_ci(std::span<const double> samples, double p,
                                                std::size_t resamples, double confidence,
                                                const SeedContext& seed);

struct QuantileEstimate {
  double level;
  double value;
  double ci_low;
  double ci_high;
};

struct OutageReport {
  CdfTable cdf;
  std::vector<QuantileEstimate> quantiles;
};

struct ValidationRow {
  double value;
  double closed_form;  // user-averaged, bits/s/Hz
  double mc_mean;
  double mc_stderr;
  std::size_t draws;
};

// Mean closed-form and Monte-Carlo per-user rate at each sweep point,
// spec.draws channel draws for each of base.topology_draws topologies.
std::vector<ValidationRow> validation_sweep(const SweepSpec& spec, const RunOptions& opts = {});

// Per topology draw: min over users of the closed-form rate.
OutageReport min_rate_cdf(const ScenarioConfig& cfg, std::span<const double> outage_levels,
                          const RunOptions& opts = {});

// All per-user net throughputs (bits/s) over the topology draws.
OutageReport throughput_cdf(const ScenarioConfig& cfg, std::span<const double> outage_levels,
                            const RunOptions& opts = {});

struct RisDeployment {
  std::size_t ap_count;
  std::size_t ris_count;
  std::size_t elements;
};

struct CurvePoint {
  double ap_count;
  double mean;
  double ci_low;
  double ci_high;
};

struct DeploymentResult {
  RisDeployment deployment;
  double mean;
  double ci_low;
  double ci_high;
  // AP count at which the interpolated no-RIS curve reaches `mean`; empty if
  // outside the swept range.
  std::optional<double> equivalent_ap_count;
  double equivalent_ci_low = 0.0;
  double equivalent_ci_high = 0.0;
  std::size_t bootstrap_in_range = 0;
};

struct ApReplacementReport {
  std::vector<CurvePoint> cf_curve;
  std::vector<DeploymentResult> deployments;
  std::size_t draws = 0;
  std::size_t bootstrap_resamples = 0;
};

// No-RIS sum-rate curve over cf_spec (parameter M, cf_spec.draws topologies)
// against fixed RIS deployments on the same topology draws. K and D must be
// set explicitly in cf_spec.base.
ApReplacementReport ap_replacement_sweep(const SweepSpec& cf_spec,
                                         std::span<const RisDeployment> deployments,
                                         const RunOptions& opts = {},
                                         std::size_t bootstrap_resamples = 1000);

// Linear interpolation of the AP count where an increasing curve reaches
// `target`; empty outside [first, last].
std::optional<double> interpolate_crossing(std::span<const double> xs, std::span<const double> ys,
                                           double target);

// Rate report for one topology draw: closed form, Monte Carlo with
// cfg.channel_draws_per_topology draws, throughputs, sum rate.
RateReport rate_report(const ScenarioConfig& cfg, std::uint64_t topology_index,
                       const RunOptions& opts = {});

// The same pipeline with every surface removed.
ScenarioConfig without_surfaces(const ScenarioConfig& cfg);
RateReport baseline_cf(const ScenarioConfig& cfg, std::uint64_t topology_index,
                       const RunOptions& opts = {});

// Closed-form rates for topology draws [0, cfg.topology_draws), one vector per draw.
std::vector<std::vector<double>> closed_form_rates(const ScenarioConfig& cfg,
                                                   const RunOptions& opts = {});

}  // namespace riscf
