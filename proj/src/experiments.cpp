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

#include "riscf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "riscf/parallel.hpp"
#include "riscf/pipeline.hpp"

namespace riscf {

SweepParameter parse_sweep_parameter(std::string_view name) {
  const std::string key = resolve_key(name);
  if (key == "ap_count") return SweepParameter::ApCount;
  if (key == "ris_count") return SweepParameter::RisCount;
  if (key == "elements_per_ris") return SweepParameter::Elements;
  if (key == "user_count") return SweepParameter::UserCount;
  if (key == "area_side_km") return SweepParameter::AreaSide;
  throw ConfigError(key, "cannot be swept (use one of M, S, N, K, D)");
}

std::string_view sweep_parameter_key(SweepParameter p) noexcept {
  switch (p) {
    case SweepParameter::ApCount:
      return "ap_count";
    case SweepParameter::RisCount:
      return "ris_count";
    case SweepParameter::Elements:
      return "elements_per_ris";
    case SweepParameter::UserCount:
      return "user_count";
    case SweepParameter::AreaSide:
      return "area_side_km";
  }
  return "ap_count";
}

void SweepSpec::check() const {
  if (values.empty()) throw ConfigError(std::string(sweep_parameter_key(parameter)), "empty sweep");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1]))
      throw ConfigError(std::string(sweep_parameter_key(parameter)),
                        "sweep values must be strictly increasing");
}

ScenarioConfig SweepSpec::at(double value) const {
  ScenarioConfig cfg = base;
  const std::string key(sweep_parameter_key(parameter));
  if (parameter == SweepParameter::AreaSide) {
    cfg.area_side_km = value;
  } else {
    if (value < 0 || value != std::floor(value))
      throw ConfigError(key, "sweep value must be a non-negative integer");
    const auto n = static_cast<std::size_t>(value);
    switch (parameter) {
      case SweepParameter::ApCount:
        cfg.ap_count = n;
        break;
      case SweepParameter::RisCount:
        cfg.ris_count = n;
        break;
      case SweepParameter::Elements:
        cfg.elements_per_ris = n;
        break;
      case SweepParameter::UserCount:
        cfg.user_count = n;
        break;
      case SweepParameter::AreaSide:
        break;
    }
  }
  cfg.explicit_keys.insert(key);
  finalize(cfg);
  return cfg;
}

CdfTable::CdfTable(std::vector<double> samples) : sorted_(std::move(samples)) {
  std::sort(sorted_.begin(), sorted_.end());
}

double CdfTable::level(std::size_t i) const noexcept {
  return static_cast<double>(i + 1) / static_cast<double>(sorted_.size());
}

double CdfTable::quantile(double p) const {
  if (sorted_.empty()) throw std::logic_error("CdfTable::quantile on empty table");
  // First index whose level reaches p; levels are increasing in i.
  std::size_t lo = 0, hi = sorted_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (level(mid) >= p)
      hi = mid;
    else
      lo = mid + 1;
  }
  return sorted_[lo];
}

double CdfTable::cdf(double x) const noexcept {
  if (sorted_.empty()) return 0.0;
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

std::pair<double, double> bootstrap_quantile_ci(std::span<const double> samples, double p,
                                                std::size_t resamples, double confidence,
                                                const SeedContext& seed) {
  if (samples.empty() || resamples == 0) return {0.0, 0.0};
  auto eng = seed.with_purpose(Stream::Bootstrap).engine();
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  std::vector<double> stats(resamples);
  std::vector<double> buf(samples.size());
  for (std::size_t b = 0; b < resamples; ++b) {
    for (auto& v : buf) v = samples[pick(eng)];
    stats[b] = CdfTable(buf).quantile(p);
  }
  const CdfTable dist(std::move(stats));
  const double tail = (1.0 - confidence) / 2.0;
  return {dist.quantile(tail), dist.quantile(1.0 - tail)};
}

namespace {

void report_progress(const RunOptions& opts, std::size_t done, std::size_t total) {
  if (opts.progress) opts.progress(done, total);
}

double mean_of(std::span<const double> v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stderr_of(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

OutageReport make_outage(std::vector<double> samples, std::span<const double> levels,
                         const ScenarioConfig& cfg) {
  OutageReport out;
  SeedContext boot;
  boot.master_seed = cfg.master_seed;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double p = levels[i];
    boot.channel = i;
    const auto [lo, hi] = bootstrap_quantile_ci(samples, p, 500, 0.95, boot);
    out.quantiles.push_back({p, 0.0, lo, hi});
  }
  out.cdf = CdfTable(std::move(samples));
  for (auto& q : out.quantiles) q.value = out.cdf.quantile(q.level);
  return out;
}

// Runs `per_topology(t)` for every topology draw in parallel.
template <class Fn>
void for_each_topology(std::size_t draws, const RunOptions& opts, Fn&& per_topology) {
  constexpr std::size_t kChunk = 16;
  for (std::size_t start = 0; start < draws; start += kChunk) {
    const std::size_t n = std::min(kChunk, draws - start);
    parallel_for(n, opts.threads, [&](std::size_t i) { per_topology(start + i); });
    report_progress(opts, start + n, draws);
  }
}

}  // namespace

std::vector<std::vector<double>> closed_form_rates(const ScenarioConfig& cfg,
                                                   const RunOptions& opts) {
  std::vector<std::vector<double>> rates(cfg.topology_draws);
  for_each_topology(cfg.topology_draws, opts, [&](std::size_t t) {
    rates[t] = realize_network(cfg, t).closed_form;
  });
  return rates;
}

std::vector<ValidationRow> validation_sweep(const SweepSpec& spec, const RunOptions& opts) {
  spec.check();
  if (spec.draws == 0) throw ConfigError("channel_draws_per_topology", "must be >= 1");
  std::vector<ValidationRow> rows;
  const std::size_t total = spec.values.size();
  for (std::size_t p = 0; p < total; ++p) {
    const ScenarioConfig cfg = spec.at(spec.values[p]);
    // A fixed beta makes every topology statistically identical.
    const std::size_t topologies =
        cfg.beta_override > 0.0 && !cfg.is_explicit("topology_draws") ? 1 : cfg.topology_draws;
    std::vector<double> closed, mc;
    double var_sum = 0.0;
    for (std::size_t t = 0; t < topologies; ++t) {
      const NetworkRealization net = realize_network(cfg, t);
      closed.push_back(mean_of(net.closed_form));
      const McRate r = simulate_mc_rate(cfg, net, spec.draws, opts.threads);
      mc.push_back(r.user_average());
      var_sum += r.user_average_stderr * r.user_average_stderr;
    }
    const double T = static_cast<double>(topologies);
    rows.push_back({spec.values[p], mean_of(closed), mean_of(mc), std::sqrt(var_sum) / T,
                    spec.draws * topologies});
    report_progress(opts, p + 1, total);
  }
  return rows;
}

OutageReport min_rate_cdf(const ScenarioConfig& cfg, std::span<const double> outage_levels,
                          const RunOptions& opts) {
  std::vector<double> mins(cfg.topology_draws);
  for_each_topology(cfg.topology_draws, opts, [&](std::size_t t) {
    const auto r = realize_network(cfg, t).closed_form;
    mins[t] = *std::min_element(r.begin(), r.end());
  });
  return make_outage(std::move(mins), outage_levels, cfg);
}

OutageReport throughput_cdf(const ScenarioConfig& cfg, std::span<const double> outage_levels,
                            const RunOptions& opts) {
  const std::size_t K = cfg.user_count;
  std::vector<double> samples(cfg.topology_draws * K);
  for_each_topology(cfg.topology_draws, opts, [&](std::size_t t) {
    const auto r = realize_network(cfg, t).closed_form;
    for (std::size_t k = 0; k < K; ++k)
      samples[t * K + k] = per_user_throughput(r[k], cfg.bandwidth_hz, cfg.pilot_len_symbols,
                                               cfg.coherence_len_symbols);
  });
  return make_outage(std::move(samples), outage_levels, cfg);
}

std::optional<double> interpolate_crossing(std::span<const double> xs, std::span<const double> ys,
                                           double target) {
  if (xs.size() != ys.size() || xs.empty()) return std::nullopt;
  if (target < ys.front() || target > ys.back()) return std::nullopt;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    if (target >= ys[i] && target <= ys[i + 1]) {
      const double span = ys[i + 1] - ys[i];
      if (span <= 0.0) return xs[i];
      return xs[i] + (xs[i + 1] - xs[i]) * (target - ys[i]) / span;
    }
  }
  return xs.size() == 1 ? std::optional<double>(xs.front()) : std::nullopt;
}

namespace {

std::vector<double> sum_rates(const ScenarioConfig& cfg, std::size_t draws,
                              const RunOptions& opts) {
  std::vector<double> out(draws);
  for_each_topology(draws, opts, [&](std::size_t t) {
    const auto r = realize_network(cfg, t).closed_form;
    out[t] = sum_rate(r, cfg.pilot_len_symbols, cfg.coherence_len_symbols);
  });
  return out;
}

}  // namespace

ApReplacementReport ap_replacement_sweep(const SweepSpec& cf_spec,
                                         std::span<const RisDeployment> deployments,
                                         const RunOptions& opts,
                                         std::size_t bootstrap_resamples) {
  cf_spec.check();
  if (cf_spec.parameter != SweepParameter::ApCount)
    throw ConfigError("ap_count", "the AP-replacement sweep varies the AP count");
  for (const char* key : {"user_count", "area_side_km"})
    if (!cf_spec.base.is_explicit(key))
      throw ConfigError(key, "must be set explicitly for the AP-replacement sweep");
  const std::size_t T = cf_spec.draws;
  if (T == 0) throw ConfigError("topology_draws", "must be >= 1");

  ApReplacementReport rep;
  rep.draws = T;
  rep.bootstrap_resamples = bootstrap_resamples;

  std::vector<std::vector<double>> cf_samples;
  std::vector<double> xs;
  for (double m : cf_spec.values) {
    ScenarioConfig cfg = cf_spec.at(m);
    cfg.ris_count = 0;
    cf_samples.push_back(sum_rates(cfg, T, opts));
    xs.push_back(m);
  }
  std::vector<std::vector<double>> ris_samples;
  for (const RisDeployment& d : deployments) {
    ScenarioConfig cfg = cf_spec.base;
    cfg.ap_count = d.ap_count;
    cfg.ris_count = d.ris_count;
    cfg.elements_per_ris = d.elements;
    cfg.explicit_keys.insert({"ap_count", "ris_count", "elements_per_ris"});
    finalize(cfg);
    ris_samples.push_back(sum_rates(cfg, T, opts));
  }

  std::vector<double> cf_means;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double mu = mean_of(cf_samples[i]);
    const double se = stderr_of(cf_samples[i]);
    cf_means.push_back(mu);
    rep.cf_curve.push_back({xs[i], mu, mu - 1.96 * se, mu + 1.96 * se});
  }

  // Paired bootstrap over topology draws: the same resampled indices feed the
  // curve and every deployment.
  SeedContext boot;
  boot.master_seed = cf_spec.base.master_seed;
  auto eng = boot.with_purpose(Stream::Bootstrap).engine();
  std::uniform_int_distribution<std::size_t> pick(0, T - 1);
  std::vector<std::vector<double>> crossings(deployments.size());
  std::vector<std::size_t> idx(T);
  std::vector<double> curve(xs.size());
  for (std::size_t b = 0; b < bootstrap_resamples; ++b) {
    for (auto& i : idx) i = pick(eng);
    for (std::size_t p = 0; p < xs.size(); ++p) {
      double s = 0.0;
      for (std::size_t i : idx) s += cf_samples[p][i];
      curve[p] = s / static_cast<double>(T);
    }
    for (std::size_t j = 0; j < deployments.size(); ++j) {
      double s = 0.0;
      for (std::size_t i : idx) s += ris_samples[j][i];
      if (const auto c = interpolate_crossing(xs, curve, s / static_cast<double>(T)))
        crossings[j].push_back(*c);
    }
  }

  for (std::size_t j = 0; j < deployments.size(); ++j) {
    DeploymentResult r{};
    r.deployment = deployments[j];
    r.mean = mean_of(ris_samples[j]);
    const double se = stderr_of(ris_samples[j]);
    r.ci_low = r.mean - 1.96 * se;
    r.ci_high = r.mean + 1.96 * se;
    r.equivalent_ap_count = interpolate_crossing(xs, cf_means, r.mean);
    r.bootstrap_in_range = crossings[j].size();
    if (!crossings[j].empty()) {
      const CdfTable dist(crossings[j]);
      r.equivalent_ci_low = dist.quantile(0.025);
      r.equivalent_ci_high = dist.quantile(0.975);
    }
    rep.deployments.push_back(r);
  }
  return rep;
}

RateReport rate_report(const ScenarioConfig& cfg, std::uint64_t topology_index,
                       const RunOptions& opts) {
  const NetworkRealization net = realize_network(cfg, topology_index);
  const McRate mc = simulate_mc_rate(cfg, net, cfg.channel_draws_per_topology, opts.threads);
  RateReport rep;
  rep.closed_form = net.closed_form;
  rep.mc_mean = mc.mean;
  rep.mc_stderr = mc.stderr_;
  for (double r : rep.closed_form)
    rep.throughput.push_back(per_user_throughput(r, cfg.bandwidth_hz, cfg.pilot_len_symbols,
                                                 cfg.coherence_len_symbols));
  rep.sum_rate_closed = sum_rate(rep.closed_form, cfg.pilot_len_symbols, cfg.coherence_len_symbols);
  rep.sum_rate_mc = sum_rate(rep.mc_mean, cfg.pilot_len_symbols, cfg.coherence_len_symbols);
  rep.min_rate = *std::min_element(rep.closed_form.begin(), rep.closed_form.end());
  rep.meta = make_metadata(cfg);
  rep.meta.topology_index = topology_index;
  return rep;
}

ScenarioConfig without_surfaces(const ScenarioConfig& cfg) {
  ScenarioConfig out = cfg;
  out.ris_count = 0;
  out.explicit_keys.insert("ris_count");
  finalize(out);
  return out;
}

RateReport baseline_cf(const ScenarioConfig& cfg, std::uint64_t topology_index,
                       const RunOptions& opts) {
  return rate_report(without_surfaces(cfg), topology_index, opts);
}

}  // namespace riscf
