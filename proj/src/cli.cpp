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

#include "riscf/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>

#include "CLI11.hpp"
#include "riscf/experiments.hpp"
#include "riscf/geometry.hpp"
#include "riscf/kernels.hpp"
#include "riscf/large_scale.hpp"
#include "riscf/pipeline.hpp"
#include "riscf/report.hpp"
#include "riscf/scenario.hpp"

namespace riscf::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::size_t threads = 1;
  std::string out_dir;
  std::string format = "csv";
  std::vector<std::string> overrides;
  std::string kernels = "auto";
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--config", o.config_path, "Scenario file (key = value lines)");
  sub->add_option("--seed", o.seed, "Master seed");
  sub->add_option("--trials", o.trials,
                  "Draw count: channel draws (validate, rate) or topology draws (others)");
  sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", o.out_dir, "Output directory (default $RISCF_OUT_DIR or .)");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--override", o.overrides, "KEY=VALUE, repeatable; VALUE may be a sweep list")
      ->expected(1, -1);
  sub->add_option("--kernels", o.kernels, "Kernel backend")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
}

struct ParsedOverrides {
  std::vector<std::pair<std::string, std::string>> scalars;
  std::optional<std::pair<std::string, std::vector<double>>> sweep;
};

ParsedOverrides split_overrides(const std::vector<std::string>& raw) {
  ParsedOverrides p;
  for (const std::string& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError(item, "override must be KEY=VALUE");
    const std::string key = resolve_key(item.substr(0, eq));
    const std::string value = item.substr(eq + 1);
    if (value.find("..") != std::string::npos || value.find(',') != std::string::npos) {
      if (p.sweep) throw ConfigError(key, "only one swept parameter is allowed");
      p.sweep.emplace(key, parse_value_list(key, value));
    } else {
      p.scalars.emplace_back(key, value);
    }
  }
  return p;
}

// Reference validation scenario: used by `validate` for counts left unset.
constexpr std::pair<const char*, const char*> kValidationDefaults[] = {
    {"user_count", "40"}, {"ris_count", "30"}, {"elements_per_ris", "10"}};

ScenarioConfig build_config(const CommonOptions& o, const ParsedOverrides& ov,
                            bool trials_are_channel_draws,
                            std::span<const std::pair<const char*, const char*>> fallback = {}) {
  ScenarioConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw ConfigError("config", "cannot open " + o.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = parse_scenario_text(ss.str());
  }
  for (const auto& [k, v] : ov.scalars) set_field(cfg, k, v);
  if (o.seed) set_field(cfg, "master_seed", std::to_string(*o.seed));
  if (o.trials)
    set_field(cfg, trials_are_channel_draws ? "channel_draws_per_topology" : "topology_draws",
              std::to_string(*o.trials));
  for (const auto& [k, v] : fallback) {
    const bool swept = ov.sweep && ov.sweep->first == k;
    if (!cfg.is_explicit(k) && !swept) set_field(cfg, k, v);
  }
  if (ov.sweep) {
    const auto& [key, values] = *ov.sweep;
    std::ostringstream first;
    first << std::setprecision(17) << values.front();
    set_field(cfg, key, first.str());
  }
  finalize(cfg);
  return cfg;
}

fs::path output_dir(const CommonOptions& o) {
  if (!o.out_dir.empty()) return o.out_dir;
  if (const char* env = std::getenv("RISCF_OUT_DIR")) return env;
  return ".";
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

struct Outputs {
  fs::path dir;
  std::string stem;
  std::string format;
  std::vector<fs::path> written;

  void emit(const json& summary, const std::string& csv) {
    if (format == "csv") {
      written.push_back(dir / (stem + ".csv"));
      write_file(written.back(), csv);
    }
    written.push_back(dir / (stem + ".json"));
    write_file(written.back(), summary.dump(2) + "\n");
  }
};

json meta_json(const ScenarioConfig& cfg, const std::string& hash) {
  ReportMetadata meta = make_metadata(cfg);
  meta.config_hash = hash;
  return to_json(meta);
}

std::string csv_header(const ScenarioConfig& cfg, const std::string& hash) {
  ReportMetadata meta = make_metadata(cfg);
  meta.config_hash = hash;
  std::ostringstream os;
  write_csv_header(os, meta);
  return os.str();
}

std::string sweep_tag(const std::string& key, const std::vector<double>& values) {
  std::string s = "sweep " + key + ":";
  for (double v : values) s += format_number(v) + ",";
  return s;
}

json quantiles_json(const OutageReport& r) {
  json q = json::array();
  for (const auto& e : r.quantiles)
    q.push_back({{"level", e.level}, {"value", e.value}, {"ci95_low", e.ci_low},
                 {"ci95_high", e.ci_high}});
  return q;
}

void cdf_rows(std::ostringstream& os, const char* curve, const OutageReport& r) {
  for (std::size_t i = 0; i < r.cdf.size(); ++i)
    os << curve << ',' << format_number(r.cdf.values()[i]) << ','
       << format_number(r.cdf.level(i)) << '\n';
}

RunOptions run_options(const CommonOptions& o, std::ostream& err) {
  RunOptions ro;
  ro.threads = o.threads;
  ro.progress = [&err](std::size_t done, std::size_t total) {
    err << "\rprogress " << done << '/' << total << std::flush;
    if (done == total) err << '\n';
  };
  return ro;
}

int cmd_validate(const CommonOptions& o, std::ostream& out, std::ostream& err, Outputs& files) {
  ParsedOverrides ov = split_overrides(o.overrides);
  if (!ov.sweep) {
    // A scalar ap_count override is a one-point sweep.
    const auto it = std::find_if(ov.scalars.begin(), ov.scalars.end(),
                                 [](const auto& kv) { return kv.first == "ap_count"; });
    if (it != ov.scalars.end()) {
      ov.sweep.emplace("ap_count", parse_value_list("ap_count", it->second));
      ov.scalars.erase(it);
    } else {
      ov.sweep.emplace("ap_count", std::vector<double>{50, 100, 150, 200});
    }
  }
  const ScenarioConfig base = build_config(o, ov, true, kValidationDefaults);
  SweepSpec spec;
  spec.parameter = parse_sweep_parameter(ov.sweep->first);
  spec.values = ov.sweep->second;
  spec.base = base;
  spec.draws = base.channel_draws_per_topology;
  const std::string hash = config_hash_hex(base, sweep_tag(ov.sweep->first, spec.values));
  files.stem = "validate_" + hash;

  const auto rows = validation_sweep(spec, run_options(o, err));

  std::ostringstream csv;
  csv << csv_header(base, hash);
  csv << ov.sweep->first << ",closed_form,mc_mean,mc_stderr,draws\n";
  json jr = json::array();
  out << std::left << std::setw(12) << ov.sweep->first << std::setw(14) << "closed-form"
      << std::setw(14) << "monte-carlo" << "stderr\n";
  for (const auto& r : rows) {
    csv << format_number(r.value) << ',' << format_number(r.closed_form) << ','
        << format_number(r.mc_mean) << ',' << format_number(r.mc_stderr) << ',' << r.draws << '\n';
    jr.push_back({{"value", r.value}, {"closed_form", r.closed_form}, {"mc_mean", r.mc_mean},
                  {"mc_stderr", r.mc_stderr}, {"draws", r.draws}});
    out << std::setw(12) << r.value << std::setw(14) << std::setprecision(6) << r.closed_form
        << std::setw(14) << r.mc_mean << r.mc_stderr << '\n';
  }
  files.emit({{"experiment", "validate"}, {"metadata", meta_json(base, hash)},
              {"swept", ov.sweep->first}, {"rows", jr}},
             csv.str());
  return 0;
}

std::vector<double> outage_levels(const std::string& text) {
  return parse_value_list("outage", text);
}

int cmd_outage(const CommonOptions& o, const std::string& levels_text, bool throughput,
               std::ostream& out, std::ostream& err, Outputs& files) {
  const ParsedOverrides ov = split_overrides(o.overrides);
  if (ov.sweep) throw ConfigError(ov.sweep->first, "sweeps are not supported by this command");
  const ScenarioConfig cfg = build_config(o, ov, false);
  const ScenarioConfig base = without_surfaces(cfg);
  const std::vector<double> levels = outage_levels(levels_text);
  for (double p : levels)
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("outage", "levels must lie in (0, 1)");
  const std::string name = throughput ? "throughput" : "min-rate";
  const std::string hash = config_hash_hex(cfg, name + " " + levels_text);
  files.stem = name + "_" + hash;

  const RunOptions ro = run_options(o, err);
  const OutageReport ris = throughput ? throughput_cdf(cfg, levels, ro) : min_rate_cdf(cfg, levels, ro);
  const OutageReport cf =
      throughput ? throughput_cdf(base, levels, ro) : min_rate_cdf(base, levels, ro);

  std::ostringstream csv;
  csv << csv_header(cfg, hash) << "curve,value,cdf\n";
  cdf_rows(csv, "ris", ris);
  cdf_rows(csv, "baseline", cf);

  json ratios = json::array();
  out << name << " outage quantiles (" << cfg.topology_draws << " topology draws)\n";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double a = ris.quantiles[i].value;
    const double b = cf.quantiles[i].value;
    const double ratio = b > 0.0 ? a / b : 0.0;
    ratios.push_back({{"level", levels[i]}, {"ris", a}, {"baseline", b}, {"ratio", ratio}});
    out << "  p=" << levels[i] << "  ris=" << a << "  baseline=" << b << "  ratio=" << ratio
        << '\n';
  }
  files.emit({{"experiment", name},
              {"metadata", meta_json(cfg, hash)},
              {"unit", throughput ? "bit/s" : "bit/s/Hz"},
              {"ris", {{"ris_count", cfg.ris_count}, {"quantiles", quantiles_json(ris)}}},
              {"baseline", {{"ris_count", 0}, {"quantiles", quantiles_json(cf)}}},
              {"ratios", ratios}},
             csv.str());
  return 0;
}

int cmd_ap_sweep(const CommonOptions& o, std::size_t ris_m, const std::string& ris_s,
                 std::optional<std::size_t> ris_n, std::ostream& out, std::ostream& err,
                 Outputs& files) {
  ParsedOverrides ov = split_overrides(o.overrides);
  if (!ov.sweep || resolve_key(ov.sweep->first) != "ap_count")
    throw ConfigError("ap_count", "ap-sweep needs an AP-count list, e.g. --override M=60..140:10");
  // ris_count may be left out of the file; the no-RIS curve does not use it.
  bool has_ris_count = false;
  for (const auto& kv : ov.scalars) has_ris_count |= kv.first == "ris_count";
  if (!has_ris_count) ov.scalars.emplace_back("ris_count", "0");
  bool has_n = false;
  for (const auto& kv : ov.scalars) has_n |= kv.first == "elements_per_ris";
  if (!has_n && ris_n) ov.scalars.emplace_back("elements_per_ris", std::to_string(*ris_n));
  const ScenarioConfig base = build_config(o, ov, false);
  SweepSpec spec;
  spec.parameter = SweepParameter::ApCount;
  spec.values = ov.sweep->second;
  spec.base = base;
  spec.draws = base.topology_draws;
  std::vector<RisDeployment> deps;
  for (double s : parse_value_list("ris-s", ris_s))
    deps.push_back({ris_m, static_cast<std::size_t>(s),
                    ris_n ? *ris_n : base.elements_per_ris});
  const std::string hash = config_hash_hex(
      base, sweep_tag("ap_count", spec.values) + " ris_m=" + std::to_string(ris_m) + " ris_s=" + ris_s);
  files.stem = "ap-sweep_" + hash;

  const ApReplacementReport rep = ap_replacement_sweep(spec, deps, run_options(o, err));

  std::ostringstream csv;
  csv << csv_header(base, hash)
      << "kind,ap_count,ris_count,elements,mean_sum_rate,ci_low,ci_high,equivalent_ap_count,"
         "equivalent_ci_low,equivalent_ci_high\n";
  json curve = json::array();
  for (const auto& p : rep.cf_curve) {
    csv << "cf," << format_number(p.ap_count) << ",0,0," << format_number(p.mean) << ','
        << format_number(p.ci_low) << ',' << format_number(p.ci_high) << ",,,\n";
    curve.push_back({{"ap_count", p.ap_count}, {"mean", p.mean}, {"ci95_low", p.ci_low},
                     {"ci95_high", p.ci_high}});
  }
  json jd = json::array();
  out << "no-RIS sum-rate curve:\n";
  for (const auto& p : rep.cf_curve) out << "  M=" << p.ap_count << "  " << p.mean << '\n';
  for (const auto& d : rep.deployments) {
    csv << "ris," << d.deployment.ap_count << ',' << d.deployment.ris_count << ','
        << d.deployment.elements << ',' << format_number(d.mean) << ',' << format_number(d.ci_low)
        << ',' << format_number(d.ci_high) << ','
        << (d.equivalent_ap_count ? format_number(*d.equivalent_ap_count) : "") << ','
        << format_number(d.equivalent_ci_low) << ',' << format_number(d.equivalent_ci_high)
        << '\n';
    json e = {{"ap_count", d.deployment.ap_count}, {"ris_count", d.deployment.ris_count},
              {"elements", d.deployment.elements}, {"mean", d.mean}, {"ci95_low", d.ci_low},
              {"ci95_high", d.ci_high},
              {"equivalent_ci95_low", d.equivalent_ci_low},
              {"equivalent_ci95_high", d.equivalent_ci_high},
              {"bootstrap_in_range", d.bootstrap_in_range}};
    e["equivalent_ap_count"] = d.equivalent_ap_count ? json(*d.equivalent_ap_count) : json(nullptr);
    jd.push_back(e);
    out << "  M=" << d.deployment.ap_count << " S=" << d.deployment.ris_count
        << " N=" << d.deployment.elements << "  sum rate " << d.mean << "  equivalent M ";
    if (d.equivalent_ap_count)
      out << *d.equivalent_ap_count << " [" << d.equivalent_ci_low << ", " << d.equivalent_ci_high
          << "]\n";
    else
      out << "outside swept range\n";
  }
  files.emit({{"experiment", "ap-sweep"}, {"metadata", meta_json(base, hash)},
              {"cf_curve", curve}, {"deployments", jd},
              {"bootstrap_resamples", rep.bootstrap_resamples}},
             csv.str());
  return 0;
}

int cmd_rate(const CommonOptions& o, std::uint64_t topology, bool dump_topology, bool dump_beta,
             std::ostream& out, std::ostream& err, Outputs& files) {
  const ParsedOverrides ov = split_overrides(o.overrides);
  if (ov.sweep) throw ConfigError(ov.sweep->first, "sweeps are not supported by this command");
  const ScenarioConfig cfg = build_config(o, ov, true);
  RunOptions ro = run_options(o, err);
  const RateReport rep = rate_report(cfg, topology, ro);
  std::string hash = rep.meta.config_hash;
  if (topology != 0) hash = config_hash_hex(cfg, "topology=" + std::to_string(topology));
  RateReport tagged = rep;
  tagged.meta.config_hash = hash;
  files.stem = "rate_" + hash;
  std::ostringstream csv;
  write_csv(csv, tagged);
  files.emit({{"experiment", "rate"}, {"report", to_json(tagged)}}, csv.str());

  if (dump_topology || dump_beta) {
    const NetworkRealization net = realize_network(cfg, topology);
    if (dump_topology) {
      std::ostringstream os;
      write_csv_header(os, tagged.meta);
      write_topology_csv(os, net.topology);
      files.written.push_back(files.dir / ("topology_" + hash + ".csv"));
      write_file(files.written.back(), os.str());
    }
    if (dump_beta) {
      std::ostringstream os;
      write_csv_header(os, tagged.meta);
      write_large_scale_csv(os, net.large_scale);
      files.written.push_back(files.dir / ("beta_" + hash + ".csv"));
      write_file(files.written.back(), os.str());
    }
  }

  double mc_avg = 0.0, cf_avg = 0.0;
  for (std::size_t k = 0; k < rep.closed_form.size(); ++k) {
    cf_avg += rep.closed_form[k];
    mc_avg += rep.mc_mean[k];
  }
  cf_avg /= static_cast<double>(rep.closed_form.size());
  mc_avg /= static_cast<double>(rep.closed_form.size());
  out << "users " << rep.closed_form.size() << "  mean closed-form " << cf_avg
      << "  mean monte-carlo " << mc_avg << "\n"
      << "sum rate " << rep.sum_rate_closed << "  min rate " << rep.min_rate << " bit/s/Hz\n";
  return 0;
}

}  // namespace

std::vector<double> parse_value_list(const std::string& key, const std::string& text) {
  auto number = [&key](const std::string& s) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError(key, "cannot parse '" + s + "' as a number");
    }
  };
  std::vector<double> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const double start = number(text.substr(0, dots));
    std::string rest = text.substr(dots + 2);
    double step = start;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step = number(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const double stop = number(rest);
    if (!(step > 0.0) || stop < start) throw ConfigError(key, "invalid range '" + text + "'");
    for (std::size_t i = 0;; ++i) {
      const double v = start + static_cast<double>(i) * step;
      if (v > stop + 1e-9 * std::abs(stop)) break;
      out.push_back(v);
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(number(item));
  if (out.empty()) throw ConfigError(key, "empty value list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cell-free massive MIMO with reconfigurable surfaces: rate analysis and Monte Carlo"};
  app.name("riscf");
  app.require_subcommand(1);
  CommonOptions common;

  auto* validate = app.add_subcommand(
      "validate",
      "Closed form vs Monte Carlo over a sweep (K=40, S=30, N=10 unless set, M=50..200)");
  add_common(validate, common);

  std::string outage_text = "0.05,0.2";
  auto* min_rate = app.add_subcommand("min-rate", "CDF of the per-topology minimum user rate");
  add_common(min_rate, common);
  min_rate->add_option("--outage", outage_text, "Outage levels, comma separated");

  auto* throughput = app.add_subcommand("throughput", "CDF of per-user net throughput");
  add_common(throughput, common);
  throughput->add_option("--outage", outage_text, "Outage levels, comma separated");

  std::size_t ris_m = 70;
  std::string ris_s = "80,200";
  std::optional<std::size_t> ris_n;
  auto* ap_sweep = app.add_subcommand("ap-sweep", "No-RIS sum rate over M vs RIS deployments");
  add_common(ap_sweep, common);
  ap_sweep->add_option("--ris-m", ris_m, "AP count of the RIS deployments");
  ap_sweep->add_option("--ris-s", ris_s, "Surface counts of the RIS deployments");
  ap_sweep->add_option("--ris-n", ris_n, "Elements per surface (default: elements_per_ris)");

  std::uint64_t topology = 0;
  bool dump_topology = false;
  bool dump_beta = false;
  auto* rate = app.add_subcommand("rate", "Per-user rates for one topology draw");
  add_common(rate, common);
  rate->add_option("--topology", topology, "Topology draw index");
  rate->add_flag("--dump-topology", dump_topology, "Also write node positions");
  rate->add_flag("--dump-beta", dump_beta, "Also write large-scale coefficients");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  kernels::Backend backend;
  if (kernels::parse_backend(common.kernels, backend)) kernels::set_active_backend(backend);

  Outputs files;
  files.dir = output_dir(common);
  files.format = common.format;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    int rc = 0;
    if (validate->parsed()) {
      rc = cmd_validate(common, out, err, files);
    } else if (min_rate->parsed()) {
      rc = cmd_outage(common, outage_text, false, out, err, files);
    } else if (throughput->parsed()) {
      rc = cmd_outage(common, outage_text, true, out, err, files);
    } else if (ap_sweep->parsed()) {
      rc = cmd_ap_sweep(common, ris_m, ris_s, ris_n, out, err, files);
    } else if (rate->parsed()) {
      rc = cmd_rate(common, topology, dump_topology, dump_beta, out, err, files);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& f : files.written) out << "wrote " << f.string() << '\n';
    out << "kernels " << kernels::backend_name(kernels::active_backend()) << ", runtime "
        << std::fixed << std::setprecision(2) << secs << " s\n";
    return rc;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace riscf::cli
