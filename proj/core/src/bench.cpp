// Copyright 2026 The structprop Authors
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

#include "structprop/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace structprop {
namespace {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

std::string cell(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string("--");
}

nlohmann::json json_cell(const std::optional<double>& value) {
  return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

std::optional<double> ratio(const std::optional<double>& num,
                            const std::optional<double>& den) {
  if (!num || !den || *den <= 0.0) return std::nullopt;
  return *num / *den;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

struct Pair {
  const BenchRun* baseline = nullptr;
  const BenchRun* plugin = nullptr;
};

BenchRun to_run(const std::string& instance, std::uint64_t seed, RunLabel label,
                const SearchResult& result) {
  BenchRun run;
  run.instance = instance;
  run.seed = seed;
  run.label = label;
  run.status = result.stats.status;
  run.wall_time = std::chrono::duration<double>(result.stats.wall_time).count();
  run.nodes = result.stats.nodes;
  run.calls = result.stats.handler_calls;
  run.domain_reductions = result.stats.domain_reductions;
  run.cutoffs = result.stats.cutoffs;
  run.prop_time = std::chrono::duration<double>(result.stats.prop_time).count();
  run.objective = result.objective;
  return run;
}

BenchRun failed_run(const std::string& instance, std::uint64_t seed, RunLabel label,
                    std::string error) {
  BenchRun run;
  run.instance = instance;
  run.seed = seed;
  run.label = label;
  run.status = SearchStatus::kLimit;
  run.error = std::move(error);
  return run;
}

// Seed from the generator sidecar next to the MPS file, 0 without one.
std::uint64_t sidecar_seed(const std::filesystem::path& mps_path) {
  std::filesystem::path sidecar = mps_path;
  sidecar.replace_extension(".json");
  std::ifstream in(sidecar);
  if (!in) return 0;
  try {
    const nlohmann::json doc = nlohmann::json::parse(in);
    if (doc.contains("seed") && doc["seed"].is_number_unsigned()) {
      return doc["seed"].get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception&) {
  }
  return 0;
}

struct InstanceOutcome {
  std::string name;
  bool parsed = false;
  std::string skip_reason;
  DetectionReport detection;
  std::vector<BenchRun> runs;
};

InstanceOutcome run_instance(const std::filesystem::path& path,
                             const BenchOptions& options,
                             std::span<const Family> families) {
  InstanceOutcome outcome;
  outcome.name = path.stem().string();
  const std::uint64_t seed = sidecar_seed(path);
  MipModel model;
  try {
    model = read_mps_file(path, options.mps);
    model.validate();
  } catch (const std::exception& e) {
    outcome.skip_reason = path.filename().string() + ": " + e.what();
    return outcome;
  }
  outcome.parsed = true;
  outcome.detection = detect_all(model, options.detect);
  std::vector<SemanticRecord> records;
  for (const SemanticRecord& rec : outcome.detection.records) {
    if (std::find(families.begin(), families.end(), rec.family) != families.end()) {
      records.push_back(rec);
    }
  }
  const std::pair<RunLabel, const SearchConfig*> configs[] = {
      {RunLabel::kBaseline, &options.baseline}, {RunLabel::kPlugin, &options.plugin}};
  for (const auto& [label, config] : configs) {
    const std::span<const SemanticRecord> used =
        label == RunLabel::kPlugin ? std::span<const SemanticRecord>(records)
                                   : std::span<const SemanticRecord>();
    try {
      outcome.runs.push_back(to_run(outcome.name, seed, label, dfs_solve(model, used, *config)));
    } catch (const std::exception& e) {
      outcome.runs.push_back(failed_run(outcome.name, seed, label, e.what()));
    }
  }
  return outcome;
}

}  // namespace

std::optional<double> shifted_geometric_mean(std::span<const double> values,
                                             double shift) {
  if (!(shift > 0.0) || !std::isfinite(shift)) {
    throw std::invalid_argument("shifted_geometric_mean: shift must be positive");
  }
  if (values.empty()) return std::nullopt;
  double log_sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("shifted_geometric_mean: values must be finite and >= 0");
    }
    log_sum += std::log(v + shift);
  }
  return std::exp(log_sum / static_cast<double>(values.size())) - shift;
}

std::string_view run_label_name(RunLabel label) {
  return label == RunLabel::kBaseline ? "baseline" : "plugin";
}

BenchReport aggregate(std::span<const BenchRun> runs,
                      const std::map<std::string, DetectionReport>& detection,
                      std::span<const Family> families) {
  std::map<std::string, Pair> pairs;
  for (const BenchRun& run : runs) {
    Pair& pair = pairs[run.instance];
    const BenchRun*& slot =
        run.label == RunLabel::kBaseline ? pair.baseline : pair.plugin;
    if (slot != nullptr) {
      throw std::invalid_argument("aggregate: duplicate " +
                                  std::string(run_label_name(run.label)) +
                                  " run for " + run.instance);
    }
    slot = &run;
  }
  std::string orphans;
  for (const auto& [name, pair] : pairs) {
    if (pair.baseline != nullptr && pair.plugin != nullptr) {
      if (pair.baseline->seed != pair.plugin->seed) {
        throw std::invalid_argument("aggregate: seed mismatch for " + name);
      }
      continue;
    }
    orphans += (orphans.empty() ? "" : ", ") + name + " (" +
               (pair.baseline != nullptr ? "baseline" : "plugin") + " only)";
  }
  if (!orphans.empty()) {
    throw std::invalid_argument("aggregate: unpaired runs: " + orphans);
  }

  BenchReport report;
  report.runs.assign(runs.begin(), runs.end());
  for (Family family : families) {
    CoverageRow cov;
    PerformanceRow perf;
    DiagnosticsRow diag;
    cov.family = perf.family = diag.family = family;
    std::vector<double> t_base, t_plug, n_base, n_plug;
    std::vector<double> calls, reductions, cutoffs, prop_time;
    for (const auto& [name, pair] : pairs) {
      const auto it = detection.find(name);
      if (it == detection.end() || it->second.count(family) == 0) continue;
      ++cov.detected;
      const BenchRun& b = *pair.baseline;
      const BenchRun& p = *pair.plugin;
      cov.baseline += b.solved();
      cov.plugin += p.solved();
      if (b.solved() && p.solved()) {
        ++cov.common;
        t_base.push_back(b.wall_time);
        t_plug.push_back(p.wall_time);
        n_base.push_back(static_cast<double>(b.nodes));
        n_plug.push_back(static_cast<double>(p.nodes));
        perf.t_improved += p.wall_time < b.wall_time;
        perf.n_improved += p.nodes < b.nodes;
      } else if (b.solved()) {
        ++cov.baseline_only;
      } else if (p.solved()) {
        ++cov.plugin_only;
      }
      if (p.error.empty()) {
        ++diag.runs;
        calls.push_back(static_cast<double>(p.calls));
        reductions.push_back(static_cast<double>(p.domain_reductions));
        cutoffs.push_back(static_cast<double>(p.cutoffs));
        prop_time.push_back(p.prop_time);
        diag.zero_reduction_runs += p.domain_reductions == 0;
      }
    }
    perf.t_base = shifted_geometric_mean(t_base, kTimeShift);
    perf.t_plug = shifted_geometric_mean(t_plug, kTimeShift);
    perf.n_base = shifted_geometric_mean(n_base, kNodeShift);
    perf.n_plug = shifted_geometric_mean(n_plug, kNodeShift);
    perf.t_speedup = ratio(perf.t_base, perf.t_plug);
    perf.n_speedup = ratio(perf.n_base, perf.n_plug);
    diag.calls = shifted_geometric_mean(calls, kDiagnosticShift);
    diag.domain_reductions = shifted_geometric_mean(reductions, kDiagnosticShift);
    diag.cutoffs = shifted_geometric_mean(cutoffs, kDiagnosticShift);
    diag.prop_time = shifted_geometric_mean(prop_time, kDiagnosticShift);
    report.coverage.push_back(cov);
    report.performance.push_back(perf);
    report.diagnostics.push_back(diag);
  }
  return report;
}

BenchReport run_benchmark(const std::filesystem::path& dir,
                          const BenchOptions& options) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::invalid_argument("run_benchmark: not a directory: " + dir.string());
  }
  if (options.jobs < 1) {
    throw std::invalid_argument("run_benchmark: jobs must be >= 1");
  }
  std::vector<Family> families = options.families;
  if (families.empty()) families.assign(all_families().begin(), all_families().end());

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".mps") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  // Each worker claims the next file; results land in their file's slot so
  // the report does not depend on scheduling.
  std::vector<InstanceOutcome> outcomes(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      outcomes[i] = run_instance(files[i], options, families);
    }
  };
  const int threads =
      static_cast<int>(std::min<std::size_t>(options.jobs, std::max<std::size_t>(files.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<BenchRun> runs;
  std::map<std::string, DetectionReport> detection;
  std::vector<std::string> skipped;
  for (InstanceOutcome& outcome : outcomes) {
    if (!outcome.parsed) {
      skipped.push_back(std::move(outcome.skip_reason));
      continue;
    }
    for (BenchRun& run : outcome.runs) runs.push_back(std::move(run));
    detection.emplace(outcome.name, std::move(outcome.detection));
  }
  BenchReport report = aggregate(runs, detection, families);
  report.skipped = std::move(skipped);
  return report;
}

const std::vector<std::string>& coverage_header() {
  static const std::vector<std::string> header = {
      "Family", "Detected", "Baseline", "Plugin", "Common", "Baseline only", "Plugin only"};
  return header;
}

const std::vector<std::string>& performance_header() {
  static const std::vector<std::string> header = {
      "Family",    "T_base",    "T_plug",     "N_base",     "N_plug",
      "T speedup", "N speedup", "#T_speedup", "#N_speedup"};
  return header;
}

const std::vector<std::string>& diagnostics_header() {
  static const std::vector<std::string> header = {
      "Family", "Runs", "Calls", "Domain reductions", "Cutoffs", "Prop time",
      "Zero-reduction runs"};
  return header;
}

std::string coverage_csv(const BenchReport& report) {
  std::string out = csv_line(coverage_header());
  for (const CoverageRow& row : report.coverage) {
    out += csv_line({std::string(family_name(row.family)), std::to_string(row.detected),
                     std::to_string(row.baseline), std::to_string(row.plugin),
                     std::to_string(row.common), std::to_string(row.baseline_only),
                     std::to_string(row.plugin_only)});
  }
  return out;
}

std::string performance_csv(const BenchReport& report) {
  std::string out = csv_line(performance_header());
  for (const PerformanceRow& row : report.performance) {
    out += csv_line({std::string(family_name(row.family)), cell(row.t_base),
                     cell(row.t_plug), cell(row.n_base), cell(row.n_plug),
                     cell(row.t_speedup), cell(row.n_speedup),
                     std::to_string(row.t_improved), std::to_string(row.n_improved)});
  }
  return out;
}

std::string diagnostics_csv(const BenchReport& report) {
  std::string out = csv_line(diagnostics_header());
  for (const DiagnosticsRow& row : report.diagnostics) {
    out += csv_line({std::string(family_name(row.family)), std::to_string(row.runs),
                     cell(row.calls), cell(row.domain_reductions), cell(row.cutoffs),
                     cell(row.prop_time), std::to_string(row.zero_reduction_runs)});
  }
  return out;
}

nlohmann::json report_to_json(const BenchReport& report, bool include_timing) {
  nlohmann::json coverage = nlohmann::json::array();
  for (const CoverageRow& row : report.coverage) {
    coverage.push_back({{"family", family_name(row.family)},
                        {"detected", row.detected},
                        {"baseline", row.baseline},
                        {"plugin", row.plugin},
                        {"common", row.common},
                        {"baseline_only", row.baseline_only},
                        {"plugin_only", row.plugin_only}});
  }
  nlohmann::json performance = nlohmann::json::array();
  for (const PerformanceRow& row : report.performance) {
    nlohmann::json entry = {{"family", family_name(row.family)},
                            {"n_base", json_cell(row.n_base)},
                            {"n_plug", json_cell(row.n_plug)},
                            {"n_speedup", json_cell(row.n_speedup)},
                            {"n_improved", row.n_improved}};
    if (include_timing) {
      entry["t_base"] = json_cell(row.t_base);
      entry["t_plug"] = json_cell(row.t_plug);
      entry["t_speedup"] = json_cell(row.t_speedup);
      entry["t_improved"] = row.t_improved;
    }
    performance.push_back(std::move(entry));
  }
  nlohmann::json diagnostics = nlohmann::json::array();
  for (const DiagnosticsRow& row : report.diagnostics) {
    nlohmann::json entry = {{"family", family_name(row.family)},
                            {"runs", row.runs},
                            {"calls", json_cell(row.calls)},
                            {"domain_reductions", json_cell(row.domain_reductions)},
                            {"cutoffs", json_cell(row.cutoffs)},
                            {"zero_reduction_runs", row.zero_reduction_runs}};
    if (include_timing) entry["prop_time"] = json_cell(row.prop_time);
    diagnostics.push_back(std::move(entry));
  }
  nlohmann::json runs = nlohmann::json::array();
  for (const BenchRun& run : report.runs) {
    nlohmann::json entry = {{"instance", run.instance},
                            {"seed", run.seed},
                            {"config", run_label_name(run.label)},
                            {"status", search_status_name(run.status)},
                            {"nodes", run.nodes},
                            {"calls", run.calls},
                            {"domain_reductions", run.domain_reductions},
                            {"cutoffs", run.cutoffs},
                            {"objective", json_cell(run.objective)}};
    if (include_timing) {
      entry["wall_time"] = run.wall_time;
      entry["prop_time"] = run.prop_time;
    }
    if (!run.error.empty()) entry["error"] = run.error;
    runs.push_back(std::move(entry));
  }
  return {{"coverage", std::move(coverage)},
          {"performance", std::move(performance)},
          {"diagnostics", std::move(diagnostics)},
          {"runs", std::move(runs)},
          {"skipped", report.skipped}};
}

void write_report(const BenchReport& report, const std::filesystem::path& out_dir,
                  std::string_view label) {
  std::filesystem::create_directories(out_dir);
  const std::string base(label);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(out_dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("write_report: cannot write " + (out_dir / name).string());
    out << text;
  };
  write(base + "_coverage.csv", coverage_csv(report));
  write(base + "_performance.csv", performance_csv(report));
  write(base + "_diagnostics.csv", diagnostics_csv(report));
  write(base + ".json", report_to_json(report).dump(2) + "\n");
}

}  // namespace structprop
