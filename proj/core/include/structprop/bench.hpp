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

// Paired baseline / plugin benchmarking over a directory of MPS files and
// the report tables built from it: per-family coverage (which detected
// instances each configuration solves), performance over the commonly
// solved instances as shifted geometric means, and propagation diagnostics.
//
// "Solved" means the search proved optimality within its limits. Speedups
// are baseline / plugin, so values above 1 favour the plugin.

#ifndef STRUCTPROP_BENCH_HPP_
#define STRUCTPROP_BENCH_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "structprop/detect.hpp"
#include "structprop/mps.hpp"
#include "structprop/record.hpp"
#include "structprop/search.hpp"

namespace structprop {

// (prod (x_i + s))^(1/n) - s, evaluated in log space; nullopt for an empty
// list. Throws std::invalid_argument on a negative or non-finite value or a
// shift that is not positive.
std::optional<double> shifted_geometric_mean(std::span<const double> values,
                                             double shift);

inline constexpr double kTimeShift = 1.0;
inline constexpr double kNodeShift = 100.0;
inline constexpr double kDiagnosticShift = 1.0;

enum class RunLabel : std::uint8_t { kBaseline, kPlugin };

std::string_view run_label_name(RunLabel label);

struct BenchRun {
  std::string instance;
  std::uint64_t seed = 0;
  RunLabel label = RunLabel::kBaseline;
  SearchStatus status = SearchStatus::kLimit;
  double wall_time = 0.0;  // seconds
  std::int64_t nodes = 0;
  std::int64_t calls = 0;
  std::int64_t domain_reductions = 0;
  std::int64_t cutoffs = 0;
  double prop_time = 0.0;  // seconds
  std::optional<double> objective;
  // Non-empty when the run failed; it then counts as unsolved.
  std::string error;

  bool solved() const { return error.empty() && status == SearchStatus::kOptimal; }
};

struct CoverageRow {
  Family family = Family::kCardinality;
  int detected = 0;
  int baseline = 0;
  int plugin = 0;
  int common = 0;
  int baseline_only = 0;
  int plugin_only = 0;
};

// Over the commonly solved instances; absent cells print as "--".
struct PerformanceRow {
  Family family = Family::kCardinality;
  std::optional<double> t_base;
  std::optional<double> t_plug;
  std::optional<double> n_base;
  std::optional<double> n_plug;
  std::optional<double> t_speedup;
  std::optional<double> n_speedup;
  int t_improved = 0;
  int n_improved = 0;
};

// Plugin runs on detected instances.
struct DiagnosticsRow {
  Family family = Family::kCardinality;
  int runs = 0;
  std::optional<double> calls;
  std::optional<double> domain_reductions;
  std::optional<double> cutoffs;
  std::optional<double> prop_time;
  // Runs whose propagators never tightened a bound; a count, not a mean.
  int zero_reduction_runs = 0;
};

struct BenchReport {
  // One row per family, in all_families() order (or the requested subset).
  std::vector<CoverageRow> coverage;
  std::vector<PerformanceRow> performance;
  std::vector<DiagnosticsRow> diagnostics;
  std::vector<BenchRun> runs;
  // Files that could not be read, with the reason.
  std::vector<std::string> skipped;
};

// Builds the tables. `detection` maps instance names to their detection
// report; instances without one count as detecting nothing. Throws
// std::invalid_argument listing the orphans when a run lacks its partner.
BenchReport aggregate(std::span<const BenchRun> runs,
                      const std::map<std::string, DetectionReport>& detection,
                      std::span<const Family> families = all_families());

struct BenchOptions {
  // Empty means all families.
  std::vector<Family> families;
  SearchConfig baseline;
  SearchConfig plugin;
  int jobs = 1;
  MpsOptions mps;
  DetectConfig detect;
};

// Reads every *.mps file of `dir` (sorted by name), detects, and runs the
// baseline (no records) and plugin (detected records of the requested
// families) searches. Unreadable files are skipped with a reason; search
// failures are recorded on the run. Statuses and node counts do not
// depend on `jobs`.
BenchReport run_benchmark(const std::filesystem::path& dir,
                          const BenchOptions& options);

// Table headers as printed.
const std::vector<std::string>& coverage_header();
const std::vector<std::string>& performance_header();
const std::vector<std::string>& diagnostics_header();

std::string coverage_csv(const BenchReport& report);
std::string performance_csv(const BenchReport& report);
std::string diagnostics_csv(const BenchReport& report);

// Absent cells are null. Wall and propagation times are left out unless
// `include_timing` is set.
nlohmann::json report_to_json(const BenchReport& report, bool include_timing = true);

// Writes {label}_coverage.csv, {label}_performance.csv,
// {label}_diagnostics.csv and {label}.json into `out_dir`.
void write_report(const BenchReport& report, const std::filesystem::path& out_dir,
                  std::string_view label);

}  // namespace structprop

#endif  // STRUCTPROP_BENCH_HPP_
