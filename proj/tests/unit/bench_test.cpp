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

#include <gtest/gtest.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "structprop/bench.hpp"
#include "structprop/mps.hpp"
#include "structprop/synth.hpp"

namespace structprop {
namespace {

namespace fs = std::filesystem;

// The plain product formula, in long double.
double sgm_reference(const std::vector<double>& values, double shift) {
  long double product = 1.0L;
  for (double v : values) product *= static_cast<long double>(v) + shift;
  return static_cast<double>(std::pow(product, 1.0L / values.size()) - shift);
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag)
      : path_(fs::temp_directory_path() /
              ("structprop_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void write_corpus(const fs::path& dir, int count) {
  for (int i = 0; i < count; ++i) {
    const Family family = all_families()[i % kNumFamilies];
    ObfuscationConfig config;
    config.seed = 300 + i;
    const PlantedInstance inst = obfuscate(reverse_sample(family, {}, 300 + i), config);
    const std::string stem = std::string(family_name(family)) + "_" + std::to_string(300 + i);
    std::ofstream(dir / (stem + ".mps")) << write_mps(inst.model);
    std::ofstream(dir / (stem + ".json")) << sidecar_json(inst).dump();
  }
}

BenchRun make_run(const std::string& name, RunLabel label, double time, std::int64_t nodes,
                  SearchStatus status = SearchStatus::kOptimal) {
  BenchRun run;
  run.instance = name;
  run.label = label;
  run.wall_time = time;
  run.nodes = nodes;
  run.status = status;
  return run;
}

DetectionReport detected(Family family) {
  DetectionReport report;
  report.counts[static_cast<std::size_t>(family)] = 1;
  return report;
}

TEST(ShiftedGeometricMeanTest, Examples) {
  const std::vector<double> same = {4, 4, 4};
  EXPECT_NEAR(*shifted_geometric_mean(same, 1.0), 4.0, 1e-12);
  const std::vector<double> pair = {0, 8};
  EXPECT_NEAR(*shifted_geometric_mean(pair, 1.0), 2.0, 1e-12);  // sqrt(1 * 9) - 1
  const std::vector<double> nodes = {100, 300, 1100};
  EXPECT_NEAR(*shifted_geometric_mean(nodes, 100.0), sgm_reference(nodes, 100.0), 1e-9);
}

TEST(ShiftedGeometricMeanTest, AgreesWithProductFormula) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> value(0.0, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> values(1 + trial % 12);
    for (double& v : values) v = value(rng);
    for (double shift : {kTimeShift, kNodeShift}) {
      const double got = *shifted_geometric_mean(values, shift);
      EXPECT_NEAR(got, sgm_reference(values, shift), 1e-9 * (1 + got));
      // Scaling the values and the shift together scales the mean.
      std::vector<double> scaled = values;
      for (double& v : scaled) v *= 3;
      EXPECT_NEAR(*shifted_geometric_mean(scaled, 3 * shift), 3 * got, 1e-8 * (1 + got));
    }
  }
}

TEST(ShiftedGeometricMeanTest, EdgeCases) {
  EXPECT_FALSE(shifted_geometric_mean({}, 1.0).has_value());
  const std::vector<double> negative = {1, -1};
  EXPECT_THROW(shifted_geometric_mean(negative, 1.0), std::invalid_argument);
  const std::vector<double> ok = {1};
  EXPECT_THROW(shifted_geometric_mean(ok, 0.0), std::invalid_argument);
  const std::vector<double> inf = {INFINITY};
  EXPECT_THROW(shifted_geometric_mean(inf, 1.0), std::invalid_argument);
}

TEST(AggregateTest, EqualRunsGiveUnitSpeedup) {
  std::vector<BenchRun> runs;
  std::map<std::string, DetectionReport> detection;
  for (int i = 0; i < 3; ++i) {
    const std::string name = "i" + std::to_string(i);
    runs.push_back(make_run(name, RunLabel::kBaseline, 2.0, 50));
    runs.push_back(make_run(name, RunLabel::kPlugin, 2.0, 50));
    detection[name] = detected(Family::kStretch);
  }
  const Family families[] = {Family::kStretch};
  const BenchReport report = aggregate(runs, detection, families);
  ASSERT_EQ(report.performance.size(), 1u);
  const PerformanceRow& row = report.performance[0];
  EXPECT_DOUBLE_EQ(*row.t_speedup, 1.0);
  EXPECT_DOUBLE_EQ(*row.n_speedup, 1.0);
  EXPECT_EQ(row.t_improved, 0);
  EXPECT_EQ(row.n_improved, 0);
  EXPECT_EQ(report.coverage[0].common, 3);
}

TEST(AggregateTest, CoverageClassesAndSpeedups) {
  std::vector<BenchRun> runs = {
      make_run("a", RunLabel::kBaseline, 4.0, 400),
      make_run("a", RunLabel::kPlugin, 1.0, 100),
      make_run("b", RunLabel::kBaseline, 1.0, 10, SearchStatus::kLimit),
      make_run("b", RunLabel::kPlugin, 1.0, 10),
      make_run("c", RunLabel::kBaseline, 1.0, 10),
      make_run("c", RunLabel::kPlugin, 1.0, 10, SearchStatus::kLimit),
      make_run("d", RunLabel::kBaseline, 1.0, 10),  // not detected
      make_run("d", RunLabel::kPlugin, 1.0, 10),
  };
  runs[7].error = "boom";
  std::map<std::string, DetectionReport> detection = {{"a", detected(Family::kChannel)},
                                                      {"b", detected(Family::kChannel)},
                                                      {"c", detected(Family::kChannel)}};
  const Family families[] = {Family::kChannel};
  const BenchReport report = aggregate(runs, detection, families);
  const CoverageRow& cov = report.coverage[0];
  EXPECT_EQ(cov.detected, 3);
  EXPECT_EQ(cov.baseline, 2);
  EXPECT_EQ(cov.plugin, 2);
  EXPECT_EQ(cov.common, 1);
  EXPECT_EQ(cov.baseline_only, 1);
  EXPECT_EQ(cov.plugin_only, 1);
  const PerformanceRow& perf = report.performance[0];
  EXPECT_DOUBLE_EQ(*perf.t_base, 4.0);
  EXPECT_NEAR(*perf.t_speedup, 4.0 / 1.0, 1e-12);
  EXPECT_NEAR(*perf.n_speedup, 4.0, 1e-12);
  EXPECT_EQ(perf.t_improved, 1);
  EXPECT_EQ(perf.n_improved, 1);
  EXPECT_EQ(report.diagnostics[0].runs, 3);
}

TEST(AggregateTest, NoCommonInstancesGivesDashes) {
  const std::vector<BenchRun> runs = {
      make_run("a", RunLabel::kBaseline, 1.0, 10, SearchStatus::kLimit),
      make_run("a", RunLabel::kPlugin, 1.0, 10, SearchStatus::kLimit)};
  const std::map<std::string, DetectionReport> detection = {{"a", detected(Family::kNValue)}};
  const Family families[] = {Family::kNValue};
  const BenchReport report = aggregate(runs, detection, families);
  EXPECT_FALSE(report.performance[0].t_base.has_value());
  EXPECT_FALSE(report.performance[0].t_speedup.has_value());
  EXPECT_NE(performance_csv(report).find("--"), std::string::npos);
}

TEST(AggregateTest, OrphanRunsAreAnError) {
  const std::vector<BenchRun> runs = {make_run("lonely", RunLabel::kBaseline, 1.0, 1)};
  try {
    aggregate(runs, {});
    FAIL() << "expected std::invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("lonely (baseline only)"), std::string::npos);
  }
}

TEST(RunBenchmarkTest, PairsEveryInstance) {
  TempDir dir("bench_pairs");
  write_corpus(dir.path(), 10);
  BenchOptions options;
  options.baseline.time_limit = 10;
  options.plugin = options.baseline;
  const BenchReport report = run_benchmark(dir.path(), options);
  EXPECT_EQ(report.runs.size(), 20u);
  EXPECT_TRUE(report.skipped.empty());
  EXPECT_EQ(report.coverage.size(), static_cast<std::size_t>(kNumFamilies));
  int detected = 0;
  for (const CoverageRow& row : report.coverage) detected += row.detected;
  EXPECT_GE(detected, 10);
  // Seeds come from the sidecars.
  for (const BenchRun& run : report.runs) {
    EXPECT_EQ(std::to_string(run.seed), run.instance.substr(run.instance.rfind('_') + 1));
  }
}

TEST(RunBenchmarkTest, TinyTimeLimitSolvesNothing) {
  TempDir dir("bench_limit");
  write_corpus(dir.path(), 5);
  BenchOptions options;
  options.baseline.time_limit = 1e-9;
  options.plugin = options.baseline;
  const BenchReport report = run_benchmark(dir.path(), options);
  for (const BenchRun& run : report.runs) EXPECT_FALSE(run.solved()) << run.instance;
  for (const CoverageRow& row : report.coverage) EXPECT_EQ(row.common, 0);
}

TEST(RunBenchmarkTest, JobsDoNotChangeResults) {
  TempDir dir("bench_jobs");
  write_corpus(dir.path(), 8);
  BenchOptions options;
  options.baseline.node_limit = 100000;
  options.plugin = options.baseline;
  const BenchReport serial = run_benchmark(dir.path(), options);
  options.jobs = 4;
  const BenchReport parallel = run_benchmark(dir.path(), options);
  EXPECT_EQ(report_to_json(serial, false), report_to_json(parallel, false));
}

TEST(RunBenchmarkTest, UnreadableFileIsSkipped) {
  TempDir dir("bench_skip");
  write_corpus(dir.path(), 2);
  std::ofstream(dir.path() / "broken.mps") << "NAME X\nNOT A SECTION\n";
  BenchOptions options;
  options.baseline.time_limit = 10;
  options.plugin = options.baseline;
  const BenchReport report = run_benchmark(dir.path(), options);
  EXPECT_EQ(report.runs.size(), 4u);
  ASSERT_EQ(report.skipped.size(), 1u);
  EXPECT_NE(report.skipped[0].find("broken.mps"), std::string::npos) << report.skipped[0];
}

TEST(WriteReportTest, FileNames) {
  TempDir dir("bench_write");
  const std::vector<BenchRun> runs = {make_run("a", RunLabel::kBaseline, 1.0, 10),
                                      make_run("a", RunLabel::kPlugin, 0.5, 5)};
  const BenchReport report = aggregate(runs, {{"a", detected(Family::kCumulative)}});
  write_report(report, dir.path(), "demo");
  for (const char* name :
       {"demo_coverage.csv", "demo_performance.csv", "demo_diagnostics.csv", "demo.json"}) {
    EXPECT_TRUE(fs::exists(dir.path() / name)) << name;
  }
  std::ifstream in(dir.path() / "demo_coverage.csv");
  std::string header;
  std::getline(in, header);
  std::string expected;
  for (const std::string& cell : coverage_header()) {
    expected += (expected.empty() ? "" : ",") + cell;
  }
  EXPECT_EQ(header, expected);
}

}  // namespace
}  // namespace structprop
