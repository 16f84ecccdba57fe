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

// Micro benchmarks for the hot paths: row tightening, detection, the record
// fixpoint, search and the report arithmetic.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "structprop/bench.hpp"
#include "structprop/detect.hpp"
#include "structprop/mps.hpp"
#include "structprop/propagate.hpp"
#include "structprop/search.hpp"
#include "structprop/synth.hpp"

namespace structprop {
namespace {

PlantedInstance obfuscated(Family family, std::uint64_t seed) {
  ObfuscationConfig config;
  config.seed = seed;
  return obfuscate(reverse_sample(family, {}, seed), config);
}

void BM_TightenRow(benchmark::State& state) {
  const int width = static_cast<int>(state.range(0));
  MipModel m;
  std::vector<Term> terms;
  std::mt19937_64 rng(1);
  for (int i = 0; i < width; ++i) {
    m.add_variable("x" + std::to_string(i), 0, 10, Integrality::kInteger);
    terms.push_back({i, static_cast<double>(1 + rng() % 9)});
  }
  m.add_row("r", terms, -kInfinity, 5.0 * width);
  const DomainBox original = DomainBox::from_model(m);
  for (auto _ : state) {
    DomainBox box = original;
    benchmark::DoNotOptimize(tighten_row(m.rows[0], box));
  }
  state.SetItemsProcessed(state.iterations() * width);
}
BENCHMARK(BM_TightenRow)->Arg(8)->Arg(64)->Arg(512);

void BM_DetectAll(benchmark::State& state) {
  const Family family = all_families()[state.range(0)];
  const PlantedInstance inst = obfuscated(family, 11);
  for (auto _ : state) benchmark::DoNotOptimize(detect_all(inst.model));
  state.SetLabel(std::string(family_name(family)));
}
BENCHMARK(BM_DetectAll)->DenseRange(0, kNumFamilies - 1);

void BM_RunFixpoint(benchmark::State& state) {
  const Family family = all_families()[state.range(0)];
  const PlantedInstance inst = obfuscated(family, 13);
  const auto records = detect_all(inst.model).records;
  const DomainBox original = DomainBox::from_model(inst.model);
  PropagatorConfig config;
  config.include_rows = true;
  for (auto _ : state) {
    DomainBox box = original;
    benchmark::DoNotOptimize(run_fixpoint(inst.model, records, box, config));
  }
  state.SetLabel(std::string(family_name(family)));
}
BENCHMARK(BM_RunFixpoint)->DenseRange(0, kNumFamilies - 1);

void BM_DfsSolve(benchmark::State& state) {
  const PlantedInstance inst = obfuscated(Family::kDisjPolyhedral, 17);
  const auto records = detect_all(inst.model).records;
  SearchConfig config;
  config.propfreq = state.range(0) == 0 ? PropFrequency::kRootOnly : PropFrequency::kEveryNode;
  for (auto _ : state) benchmark::DoNotOptimize(dfs_solve(inst.model, records, config));
  state.SetLabel(state.range(0) == 0 ? "root" : "all");
}
BENCHMARK(BM_DfsSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_MpsRoundTrip(benchmark::State& state) {
  const PlantedInstance inst = obfuscated(Family::kRosteringWindow, 19);
  for (auto _ : state) benchmark::DoNotOptimize(parse_mps(write_mps(inst.model)));
}
BENCHMARK(BM_MpsRoundTrip);

void BM_ShiftedGeometricMean(benchmark::State& state) {
  std::vector<double> values(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 1000.0);
  for (double& v : values) v = dist(rng);
  for (auto _ : state) benchmark::DoNotOptimize(shifted_geometric_mean(values, kNodeShift));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ShiftedGeometricMean)->Arg(16)->Arg(4096);

}  // namespace
}  // namespace structprop

BENCHMARK_MAIN();
