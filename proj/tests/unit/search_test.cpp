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

#include "fixtures.hpp"
#include "oracle.hpp"
#include "structprop/detect.hpp"
#include "structprop/search.hpp"
#include "structprop/synth.hpp"

namespace structprop {
namespace {

using testing::Rational;

SearchConfig with_freq(PropFrequency freq) {
  SearchConfig config;
  config.propfreq = freq;
  return config;
}

TEST(SearchTest, OptimumMatchesOracle) {
  auto ex = testing::one_hot_example(8.0);
  ex.model.set_objective({{0, -2}, {1, -1}, {2, -4}, {3, -3}}, ObjectiveSense::kMinimize);
  const auto oracle =
      testing::oracle_optimum(ex.model, testing::oracle_feasible(ex.model, DomainBox::from_model(ex.model)));
  ASSERT_TRUE(oracle.has_value());
  for (PropFrequency freq : {PropFrequency::kRootOnly, PropFrequency::kEveryNode}) {
    const SearchResult res = dfs_solve(ex.model, std::span(&ex.record, 1), with_freq(freq));
    EXPECT_EQ(res.stats.status, SearchStatus::kOptimal);
    ASSERT_TRUE(res.objective.has_value());
    EXPECT_EQ(testing::exact(*res.objective), *oracle);
    EXPECT_TRUE(ex.model.is_feasible(res.solution));
    EXPECT_DOUBLE_EQ(ex.model.objective_value(res.solution), *res.objective);
  }
}

TEST(SearchTest, PlantedOptimaMatchOracle) {
  for (Family family : all_families()) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const PlantedInstance inst = reverse_sample(family, {}, seed);
      const auto records = detect_all(inst.model).records;
      const SearchResult res = dfs_solve(inst.model, records);
      const auto oracle = testing::oracle_feasible(inst.model, DomainBox::from_model(inst.model),
                                                   1 << 14);
      const auto best = testing::oracle_optimum(inst.model, oracle);
      ASSERT_TRUE(best.has_value()) << family_name(family);
      ASSERT_TRUE(res.objective.has_value()) << family_name(family);
      EXPECT_EQ(testing::exact(*res.objective), *best) << family_name(family) << " " << seed;
    }
  }
}

TEST(SearchTest, InfeasibleModel) {
  MipModel m;
  m.add_variable("a", 0, 1, Integrality::kBinary);
  m.add_variable("b", 0, 1, Integrality::kBinary);
  m.add_variable("c", 0, 1, Integrality::kBinary);
  m.add_row("two", {{0, 1}, {1, 1}, {2, 1}}, 2, 2);
  m.add_row("pair", {{0, 1}, {1, 1}}, 0, 0);
  m.add_row("c_off", {{2, 1}}, -kInfinity, 0);
  const SearchResult res = dfs_solve(m, {});
  EXPECT_EQ(res.stats.status, SearchStatus::kInfeasible);
  EXPECT_FALSE(res.objective.has_value());
}

TEST(SearchTest, DisjunctionNodesNeverGrowWithEveryNodePropagation) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PlantedInstance inst = reverse_sample(Family::kDisjPolyhedral, {}, seed);
    const auto records = detect_family(inst.model, Family::kDisjPolyhedral);
    const auto root = dfs_solve(inst.model, records, with_freq(PropFrequency::kRootOnly));
    const auto every = dfs_solve(inst.model, records, with_freq(PropFrequency::kEveryNode));
    EXPECT_EQ(root.stats.status, every.stats.status);
    EXPECT_EQ(root.objective, every.objective);
    EXPECT_LE(every.stats.nodes, root.stats.nodes) << "seed " << seed;
  }
}

TEST(SearchTest, RootOnlyCallsBoundedByFixpointRounds) {
  const PlantedInstance inst = reverse_sample(Family::kCumulative, {}, 6);
  const auto records = detect_all(inst.model).records;
  ASSERT_FALSE(records.empty());
  SearchConfig config = with_freq(PropFrequency::kRootOnly);
  config.propagator.max_fixpoint_rounds = 3;
  const SearchResult res = dfs_solve(inst.model, records, config);
  EXPECT_LE(res.stats.handler_calls,
            static_cast<std::int64_t>(records.size()) * config.propagator.max_fixpoint_rounds);
}

TEST(SearchTest, NodeAndTimeLimits) {
  const PlantedInstance inst = reverse_sample(Family::kAllDifferent, {}, 12);
  SearchConfig config;
  config.node_limit = 1;
  const SearchResult capped = dfs_solve(inst.model, {}, config);
  EXPECT_LE(capped.stats.nodes, 1);
  EXPECT_TRUE(capped.stats.status == SearchStatus::kLimit ||
              capped.stats.status == SearchStatus::kFeasible);

  config.node_limit = 0;
  config.time_limit = 1e-9;
  const SearchResult timed = dfs_solve(inst.model, {}, config);
  EXPECT_NE(timed.stats.status, SearchStatus::kOptimal);
  EXPECT_NE(timed.stats.status, SearchStatus::kInfeasible);
}

TEST(SearchTest, UnboundedIntegerIsRejected) {
  MipModel m;
  m.add_variable("n", 0, kInfinity, Integrality::kInteger);
  EXPECT_THROW(dfs_solve(m, {}), std::invalid_argument);
}

}  // namespace
}  // namespace structprop
