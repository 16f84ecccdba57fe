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

#include <random>
#include <stdexcept>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "structprop/detect.hpp"
#include "structprop/propagate.hpp"
#include "structprop/synth.hpp"

namespace structprop {
namespace {

using testing::oracle_feasible;

// Checks that `reduced` keeps every feasible point of `model` inside
// `original`, and that a cutoff only happens when there is none.
void expect_sound(const MipModel& model, const DomainBox& original, const DomainBox& reduced,
                  const PropagationOutcome& out, const std::string& context = {}) {
  const auto oracle = oracle_feasible(model, original);
  if (out.cutoff || reduced.empty) {
    EXPECT_FALSE(oracle.feasible()) << context << ": cutoff on a feasible box";
    return;
  }
  if (!oracle.feasible()) return;
  for (VarId v = 0; v < model.num_variables(); ++v) {
    EXPECT_LE(reduced.lower[v], oracle.hull_lower[v] + 1e-9) << context << " var " << v;
    EXPECT_GE(reduced.upper[v], oracle.hull_upper[v] - 1e-9) << context << " var " << v;
  }
}

TEST(OneHotResourceTest, RemovesOptionsOverBudget) {
  const auto ex = testing::one_hot_example(8.0);
  const DomainBox original = DomainBox::from_model(ex.model);
  DomainBox box = original;
  const auto& params = std::get<OneHotResourceParams>(ex.record.params);
  const PropagationOutcome out = propagate_one_hot_resource(params, box);
  EXPECT_FALSE(out.cutoff);
  // 5 + min(4, 7) > 8 and 7 + min(3, 5) > 8.
  EXPECT_EQ(box.upper[1], 0);
  EXPECT_EQ(box.upper[3], 0);
  EXPECT_EQ(box.upper[0], 1);
  EXPECT_EQ(box.upper[2], 1);
  expect_sound(ex.model, original, box, out);
  // The survivors are exactly the oracle's hull.
  const auto oracle = oracle_feasible(ex.model, original);
  for (VarId v = 0; v < 4; ++v) EXPECT_EQ(box.upper[v], oracle.hull_upper[v]);
}

TEST(OneHotResourceTest, CheapestChoicesOverBudgetIsCutoff) {
  OneHotResourceParams params;
  MipModel m;
  m.add_variable("a", 0, 1, Integrality::kBinary);
  m.add_variable("b", 0, 1, Integrality::kBinary);
  params.groups = {{{0, 3}}, {{1, 6}}};
  params.budget = 8;
  DomainBox box = DomainBox::from_model(m);
  const PropagationOutcome out = propagate_one_hot_resource(params, box);
  EXPECT_TRUE(out.cutoff);
  EXPECT_EQ(out.cutoffs, 1);
}

TEST(OneHotResourceTest, SlackBudgetIsNoOp) {
  const auto ex = testing::one_hot_example(12.0);
  DomainBox box = DomainBox::from_model(ex.model);
  const auto out =
      propagate_one_hot_resource(std::get<OneHotResourceParams>(ex.record.params), box);
  EXPECT_FALSE(out.changed());
  EXPECT_EQ(box, DomainBox::from_model(ex.model));
}

TEST(BottleneckTest, RaisesFloorAndDropsHeavyOptions) {
  const auto ex = testing::bottleneck_example(4.0);
  const DomainBox original = DomainBox::from_model(ex.model);
  DomainBox box = original;
  const auto out =
      propagate_bottleneck_exact_one(std::get<BottleneckExactOneParams>(ex.record.params), box);
  EXPECT_FALSE(out.cutoff);
  EXPECT_EQ(box.lower[4], 3);  // every group picks something: z >= max of the minima
  EXPECT_EQ(box.upper[1], 0);  // weight 5 > ub(z)
  EXPECT_EQ(box.upper[3], 0);  // weight 6 > ub(z)
  expect_sound(ex.model, original, box, out);
}

TEST(BottleneckTest, EqualWeightsWithRoomIsNoOp) {
  MipModel m;
  for (int i = 0; i < 4; ++i) m.add_variable("x" + std::to_string(i), 0, 1, Integrality::kBinary);
  m.add_variable("z", 4, 10);
  BottleneckExactOneParams params;
  params.bottleneck = 4;
  params.groups = {{{0, 4.0, {}}, {1, 4.0, {}}}, {{2, 4.0, {}}, {3, 4.0, {}}}};
  DomainBox box = DomainBox::from_model(m);
  EXPECT_FALSE(propagate_bottleneck_exact_one(params, box).changed());
}

TEST(BlockFixpointTest, ChainsRowTightening) {
  MipModel m;
  m.add_variable("x", 0, 10, Integrality::kInteger);
  m.add_variable("y", 0, 10, Integrality::kInteger);
  m.add_row("sum", {{0, 1}, {1, 1}}, -kInfinity, 3);
  m.add_row("floor", {{1, 1}}, 2, kInfinity);
  const DomainBox original = DomainBox::from_model(m);
  DomainBox box = original;
  const RowId rows[] = {0, 1};
  const auto out = propagate_block_fixpoint(m, rows, box);
  EXPECT_EQ(box.upper[0], 1);
  EXPECT_EQ(box.lower[1], 2);
  EXPECT_EQ(box.upper[1], 3);
  expect_sound(m, original, box, out);
}

TEST(BlockFixpointTest, SlackAndContradiction) {
  MipModel m;
  m.add_variable("x", 0, 2, Integrality::kInteger);
  m.add_variable("y", 0, 2, Integrality::kInteger);
  m.add_row("slack", {{0, 1}, {1, 1}}, -kInfinity, 10);
  DomainBox box = DomainBox::from_model(m);
  const RowId slack[] = {0};
  EXPECT_FALSE(propagate_block_fixpoint(m, slack, box).changed());

  m.add_row("need", {{0, 1}, {1, 1}}, 5, kInfinity);
  const RowId both[] = {0, 1};
  EXPECT_TRUE(propagate_block_fixpoint(m, both, box).cutoff);
}

TEST(DisjPolyhedralTest, EnvelopeOfSurvivingBranches) {
  const auto ex = testing::disj_example();
  const DomainBox original = DomainBox::from_model(ex.model);
  DomainBox box = original;
  const auto out =
      propagate_disj_polyhedral(std::get<DisjPolyhedralParams>(ex.record.params), box);
  EXPECT_FALSE(out.cutoff);
  EXPECT_EQ(box.lower[0], 0);
  EXPECT_EQ(box.upper[0], 7);
  expect_sound(ex.model, original, box, out);
}

TEST(DisjPolyhedralTest, ClosedBranchFixesSelector) {
  const auto ex = testing::disj_example();
  DomainBox box = DomainBox::from_model(ex.model);
  box.lower[0] = 4;  // x >= 4 rules out the y = 0 branch
  const DomainBox original = box;
  const auto out =
      propagate_disj_polyhedral(std::get<DisjPolyhedralParams>(ex.record.params), box);
  EXPECT_EQ(box.lower[1], 1);
  EXPECT_EQ(box.lower[0], 5);
  EXPECT_EQ(box.upper[0], 7);
  expect_sound(ex.model, original, box, out);
}

TEST(DisjPolyhedralTest, NoBranchLeftIsCutoff) {
  const auto ex = testing::disj_example();
  DomainBox box = DomainBox::from_model(ex.model);
  box.lower[0] = 3;
  box.upper[0] = 4;
  const DomainBox original = box;
  const auto out =
      propagate_disj_polyhedral(std::get<DisjPolyhedralParams>(ex.record.params), box);
  EXPECT_TRUE(out.cutoff);
  expect_sound(ex.model, original, box, out);
}

TEST(CpPropagatorTest, AllDifferentFixesAssignment) {
  const auto ex = testing::assignment_example(2);
  DomainBox box = DomainBox::from_model(ex.model);
  box.lower[0] = 1;  // a1_1 = 1
  const DomainBox original = box;
  const auto out = propagate_cp_family(ex.record, box);
  EXPECT_EQ(box.upper[1], 0);
  EXPECT_EQ(box.upper[2], 0);
  EXPECT_EQ(box.lower[3], 1);
  expect_sound(ex.model, original, box, out);
}

TEST(CpPropagatorTest, CardinalityForcesRemainder) {
  MipModel m;
  for (int i = 0; i < 3; ++i) m.add_variable("b" + std::to_string(i), 0, 1, Integrality::kBinary);
  m.add_row("sum", {{0, 1}, {1, 1}, {2, 1}}, 2, 2);
  const SemanticRecord rec = make_record(CardinalityParams{{0, 1, 2}, 2, 2}, {0});
  DomainBox box = DomainBox::from_model(m);
  box.upper[0] = 0;
  const DomainBox original = box;
  const auto out = propagate_cp_family(rec, box);
  EXPECT_EQ(box.lower[1], 1);
  EXPECT_EQ(box.lower[2], 1);
  expect_sound(m, original, box, out);
}

TEST(CpPropagatorTest, ChannelSyncsIndicatorsWithValue) {
  MipModel m;
  const VarId x = m.add_variable("x", 2, 3, Integrality::kInteger);
  ChannelLink link;
  link.var = x;
  std::vector<Term> value_terms = {{x, 1}};
  std::vector<Term> choice_terms;
  for (int v = 1; v <= 5; ++v) {
    const VarId y = m.add_variable("y" + std::to_string(v), 0, 1, Integrality::kBinary);
    link.indicators.push_back({y, static_cast<double>(v)});
    value_terms.push_back({y, -static_cast<double>(v)});
    choice_terms.push_back({y, 1});
  }
  link.link_row = m.add_row("link", value_terms, 0, 0);
  link.choice_row = m.add_row("choice", choice_terms, 1, 1);
  const SemanticRecord rec = make_record(ChannelParams{{link}}, {0, 1});
  const DomainBox original = DomainBox::from_model(m);
  DomainBox box = original;
  const auto out = propagate_cp_family(rec, box);
  EXPECT_EQ(box.upper[1], 0);  // value 1
  EXPECT_EQ(box.upper[2], 1);
  EXPECT_EQ(box.upper[3], 1);
  EXPECT_EQ(box.upper[4], 0);  // value 4
  EXPECT_EQ(box.upper[5], 0);  // value 5
  expect_sound(m, original, box, out);
}

TEST(RunFixpointTest, NoRecordsLeavesBoxAlone) {
  const auto ex = testing::one_hot_example(8.0);
  DomainBox box = DomainBox::from_model(ex.model);
  const auto out = run_fixpoint(ex.model, {}, box);
  EXPECT_FALSE(out.changed());
  EXPECT_EQ(out.calls, 0);
}

TEST(RunFixpointTest, SingleRecordMatchesDirectCall) {
  const auto ex = testing::one_hot_example(8.0);
  DomainBox direct = DomainBox::from_model(ex.model);
  propagate_one_hot_resource(std::get<OneHotResourceParams>(ex.record.params), direct);
  DomainBox looped = DomainBox::from_model(ex.model);
  const auto out = run_fixpoint(ex.model, std::span(&ex.record, 1), looped);
  EXPECT_EQ(direct, looped);
  EXPECT_GE(out.calls, 1);
}

// OneHotResource zeroes y2 and y4; the cardinality row then needs w = 1.
TEST(RunFixpointTest, RecordsFeedEachOther) {
  auto ex = testing::one_hot_example(8.0);
  MipModel& m = ex.model;
  const VarId w = m.add_variable("w", 0, 1, Integrality::kBinary);
  const RowId card = m.add_row("cover", {{1, 1}, {3, 1}, {w, 1}}, 1, kInfinity);
  const std::vector<SemanticRecord> records = {
      ex.record, make_record(CardinalityParams{{1, 3, w}, 1, 3}, {card})};
  const DomainBox original = DomainBox::from_model(m);
  DomainBox box = original;
  const auto out = run_fixpoint(m, records, box);
  EXPECT_EQ(box.lower[w], 1);
  expect_sound(m, original, box, out);

  PropagatorConfig disabled;
  disabled.family_enabled[static_cast<std::size_t>(Family::kCardinality)] = false;
  DomainBox partial = original;
  run_fixpoint(m, records, partial, disabled);
  EXPECT_EQ(partial.lower[w], 0);
}

// Every family: detected records propagated on random sub-boxes of small
// planted instances keep every feasible point.
TEST(PropagationSoundnessTest, AgreesWithOracleOnSmallInstances) {
  std::mt19937_64 rng(2026);
  for (Family family : all_families()) {
    int checked = 0;
    for (int seed = 1; seed <= 40 && checked < 6; ++seed) {
      const PlantedInstance inst = reverse_sample(family, {}, seed);
      const auto records = detect_family(inst.model, family);
      if (records.empty()) continue;
      DomainBox original = DomainBox::from_model(inst.model);
      // Fix one random integer variable to a value in its domain.
      std::vector<VarId> ints;
      for (VarId v = 0; v < inst.model.num_variables(); ++v) {
        if (original.is_integral(v) && original.upper[v] < kInfinity) ints.push_back(v);
      }
      if (!ints.empty() && seed % 2 == 1) {
        const VarId v = ints[rng() % ints.size()];
        const auto span = static_cast<std::uint64_t>(original.upper[v] - original.lower[v]);
        original.lower[v] = original.upper[v] = original.lower[v] + rng() % (span + 1);
      }
      try {
        (void)oracle_feasible(inst.model, original, 1 << 14);
      } catch (const std::invalid_argument&) {
        continue;  // too big to enumerate
      }
      DomainBox box = original;
      const auto out = run_fixpoint(inst.model, records, box);
      expect_sound(inst.model, original, box, out,
                   std::string(family_name(family)) + " seed " + std::to_string(seed));
      ++checked;
    }
    EXPECT_GT(checked, 0) << family_name(family) << ": no instance small enough";
  }
}

}  // namespace
}  // namespace structprop
