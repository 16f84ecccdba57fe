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

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "structprop/detect.hpp"
#include "structprop/verify.hpp"

namespace structprop {
namespace {

GateConfig quick_gates() {
  GateConfig config;
  config.suite_seed = 17;
  config.detector_instances = 8;
  config.soundness_instances = 8;
  return config;
}

std::set<std::vector<double>> as_set(const std::vector<std::vector<double>>& points) {
  return {points.begin(), points.end()};
}

TEST(EnumerateTest, SmallExamples) {
  MipModel m;
  m.add_variable("x", 0, 2, Integrality::kInteger);
  m.add_variable("y", 0, 2, Integrality::kInteger);
  m.add_row("r", {{0, 1}, {1, 1}}, -kInfinity, 2);
  const std::vector<VarId> scope = {0, 1};
  const auto result = enumerate_feasible(m, DomainBox::from_model(m), scope);
  EXPECT_FALSE(result.truncated);
  EXPECT_EQ(as_set(result.feasible_points),
            (std::set<std::vector<double>>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}}));

  const auto capped = enumerate_feasible(m, DomainBox::from_model(m), scope, 3);
  EXPECT_TRUE(capped.truncated);

  m.add_variable("c", 0, 1);
  const std::vector<VarId> with_continuous = {0, 2};
  EXPECT_THROW(enumerate_feasible(m, DomainBox::from_model(m), with_continuous),
               std::invalid_argument);
  EXPECT_THROW(enumerate_feasible(m, DomainBox::from_model(m), scope, 100, {}, true),
               std::invalid_argument);
}

// On pure integer models the enumerator and the rational oracle must agree
// point for point.
TEST(EnumerateTest, MatchesOracleOnPlantedInstances) {
  for (Family family : {Family::kAllDifferent, Family::kCardinality, Family::kOneHotResource,
                        Family::kStretch, Family::kNValue}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const PlantedInstance inst = reverse_sample(family, {}, seed);
      const DomainBox box = DomainBox::from_model(inst.model);
      const std::vector<VarId> scope = integer_scope(inst.model);
      ASSERT_EQ(scope.size(), static_cast<std::size_t>(inst.model.num_variables()));
      const auto mine = enumerate_feasible(inst.model, box, scope);
      const auto oracle = testing::oracle_feasible(inst.model, box);
      std::set<std::vector<double>> expected;
      for (const auto& p : oracle.points) expected.insert({p.begin(), p.end()});
      EXPECT_EQ(as_set(mine.feasible_points), expected) << family_name(family) << " " << seed;
    }
  }
}

TEST(VerifyDetectorTest, PassAndFailureModes) {
  const PlantedInstance inst = reverse_sample(Family::kAllDifferent, {}, 3);
  EXPECT_TRUE(verify_detector(inst, detect_family(inst.model, Family::kAllDifferent)).passed());

  const VerifyResult none = verify_detector(inst, {});
  EXPECT_EQ(none.verdict, Verdict::kFail);
  EXPECT_EQ(none.detail, "no records");

  SemanticRecord shrunk = inst.ground_truth;
  shrunk.scope.pop_back();
  EXPECT_FALSE(verify_detector(inst, std::span(&shrunk, 1)).passed());

  const std::vector<SemanticRecord> twice = {inst.ground_truth, inst.ground_truth};
  EXPECT_FALSE(verify_detector(inst, twice).passed());
}

TEST(VerifyPropagationTest, BuiltInPropagatorPasses) {
  const auto ex = testing::one_hot_example(8.0);
  EXPECT_TRUE(verify_propagation(ex.model, ex.record, DomainBox::from_model(ex.model)).passed());
  const auto disj = testing::disj_example();
  EXPECT_TRUE(
      verify_propagation(disj.model, disj.record, DomainBox::from_model(disj.model)).passed());
}

TEST(VerifyPropagationTest, TinyCapIsInconclusive) {
  const auto ex = testing::assignment_example(3);
  const VerifyResult v =
      verify_propagation(ex.model, ex.record, DomainBox::from_model(ex.model), {}, 4);
  EXPECT_EQ(v.verdict, Verdict::kInconclusive);
}

TEST(GateLadderTest, BuiltInFamilyIsBenchmarkReady) {
  const FamilyDescriptor family = family_descriptor(Family::kOneHotResource);
  const auto results = run_gate_ladder(family, quick_gates());
  ASSERT_EQ(results.size(), static_cast<std::size_t>(kNumGates));
  for (const GateResult& r : results) EXPECT_TRUE(r.passed) << gate_name(r.gate) << r.detail;
  EXPECT_TRUE(ladder_passed(results));
}

TEST(GateLadderTest, IdentityPropagatorIsStillSound) {
  FamilyDescriptor family = family_descriptor(Family::kCardinality);
  family.propagator = [](const MipModel&, const SemanticRecord&, DomainBox&) {
    return PropagationOutcome{};
  };
  EXPECT_TRUE(ladder_passed(run_gate_ladder(family, quick_gates())));
}

// Fixing every scope variable to its lower bound removes feasible points.
TEST(GateLadderTest, UnsoundPropagatorStopsAtSoundness) {
  FamilyDescriptor family = family_descriptor(Family::kCardinality);
  family.propagator = [](const MipModel&, const SemanticRecord& rec, DomainBox& box) {
    PropagationOutcome out;
    for (VarId v : rec.scope) box.upper[v] = box.lower[v];
    return out;
  };
  const auto results = run_gate_ladder(family, quick_gates());
  EXPECT_TRUE(results[2].passed);
  EXPECT_FALSE(results[3].passed);
  EXPECT_TRUE(results[3].ran);
  EXPECT_FALSE(results[4].ran);
  EXPECT_FALSE(ladder_passed(results));
}

TEST(GateLadderTest, EmptyDetectorShortCircuits) {
  FamilyDescriptor family = family_descriptor(Family::kChannel);
  family.detector = [](const MipModel&) { return std::vector<SemanticRecord>{}; };
  const auto results = run_gate_ladder(family, quick_gates());
  EXPECT_TRUE(results[0].passed);
  EXPECT_TRUE(results[1].passed);
  EXPECT_FALSE(results[2].passed);
  for (int g = 3; g < kNumGates; ++g) {
    EXPECT_FALSE(results[g].ran);
    EXPECT_EQ(results[g].detail, "not run");
  }
}

TEST(GateLadderTest, MissingArtifactFailsFirstGate) {
  FamilyDescriptor family = family_descriptor(Family::kStretch);
  family.serializer = nullptr;
  const auto results = run_gate_ladder(family, quick_gates());
  EXPECT_FALSE(results[0].passed);
  EXPECT_NE(results[0].detail.find("serializer"), std::string::npos) << results[0].detail;
}

TEST(GateLadderTest, SmokeTimeout) {
  GateConfig config = quick_gates();
  config.smoke_time_limit = 0.0;
  const auto results = run_gate_ladder(family_descriptor(Family::kCardinality), config);
  EXPECT_FALSE(results[4].passed);
  EXPECT_NE(results[4].detail.find("timeout"), std::string::npos) << results[4].detail;
}

TEST(GateLadderTest, ReportJsonShape) {
  const GateConfig config = quick_gates();
  FamilyDescriptor family = family_descriptor(Family::kChannel);
  family.detector = [](const MipModel&) { return std::vector<SemanticRecord>{}; };
  const auto results = run_gate_ladder(family, config);
  const nlohmann::json doc = gate_report_json("Channel", results, config);
  EXPECT_EQ(doc.at("family"), "Channel");
  EXPECT_FALSE(doc.at("benchmark_ready").get<bool>());
  EXPECT_EQ(doc.at("limits").at("suite_seed"), 17);
  ASSERT_EQ(doc.at("gates").size(), static_cast<std::size_t>(kNumGates));
  EXPECT_EQ(doc["gates"][0].at("gate"), "artifact_completeness");
  EXPECT_EQ(doc["gates"][2].at("status"), "fail");
  EXPECT_EQ(doc["gates"][5].at("status"), "not_run");
  EXPECT_FALSE(doc["gates"][0].contains("elapsed_ms"));
  EXPECT_TRUE(gate_report_json("Channel", results, config, true)["gates"][0].contains(
      "elapsed_ms"));
}

}  // namespace
}  // namespace structprop
