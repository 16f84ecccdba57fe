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

// Checks that a detector finds what was planted and that a propagator never
// removes a feasible point, plus the gate ladder a family must climb before
// it is benchmarked.
//
// Feasibility is decided by exhaustive enumeration over the integer
// variables. Continuous variables are not enumerated: an integer point is
// kept when row bound tightening over the continuous variables finds no
// conflict, which over-approximates the feasible set.

#ifndef STRUCTPROP_VERIFY_HPP_
#define STRUCTPROP_VERIFY_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "structprop/domain.hpp"
#include "structprop/model.hpp"
#include "structprop/propagate.hpp"
#include "structprop/record.hpp"
#include "structprop/synth.hpp"

namespace structprop {

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;

struct EnumerationResult {
  // point[k] is the value of scope[k].
  std::vector<std::vector<double>> feasible_points;
  // The node cap was hit; feasible_points is then incomplete.
  bool truncated = false;
  std::int64_t nodes_visited = 0;
};

// Enumerates the values of the integer variables in `scope` inside `box`
// (ascending, first scope variable outermost) and keeps each assignment
// that can be completed: rows whose variables are all fixed are evaluated
// exactly, the rest must survive row bound tightening. Throws
// std::invalid_argument if a scope variable is continuous or unbounded, or
// if `strict` is set and the model has any continuous variable.
EnumerationResult enumerate_feasible(const MipModel& model, const DomainBox& box,
                                     std::span<const VarId> scope,
                                     std::int64_t cap = kDefaultEnumerationCap,
                                     const Tolerances& tol = {}, bool strict = false);

// The integer variables of `model`, ascending.
std::vector<VarId> integer_scope(const MipModel& model);

enum class Verdict : std::uint8_t { kPass, kFail, kInconclusive };

std::string_view verdict_name(Verdict verdict);

struct VerifyResult {
  Verdict verdict = Verdict::kFail;
  std::string detail;

  bool passed() const { return verdict == Verdict::kPass; }
};

// Pass iff exactly one record of the planted family has the planted scope
// and parameters.
VerifyResult verify_detector(const PlantedInstance& instance,
                             std::span<const SemanticRecord> records);

// Runs the record's propagator on a copy of `box` and checks the result
// against enumeration over every integer variable of the model: the reduced
// box must lie inside `box`, keep every feasible point (and, for continuous
// variables, their tightened ranges) and may only report a cutoff when no
// point is feasible. Inconclusive when enumeration is truncated.
VerifyResult verify_propagation(const MipModel& model, const SemanticRecord& record,
                                const DomainBox& box,
                                const PropagatorConfig& config = {},
                                std::int64_t cap = kDefaultEnumerationCap);

enum class Gate : std::uint8_t {
  kArtifactCompleteness,
  kLoad,
  kDetectorVerification,
  kPropagatorSoundness,
  kSmoke,
  kBenchmarkReady,
};

inline constexpr int kNumGates = 6;

std::string_view gate_name(Gate gate);

struct GateResult {
  Gate gate = Gate::kArtifactCompleteness;
  bool passed = false;
  // False when an earlier gate failed and this one was skipped.
  bool ran = false;
  std::string detail;
  std::chrono::nanoseconds elapsed{0};
};

// The four per-family artifacts (detector, record schema, propagator,
// serializer) plus the planted-instance sampler the suites draw from.
struct FamilyDescriptor {
  Family family = Family::kCardinality;
  std::string name;
  std::function<std::vector<SemanticRecord>(const MipModel&)> detector;
  // Parses a serialized record, throwing on documents that do not match.
  std::function<SemanticRecord(const nlohmann::json&, const MipModel&)>
      record_schema;
  std::function<PropagationOutcome(const MipModel&, const SemanticRecord&,
                                   DomainBox&)>
      propagator;
  std::function<nlohmann::json(const SemanticRecord&, const MipModel&)>
      serializer;
  std::function<PlantedInstance(const SynthSize&, std::uint64_t)> sampler;
};

// The built-in detector, propagator and sampler of `family`.
FamilyDescriptor family_descriptor(Family family);
std::vector<FamilyDescriptor> family_registry();

struct GateConfig {
  std::uint64_t suite_seed = 0;
  int detector_instances = 50;
  int soundness_instances = 100;
  // Smoke runs on the smallest of this many suite instances.
  int smoke_candidates = 3;
  // Wall-clock cap for the smoke gate, seconds.
  double smoke_time_limit = 30.0;
  std::int64_t enumeration_cap = kDefaultEnumerationCap;
  // Refuse instances with continuous variables in the soundness gate
  // instead of treating them by row tightening.
  bool strict_integer = false;
  ObfuscationConfig obfuscation;
};

// Runs the six gates in order: artifact completeness (all artifacts
// present), load (detector and propagator run on an empty model; record
// serialization and MPS round trips are exact), detector verification,
// propagator soundness, smoke (detect plus fixpoint on the smallest suite
// instance within the time cap) and benchmark_ready (all of the above).
// Once a gate fails the rest are reported as not run.
std::vector<GateResult> run_gate_ladder(const FamilyDescriptor& family,
                                        const GateConfig& config = {});

// True iff every gate passed.
bool ladder_passed(std::span<const GateResult> results);

// {family, benchmark_ready, limits: {...}, gates: [{gate, status, detail}]}
// with status pass / fail / not_run. Elapsed times are included only on
// request so that reports stay reproducible.
nlohmann::json gate_report_json(std::string_view family,
                                std::span<const GateResult> results,
                                const GateConfig& config,
                                bool include_timing = false);

}  // namespace structprop

#endif  // STRUCTPROP_VERIFY_HPP_
