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

// Reverse sampling: builds small MIP instances around one planted structure
// whose record is known, and obfuscates them the way real formulations hide
// structure (redundant rows, shuffled order, negated rows).
//
// Generation is witness first: a random integer assignment is drawn, then
// every right-hand side is chosen so that the assignment satisfies the
// instance. All data are integers, and the same seed always yields the same
// instance on every platform.

#ifndef STRUCTPROP_SYNTH_HPP_
#define STRUCTPROP_SYNTH_HPP_

#include <cstdint>
#include <nlohmann/json.hpp>
#include <vector>

#include "structprop/model.hpp"
#include "structprop/record.hpp"

namespace structprop {

// Family-specific sizes; 0 lets the seed choose. The primary size n is the
// number of items (AllDifferent, NValue), binaries (Cardinality), values per
// channelled variable (Channel), tasks (Cumulative), periods (Stretch),
// groups (OneHotResource, BottleneckExactOne), nurses (RosteringWindow),
// units (UnitCommitmentRamp) or branches (DisjPolyhedral). The secondary
// size m is the number of values (AllDifferent, NValue), options per group
// (OneHotResource, BottleneckExactOne), days (RosteringWindow) or periods
// (UnitCommitmentRamp).
struct SynthSize {
  int n = 0;
  int m = 0;
  // Fix a few integer variables to random values afterwards, so the
  // instance may become infeasible.
  bool allow_infeasible = false;
};

// Instances keep the product of integer domain sizes at or below 2^12 so
// that exhaustive enumeration stays cheap.
inline constexpr double kMaxScopeBits = 12.0;

struct ObfuscationConfig {
  int noise_rows = 10;
  bool permute_rows = true;
  bool permute_vars = true;
  double sign_flip_prob = 0.3;
  std::uint64_t seed = 0;

  // No noise, no permutation, no sign flips.
  static ObfuscationConfig identity() {
    return {0, false, false, 0.0, 0};
  }
};

struct PlantedInstance {
  Family family = Family::kCardinality;
  MipModel model;
  SemanticRecord ground_truth;
  // Position of each originally generated variable / row in `model`.
  std::vector<VarId> var_map;
  std::vector<RowId> row_map;
  // A point satisfying the instance before any infeasibility fixings.
  std::vector<double> witness;
  // Whether the witness satisfies the final model; false only when
  // allow_infeasible fixings moved a variable away from its witness value.
  bool witness_feasible = true;
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument for sizes the family cannot realize within
// kMaxScopeBits.
PlantedInstance reverse_sample(Family family, const SynthSize& size,
                               std::uint64_t seed);

// Throws std::invalid_argument when sign_flip_prob is outside [0, 1] or
// noise_rows is negative.
PlantedInstance obfuscate(const PlantedInstance& instance,
                          const ObfuscationConfig& config);

// log2 of the product of integer domain sizes; +inf if some integer
// variable is unbounded.
double integer_scope_bits(const MipModel& model);

// {family, seed, record, permutation: {variables, rows}, witness,
//  witness_feasible}
nlohmann::json sidecar_json(const PlantedInstance& instance);

}  // namespace structprop

#endif  // STRUCTPROP_SYNTH_HPP_
