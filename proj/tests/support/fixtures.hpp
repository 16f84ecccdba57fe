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

// Small hand-built models shared by the unit tests and the acceptance
// runner, and a permutation / sign-inversion transform written
// independently of the synth module's obfuscator.

#ifndef STRUCTPROP_TESTS_SUPPORT_FIXTURES_HPP_
#define STRUCTPROP_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "structprop/model.hpp"
#include "structprop/record.hpp"

namespace structprop::testing {

struct WorkedExample {
  MipModel model;
  SemanticRecord record;
};

// Two exact-one groups with costs {3, 5} and {4, 7} under the budget row
// 3 y1 + 5 y2 + 4 y3 + 7 y4 <= budget. Variables y1..y4 are ids 0..3.
WorkedExample one_hot_example(double budget = 8.0);

// Groups with weights {2, 5} and {3, 6}, links w x - z <= 0 and the
// bottleneck z (id 4, continuous, [0, z_upper]). Selectors are ids 0..3.
WorkedExample bottleneck_example(double z_upper);

// x in [0, 10] integer (id 0), guard y (id 1): y = 0 forces x <= 2,
// y = 1 forces 5 <= x <= 7, as big-M rows.
WorkedExample disj_example();

// A t x t assignment matrix with exact-one item rows and value columns.
WorkedExample assignment_example(int t);

struct Transformed {
  MipModel model;
  // New id of each old variable / row.
  std::vector<VarId> var_map;
  std::vector<RowId> row_map;
};

// Shuffles variables and rows and multiplies every row (when `negate` is
// set) by -1. Names are kept.
Transformed permute_and_negate(const MipModel& model, std::uint64_t seed, bool negate = true);

// Equal as multisets.
bool same_records(std::span<const SemanticRecord> a, std::span<const SemanticRecord> b);

std::string describe(const SemanticRecord& record, const MipModel& model);

}  // namespace structprop::testing

#endif  // STRUCTPROP_TESTS_SUPPORT_FIXTURES_HPP_
