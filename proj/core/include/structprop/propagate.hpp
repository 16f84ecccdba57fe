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

// Bound-tightening rules for every record family and the fixpoint drivers.
//
// Each propagator shrinks a DomainBox in place and never removes a point
// that satisfies the rows the record was lifted from. A propagator handed a
// record whose assumptions do not hold on the box (say, a non-binary
// selector) returns without touching it.

#ifndef STRUCTPROP_PROPAGATE_HPP_
#define STRUCTPROP_PROPAGATE_HPP_

#include <array>
#include <span>

#include "structprop/domain.hpp"
#include "structprop/model.hpp"
#include "structprop/record.hpp"

namespace structprop {

struct PropagatorConfig {
  // Cap on rounds of every fixpoint loop; at least 1.
  int max_fixpoint_rounds = 100;
  Tolerances tolerances;
  // Indexed by Family.
  std::array<bool, kNumFamilies> family_enabled = [] {
    std::array<bool, kNumFamilies> all{};
    all.fill(true);
    return all;
  }();
  // run_fixpoint also tightens every model row, as a solver's row-level
  // presolve would.
  bool include_rows = false;
  // Bottleneck: raise lb(z) with the activator covering argument.
  bool bottleneck_radius_rule = false;

  bool enabled(Family family) const {
    return family_enabled[static_cast<std::size_t>(family)];
  }
};

PropagationOutcome propagate_one_hot_resource(
    const OneHotResourceParams& params, DomainBox& box,
    const PropagatorConfig& config = {});

PropagationOutcome propagate_bottleneck_exact_one(
    const BottleneckExactOneParams& params, DomainBox& box,
    const PropagatorConfig& config = {});

// Repeats tighten_row over `rows` until nothing changes or the round cap is
// reached.
PropagationOutcome propagate_block_fixpoint(const MipModel& model,
                                            std::span<const RowId> rows,
                                            DomainBox& box,
                                            const PropagatorConfig& config = {});
PropagationOutcome propagate_block_fixpoint(std::span<const LinearRow> rows,
                                            DomainBox& box,
                                            const PropagatorConfig& config = {});

// Constructive disjunction: propagates each branch on a copy of the box,
// drops selector values of empty branches and intersects the box with the
// envelope of the surviving branch boxes.
PropagationOutcome propagate_disj_polyhedral(
    const DisjPolyhedralParams& params, DomainBox& box,
    const PropagatorConfig& config = {});

// AllDifferent, Cardinality, Channel, Cumulative, NValue and Stretch.
// Records of other families are left alone.
PropagationOutcome propagate_cp_family(const SemanticRecord& record,
                                       DomainBox& box,
                                       const PropagatorConfig& config = {});

// Dispatches on the record family; fills in prop_time.
PropagationOutcome propagate_record(const MipModel& model,
                                    const SemanticRecord& record,
                                    DomainBox& box,
                                    const PropagatorConfig& config = {});

// Round-robin over the enabled records (and the model rows when
// include_rows is set) until a full round changes nothing. `calls` counts
// record propagator invocations only.
PropagationOutcome run_fixpoint(const MipModel& model,
                                std::span<const SemanticRecord> records,
                                DomainBox& box,
                                const PropagatorConfig& config = {});

}  // namespace structprop

#endif  // STRUCTPROP_PROPAGATE_HPP_
