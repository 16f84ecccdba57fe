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

#include <chrono>

#include "propagate/common.hpp"
#include "structprop/propagate.hpp"

namespace structprop {
namespace {

std::vector<RowId> role_rows(const std::vector<RoleRow>& rows) {
  std::vector<RowId> out;
  out.reserve(rows.size());
  for (const RoleRow& r : rows) out.push_back(r.row);
  return out;
}

bool rows_exist(const MipModel& model, const std::vector<RowId>& rows) {
  for (RowId r : rows) {
    if (r < 0 || r >= model.num_rows()) return false;
  }
  return true;
}

PropagationOutcome dispatch(const MipModel& model, const SemanticRecord& record,
                            DomainBox& box, const PropagatorConfig& config) {
  switch (record.family) {
    case Family::kOneHotResource:
      return propagate_one_hot_resource(
          std::get<OneHotResourceParams>(record.params), box, config);
    case Family::kBottleneckExactOne:
      return propagate_bottleneck_exact_one(
          std::get<BottleneckExactOneParams>(record.params), box, config);
    case Family::kRosteringWindow:
    case Family::kUnitCommitmentRamp: {
      const std::vector<RowId> rows =
          record.family == Family::kRosteringWindow
              ? role_rows(std::get<RosteringWindowParams>(record.params).block)
              : role_rows(std::get<UnitCommitmentRampParams>(record.params).rows);
      if (!rows_exist(model, rows)) {
        PropagationOutcome out;
        detail::finish(out);
        return out;
      }
      return propagate_block_fixpoint(model, rows, box, config);
    }
    case Family::kDisjPolyhedral:
      return propagate_disj_polyhedral(
          std::get<DisjPolyhedralParams>(record.params), box, config);
    default:
      return propagate_cp_family(record, box, config);
  }
}

}  // namespace

PropagationOutcome propagate_record(const MipModel& model,
                                    const SemanticRecord& record,
                                    DomainBox& box,
                                    const PropagatorConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  PropagationOutcome out = dispatch(model, record, box, config);
  out.prop_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return out;
}

PropagationOutcome run_fixpoint(const MipModel& model,
                                std::span<const SemanticRecord> records,
                                DomainBox& box,
                                const PropagatorConfig& config) {
  PropagationOutcome total;
  if (box.empty) {
    total.cutoff = true;
    total.cutoffs = 1;
    return total;
  }
  const int rounds = std::max(config.max_fixpoint_rounds, 1);
  bool changed = true;
  for (int round = 0; changed && round < rounds; ++round) {
    changed = false;
    for (const SemanticRecord& record : records) {
      if (!config.enabled(record.family)) continue;
      PropagationOutcome step = propagate_record(model, record, box, config);
      changed = changed || step.changed();
      total.merge(step);
      if (total.cutoff) return total;
    }
    if (config.include_rows) {
      for (const LinearRow& row : model.rows) {
        PropagationOutcome step = tighten_row(row, box, config.tolerances);
        changed = changed || step.changed();
        // Row reasoning is not a handler call.
        step.calls = 0;
        total.merge(step);
        if (total.cutoff) return total;
      }
    }
    if (changed && round + 1 == rounds) total.budget_exhausted = true;
  }
  return total;
}

}  // namespace structprop
