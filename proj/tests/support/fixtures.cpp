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

#include "fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "structprop/record_json.hpp"

namespace structprop::testing {

WorkedExample one_hot_example(double budget) {
  WorkedExample ex;
  MipModel& m = ex.model;
  for (int i = 1; i <= 4; ++i) m.add_variable("y" + std::to_string(i), 0, 1, Integrality::kBinary);
  m.add_row("g1", {{0, 1}, {1, 1}}, 1, 1);
  m.add_row("g2", {{2, 1}, {3, 1}}, 1, 1);
  m.add_row("cap", {{0, 3}, {1, 5}, {2, 4}, {3, 7}}, -kInfinity, budget);
  OneHotResourceParams p;
  p.groups = {{{0, 3}, {1, 5}}, {{2, 4}, {3, 7}}};
  p.budget = budget;
  ex.record = make_record(p, {0, 1, 2});
  return ex;
}

WorkedExample bottleneck_example(double z_upper) {
  WorkedExample ex;
  MipModel& m = ex.model;
  for (int i = 1; i <= 4; ++i) m.add_variable("x" + std::to_string(i), 0, 1, Integrality::kBinary);
  m.add_variable("z", 0, z_upper);
  m.add_row("g1", {{0, 1}, {1, 1}}, 1, 1);
  m.add_row("g2", {{2, 1}, {3, 1}}, 1, 1);
  const double weights[] = {2, 5, 3, 6};
  for (VarId v = 0; v < 4; ++v) {
    m.add_row("link" + std::to_string(v + 1), {{v, weights[v]}, {4, -1}}, -kInfinity, 0);
  }
  BottleneckExactOneParams p;
  p.bottleneck = 4;
  p.groups = {{{0, 2.0, {}}, {1, 5.0, {}}}, {{2, 3.0, {}}, {3, 6.0, {}}}};
  ex.record = make_record(p, {0, 1, 2, 3, 4, 5});
  return ex;
}

WorkedExample disj_example() {
  WorkedExample ex;
  MipModel& m = ex.model;
  m.add_variable("x", 0, 10, Integrality::kInteger);
  m.add_variable("y", 0, 1, Integrality::kBinary);
  // y = 0: x <= 2, relaxed by M = 8 when y = 1.
  m.add_row("off", {{0, 1}, {1, -8}}, -kInfinity, 2);
  // y = 1: x <= 7 and -x <= -5, relaxed by M = 3 and M = 5 when y = 0.
  m.add_row("on_ub", {{0, 1}, {1, 3}}, -kInfinity, 10);
  m.add_row("on_lb", {{0, -1}, {1, 5}}, -kInfinity, 0);
  DisjPolyhedralParams p;
  p.variant = DisjVariant::kBinarySelector;
  p.branches = {DisjBranch{1, 0, {BranchRow{0, {{0, 1}}, 2}}},
                DisjBranch{1, 1, {BranchRow{1, {{0, 1}}, 7}, BranchRow{2, {{0, -1}}, -5}}}};
  p.touched = {0};
  ex.record = make_record(p, {0, 1, 2});
  return ex;
}

WorkedExample assignment_example(int t) {
  WorkedExample ex;
  MipModel& m = ex.model;
  AllDifferentParams p;
  p.values_exact = true;
  p.cells.assign(t, std::vector<VarId>(t));
  for (int i = 0; i < t; ++i) {
    for (int v = 0; v < t; ++v) {
      p.cells[i][v] = m.add_variable("a" + std::to_string(i + 1) + "_" + std::to_string(v + 1),
                                     0, 1, Integrality::kBinary);
    }
  }
  std::vector<RowId> evidence;
  for (int i = 0; i < t; ++i) {
    std::vector<Term> terms;
    for (int v = 0; v < t; ++v) terms.push_back({p.cells[i][v], 1});
    evidence.push_back(m.add_row("item" + std::to_string(i + 1), terms, 1, 1));
  }
  for (int v = 0; v < t; ++v) {
    std::vector<Term> terms;
    for (int i = 0; i < t; ++i) terms.push_back({p.cells[i][v], 1});
    evidence.push_back(m.add_row("value" + std::to_string(v + 1), terms, 1, 1));
  }
  ex.record = make_record(p, evidence);
  return ex;
}

Transformed permute_and_negate(const MipModel& model, std::uint64_t seed, bool negate) {
  std::mt19937_64 rng(seed);
  Transformed out;
  out.var_map.resize(model.num_variables());
  std::iota(out.var_map.begin(), out.var_map.end(), 0);
  std::shuffle(out.var_map.begin(), out.var_map.end(), rng);
  out.row_map.resize(model.num_rows());
  std::iota(out.row_map.begin(), out.row_map.end(), 0);
  std::shuffle(out.row_map.begin(), out.row_map.end(), rng);

  MipModel& m = out.model;
  m.name = model.name;
  m.sense = model.sense;
  m.objective_name = model.objective_name;
  m.objective_offset = model.objective_offset;
  m.variables.resize(model.variables.size());
  for (VarId v = 0; v < model.num_variables(); ++v) m.variables[out.var_map[v]] = model.variables[v];
  m.rows.resize(model.rows.size());
  for (RowId r = 0; r < model.num_rows(); ++r) {
    LinearRow row = negate ? negated(model.rows[r]) : model.rows[r];
    for (Term& t : row.terms) t.var = out.var_map[t.var];
    std::sort(row.terms.begin(), row.terms.end(),
              [](const Term& a, const Term& b) { return a.var < b.var; });
    m.rows[out.row_map[r]] = std::move(row);
  }
  m.objective = model.objective;
  for (Term& t : m.objective) t.var = out.var_map[t.var];
  std::sort(m.objective.begin(), m.objective.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  return out;
}

bool same_records(std::span<const SemanticRecord> a, std::span<const SemanticRecord> b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const SemanticRecord& rec : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j) {
      if (!used[j] && b[j] == rec) found = used[j] = true;
    }
    if (!found) return false;
  }
  return true;
}

std::string describe(const SemanticRecord& record, const MipModel& model) {
  return record_to_json(record, model).dump();
}

}  // namespace structprop::testing
