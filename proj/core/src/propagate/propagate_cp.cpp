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

// Lightweight filtering for the classic CP families. None of these aim at
// full arc consistency except Stretch, whose chain is small enough for an
// exact forward-backward pass.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "propagate/common.hpp"
#include "structprop/propagate.hpp"

namespace structprop {
namespace {

using detail::all_binary;
using detail::close_count;
using detail::close_exact_one;
using detail::empty_box_outcome;
using detail::finish;

// Kuhn's augmenting path step for `item` over live cells.
bool augment(const AllDifferentParams& params, const DomainBox& box, int item,
             std::vector<bool>& seen, std::vector<int>& owner) {
  for (std::size_t v = 0; v < owner.size(); ++v) {
    if (seen[v] || !box.can_be_one(params.cells[item][v])) continue;
    seen[v] = true;
    if (owner[v] == -1 || augment(params, box, owner[v], seen, owner)) {
      owner[v] = item;
      return true;
    }
  }
  return false;
}

// Size of a maximum matching of items to values over live cells.
int max_matching(const AllDifferentParams& params, const DomainBox& box) {
  const std::size_t values =
      params.cells.empty() ? 0 : params.cells.front().size();
  std::vector<int> owner(values, -1);
  int size = 0;
  for (std::size_t i = 0; i < params.cells.size(); ++i) {
    std::vector<bool> seen(values, false);
    if (augment(params, box, static_cast<int>(i), seen, owner)) ++size;
  }
  return size;
}

PropagationOutcome propagate_all_different(const AllDifferentParams& params,
                                           DomainBox& box,
                                           const PropagatorConfig& config) {
  PropagationOutcome out;
  std::vector<VarId> vars;
  for (const auto& row : params.cells) vars.insert(vars.end(), row.begin(), row.end());
  if (params.cells.empty() || !all_binary(box, vars)) {
    finish(out);
    return out;
  }
  const std::size_t values = params.cells.front().size();
  BoundTightener bt(box, out, config.tolerances);
  bool changed = true;
  for (int round = 0; changed && round < config.max_fixpoint_rounds; ++round) {
    changed = false;
    for (const auto& row : params.cells) {
      changed = close_exact_one(row, bt) || changed;
      if (bt.failed()) break;
    }
    for (std::size_t v = 0; v < values && !bt.failed(); ++v) {
      std::vector<VarId> column;
      for (const auto& row : params.cells) column.push_back(row[v]);
      if (params.values_exact) {
        changed = close_exact_one(column, bt) || changed;
      } else {
        changed = close_count(column, 0.0, 1.0, bt) || changed;
      }
    }
    if (bt.failed()) break;
    // Hall condition over all items at once.
    if (max_matching(params, box) < static_cast<int>(params.cells.size())) {
      bt.fail();
      break;
    }
  }
  finish(out);
  return out;
}

PropagationOutcome propagate_cardinality(const CardinalityParams& params,
                                         DomainBox& box,
                                         const PropagatorConfig& config) {
  PropagationOutcome out;
  if (!all_binary(box, params.vars)) {
    finish(out);
    return out;
  }
  BoundTightener bt(box, out, config.tolerances);
  close_count(params.vars, params.lower, params.upper, bt);
  finish(out);
  return out;
}

PropagationOutcome propagate_channel(const ChannelParams& params,
                                     DomainBox& box,
                                     const PropagatorConfig& config) {
  PropagationOutcome out;
  for (const ChannelLink& link : params.links) {
    std::vector<VarId> ys;
    for (const auto& ind : link.indicators) ys.push_back(ind.var);
    if (!all_binary(box, ys) || link.var < 0 || link.var >= box.size()) {
      finish(out);
      return out;
    }
  }
  BoundTightener bt(box, out, config.tolerances);
  const double tol = config.tolerances.feasibility;
  bool changed = true;
  for (int round = 0; changed && round < config.max_fixpoint_rounds; ++round) {
    changed = false;
    for (const ChannelLink& link : params.links) {
      std::vector<VarId> ys;
      for (const auto& ind : link.indicators) ys.push_back(ind.var);
      changed = close_exact_one(ys, bt) || changed;
      if (bt.failed()) break;
      // Indicators of values outside x's range.
      for (const auto& ind : link.indicators) {
        if (box.can_be_one(ind.var) &&
            (ind.value < box.lower[link.var] - tol ||
             ind.value > box.upper[link.var] + tol)) {
          changed = bt.set_upper(ind.var, 0.0) || changed;
        }
      }
      changed = close_exact_one(ys, bt) || changed;
      if (bt.failed()) break;
      // x's range from the live values.
      double lo = kInfinity;
      double hi = -kInfinity;
      for (const auto& ind : link.indicators) {
        if (!box.can_be_one(ind.var)) continue;
        lo = std::min(lo, ind.value);
        hi = std::max(hi, ind.value);
      }
      changed = bt.set_lower(link.var, lo) || changed;
      changed = bt.set_upper(link.var, hi) || changed;
      if (bt.failed()) break;
    }
    if (bt.failed()) break;
  }
  finish(out);
  return out;
}

PropagationOutcome propagate_cumulative(const CumulativeParams& params,
                                        DomainBox& box,
                                        const PropagatorConfig& config) {
  PropagationOutcome out;
  std::vector<VarId> starts;
  for (const auto& task : params.tasks) {
    for (const auto& s : task.starts) starts.push_back(s.var);
  }
  if (!all_binary(box, starts)) {
    finish(out);
    return out;
  }
  std::map<RowId, double> capacity;
  for (const auto& cap : params.capacities) capacity[cap.row] = cap.capacity;
  BoundTightener bt(box, out, config.tolerances);
  const double tol = config.tolerances.feasibility;
  bool changed = true;
  for (int round = 0; changed && round < config.max_fixpoint_rounds; ++round) {
    changed = false;
    for (const auto& task : params.tasks) {
      std::vector<VarId> vars;
      for (const auto& s : task.starts) vars.push_back(s.var);
      changed = close_exact_one(vars, bt) || changed;
      if (bt.failed()) break;
    }
    if (bt.failed()) break;
    // Compulsory part of a task: periods covered by every live start.
    std::vector<std::set<RowId>> compulsory(params.tasks.size());
    std::map<RowId, double> load;
    for (std::size_t k = 0; k < params.tasks.size(); ++k) {
      bool first = true;
      for (const auto& s : params.tasks[k].starts) {
        if (!box.can_be_one(s.var)) continue;
        std::set<RowId> periods(s.periods.begin(), s.periods.end());
        if (first) {
          compulsory[k] = std::move(periods);
          first = false;
        } else {
          std::set<RowId> both;
          std::set_intersection(compulsory[k].begin(), compulsory[k].end(),
                                periods.begin(), periods.end(),
                                std::inserter(both, both.begin()));
          compulsory[k] = std::move(both);
        }
      }
      for (RowId r : compulsory[k]) load[r] += params.tasks[k].demand;
    }
    for (const auto& [row, used] : load) {
      const auto it = capacity.find(row);
      if (it != capacity.end() && used > it->second + tol) bt.fail();
    }
    if (bt.failed()) break;
    // Placements that overload a period given everyone else's compulsory
    // part.
    for (std::size_t k = 0; k < params.tasks.size(); ++k) {
      const auto& task = params.tasks[k];
      for (const auto& s : task.starts) {
        if (!box.can_be_one(s.var) || box.is_one(s.var)) continue;
        for (RowId r : s.periods) {
          const auto it = capacity.find(r);
          if (it == capacity.end()) continue;
          double others = load[r];
          if (compulsory[k].count(r) != 0) others -= task.demand;
          if (others + task.demand > it->second + tol) {
            changed = bt.set_upper(s.var, 0.0) || changed;
            break;
          }
        }
      }
    }
    if (bt.failed()) break;
  }
  finish(out);
  return out;
}

PropagationOutcome propagate_nvalue(const NValueParams& params, DomainBox& box,
                                    const PropagatorConfig& config) {
  PropagationOutcome out;
  std::vector<VarId> binaries;
  for (const auto& item : params.items) {
    binaries.insert(binaries.end(), item.begin(), item.end());
  }
  for (const auto& value : params.values) {
    binaries.push_back(value.indicator);
    binaries.insert(binaries.end(), value.uses.begin(), value.uses.end());
  }
  const VarId n = params.count;
  if (!all_binary(box, binaries) || n < 0 || n >= box.size()) {
    finish(out);
    return out;
  }
  BoundTightener bt(box, out, config.tolerances);
  bool changed = true;
  for (int round = 0; changed && round < config.max_fixpoint_rounds; ++round) {
    changed = false;
    for (const auto& item : params.items) {
      changed = close_exact_one(item, bt) || changed;
      if (bt.failed()) break;
    }
    if (bt.failed()) break;
    for (const auto& value : params.values) {
      bool any_use = false;
      for (VarId y : value.uses) {
        if (box.is_one(y)) {
          changed = bt.set_lower(value.indicator, 1.0) || changed;
        }
        if (!box.can_be_one(value.indicator)) {
          changed = bt.set_upper(y, 0.0) || changed;
        }
        any_use = any_use || box.can_be_one(y);
      }
      if (params.upper_links && !any_use) {
        changed = bt.set_upper(value.indicator, 0.0) || changed;
      }
    }
    if (bt.failed()) break;
    std::vector<VarId> indicators;
    for (const auto& value : params.values) indicators.push_back(value.indicator);
    int forced = 0;
    int live = 0;
    for (VarId z : indicators) {
      if (box.is_one(z)) ++forced;
      if (box.can_be_one(z)) ++live;
    }
    changed = bt.set_lower(n, forced) || changed;
    changed = bt.set_upper(n, live) || changed;
    if (bt.failed()) break;
    // sum(z) = N.
    changed = close_count(indicators, box.lower[n], box.upper[n], bt) || changed;
    if (bt.failed()) break;
  }
  finish(out);
  return out;
}

// Exact filtering of the run-length chain by a forward-backward pass over
// (period, current run length).
PropagationOutcome propagate_stretch(const StretchParams& params,
                                     DomainBox& box,
                                     const PropagatorConfig& config) {
  PropagationOutcome out;
  const int horizon = static_cast<int>(params.states.size());
  if (horizon == 0 || params.starts.size() != params.states.size() ||
      !all_binary(box, params.states) || !all_binary(box, params.starts)) {
    finish(out);
    return out;
  }
  const int min_run = std::max(params.min_run, 1);
  const int max_run = params.max_run;
  // Run lengths beyond min_run are only told apart when a maximum exists.
  const int cap = max_run > 0 ? std::max(max_run, min_run) : min_run;
  const int width = cap + 1;

  auto allows = [&](VarId var, int value) {
    return box.lower[var] <= value && value <= box.upper[var];
  };
  // Successor run length for state `b` after run length `r`, or -1.
  auto step = [&](int t, int r, int b) {
    if (!allows(params.states[t], b)) return -1;
    if (b == 0) {
      if (r != 0 && r < min_run) return -1;
      return allows(params.starts[t], 0) ? 0 : -1;
    }
    if (r == 0) {
      return allows(params.starts[t], 1) ? 1 : -1;
    }
    if (!allows(params.starts[t], 0)) return -1;
    if (max_run > 0) return r + 1 <= max_run ? r + 1 : -1;
    return std::min(r + 1, min_run);
  };

  std::vector<std::vector<char>> fwd(horizon + 1, std::vector<char>(width, 0));
  std::vector<std::vector<char>> bwd(horizon + 1, std::vector<char>(width, 0));
  fwd[0][0] = 1;
  for (int t = 0; t < horizon; ++t) {
    for (int r = 0; r < width; ++r) {
      if (!fwd[t][r]) continue;
      for (int b = 0; b < 2; ++b) {
        const int next = step(t, r, b);
        if (next >= 0) fwd[t + 1][next] = 1;
      }
    }
  }
  // Runs cut by the horizon need not reach the minimum length.
  std::fill(bwd[horizon].begin(), bwd[horizon].end(), 1);
  for (int t = horizon - 1; t >= 0; --t) {
    for (int r = 0; r < width; ++r) {
      for (int b = 0; b < 2; ++b) {
        const int next = step(t, r, b);
        if (next >= 0 && bwd[t + 1][next]) bwd[t][r] = 1;
      }
    }
  }
  BoundTightener bt(box, out, config.tolerances);
  if (!bwd[0][0]) {
    bt.fail();
    finish(out);
    return out;
  }
  // Supported (state, start) values per period.
  std::vector<std::array<bool, 2>> state_ok(horizon, {false, false});
  std::vector<std::array<bool, 2>> start_ok(horizon, {false, false});
  for (int t = 0; t < horizon; ++t) {
    for (int r = 0; r < width; ++r) {
      if (!fwd[t][r]) continue;
      for (int b = 0; b < 2; ++b) {
        const int next = step(t, r, b);
        if (next < 0 || !bwd[t + 1][next]) continue;
        state_ok[t][b] = true;
        start_ok[t][b == 1 && r == 0 ? 1 : 0] = true;
      }
    }
  }
  for (int t = 0; t < horizon && !bt.failed(); ++t) {
    if (!state_ok[t][1]) bt.set_upper(params.states[t], 0.0);
    if (!state_ok[t][0]) bt.set_lower(params.states[t], 1.0);
    if (!start_ok[t][1]) bt.set_upper(params.starts[t], 0.0);
    if (!start_ok[t][0]) bt.set_lower(params.starts[t], 1.0);
  }
  finish(out);
  return out;
}

}  // namespace

PropagationOutcome propagate_cp_family(const SemanticRecord& record,
                                       DomainBox& box,
                                       const PropagatorConfig& config) {
  if (box.empty) return empty_box_outcome();
  switch (record.family) {
    case Family::kAllDifferent:
      return propagate_all_different(
          std::get<AllDifferentParams>(record.params), box, config);
    case Family::kCardinality:
      return propagate_cardinality(std::get<CardinalityParams>(record.params),
                                   box, config);
    case Family::kChannel:
      return propagate_channel(std::get<ChannelParams>(record.params), box,
                               config);
    case Family::kCumulative:
      return propagate_cumulative(std::get<CumulativeParams>(record.params),
                                  box, config);
    case Family::kNValue:
      return propagate_nvalue(std::get<NValueParams>(record.params), box,
                              config);
    case Family::kStretch:
      return propagate_stretch(std::get<StretchParams>(record.params), box,
                               config);
    default:
      break;
  }
  PropagationOutcome out;
  finish(out);
  return out;
}

}  // namespace structprop
