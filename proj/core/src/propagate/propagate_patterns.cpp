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

// Propagators for the multi-row patterns: the one-hot budget rule, the
// bottleneck max-min rule, block fixpoints and constructive disjunction.

#include <algorithm>
#include <cmath>
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

// True if z < radius is impossible: every group would have to pick a
// selector cheaper than the radius, each such selector needs its activator
// open, and groups with disjoint activator sets need distinct activators.
// The greedy packing never finds more groups than a maximum packing, so a
// positive answer is always sound.
bool covering_forces(const BottleneckExactOneParams& params,
                     const DomainBox& box, double radius) {
  std::set<VarId> open;
  for (VarId y : params.activators) {
    if (box.is_one(y)) open.insert(y);
  }
  std::vector<std::vector<VarId>> needs;
  for (const auto& group : params.groups) {
    std::vector<VarId> neighbours;
    bool free = false;
    for (const BottleneckOption& opt : group) {
      if (!box.can_be_one(opt.selector)) continue;
      if (opt.weight && *opt.weight >= radius) continue;
      if (!opt.activator || open.count(*opt.activator) != 0) {
        free = true;
        break;
      }
      if (box.can_be_one(*opt.activator)) neighbours.push_back(*opt.activator);
    }
    if (free) continue;
    if (neighbours.empty()) return true;
    std::sort(neighbours.begin(), neighbours.end());
    neighbours.erase(std::unique(neighbours.begin(), neighbours.end()),
                     neighbours.end());
    needs.push_back(std::move(neighbours));
  }
  std::stable_sort(needs.begin(), needs.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::set<VarId> used;
  int packed = 0;
  for (const auto& n : needs) {
    if (std::any_of(n.begin(), n.end(),
                    [&](VarId y) { return used.count(y) != 0; })) {
      continue;
    }
    used.insert(n.begin(), n.end());
    ++packed;
  }
  return static_cast<int>(open.size()) + packed > *params.open_count;
}

// Largest weight R above lb(z) for which covering_forces holds, by binary
// search over the distinct weights.
double radius_bound(const BottleneckExactOneParams& params,
                    const DomainBox& box) {
  std::vector<double> radii;
  for (const auto& group : params.groups) {
    for (const auto& opt : group) {
      if (opt.weight && *opt.weight > box.lower[params.bottleneck]) {
        radii.push_back(*opt.weight);
      }
    }
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  int lo = 0;
  int hi = static_cast<int>(radii.size()) - 1;
  int best = -1;
  while (lo <= hi) {
    const int mid = lo + (hi - lo) / 2;
    if (covering_forces(params, box, radii[mid])) {
      best = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return best < 0 ? -kInfinity : radii[best];
}

LinearRow as_row(const BranchRow& branch) {
  LinearRow row;
  row.terms = branch.terms;
  row.rhs = branch.rhs;
  return row;
}

}  // namespace

PropagationOutcome propagate_one_hot_resource(
    const OneHotResourceParams& params, DomainBox& box,
    const PropagatorConfig& config) {
  if (box.empty) return empty_box_outcome();
  PropagationOutcome out;
  std::vector<std::vector<VarId>> groups;
  for (const auto& group : params.groups) {
    std::vector<VarId> vars;
    for (const OneHotOption& opt : group) vars.push_back(opt.var);
    if (!all_binary(box, vars)) {
      finish(out);
      return out;
    }
    groups.push_back(std::move(vars));
  }
  BoundTightener bt(box, out, config.tolerances);
  const double tol = config.tolerances.feasibility;
  bool changed = true;
  for (int round = 0; changed && round < config.max_fixpoint_rounds; ++round) {
    changed = false;
    for (const auto& vars : groups) {
      changed = close_exact_one(vars, bt) || changed;
      if (bt.failed()) break;
    }
    if (bt.failed()) break;
    // Cheapest remaining option per group.
    std::vector<double> cheapest(params.groups.size(), kInfinity);
    double total = params.external_min;
    for (std::size_t g = 0; g < params.groups.size(); ++g) {
      for (const OneHotOption& opt : params.groups[g]) {
        if (box.can_be_one(opt.var)) {
          cheapest[g] = std::min(cheapest[g], opt.cost);
        }
      }
      total += cheapest[g];
    }
    if (total > params.budget + tol) {
      bt.fail();
      break;
    }
    for (std::size_t g = 0; g < params.groups.size(); ++g) {
      const double room = params.budget - (total - cheapest[g]);
      for (const OneHotOption& opt : params.groups[g]) {
        if (box.can_be_one(opt.var) && opt.cost > room + tol) {
          changed = bt.set_upper(opt.var, 0.0) || changed;
        }
      }
    }
    if (changed && round + 1 == config.max_fixpoint_rounds) {
      out.budget_exhausted = true;
    }
  }
  finish(out);
  return out;
}

PropagationOutcome propagate_bottleneck_exact_one(
    const BottleneckExactOneParams& params, DomainBox& box,
    const PropagatorConfig& config) {
  if (box.empty) return empty_box_outcome();
  PropagationOutcome out;
  const VarId z = params.bottleneck;
  std::vector<std::vector<VarId>> groups;
  std::vector<VarId> binaries = params.activators;
  for (const auto& group : params.groups) {
    std::vector<VarId> vars;
    for (const BottleneckOption& opt : group) {
      vars.push_back(opt.selector);
      if (opt.activator) binaries.push_back(*opt.activator);
    }
    binaries.insert(binaries.end(), vars.begin(), vars.end());
    groups.push_back(std::move(vars));
  }
  if (z < 0 || z >= box.size() || !all_binary(box, binaries)) {
    finish(out);
    return out;
  }
  BoundTightener bt(box, out, config.tolerances);
  const double tol = config.tolerances.feasibility;
  bool changed = true;
  for (int round = 0; changed && round < config.max_fixpoint_rounds; ++round) {
    changed = false;
    for (const auto& vars : groups) {
      changed = close_exact_one(vars, bt) || changed;
      if (bt.failed()) break;
    }
    if (bt.failed()) break;
    // lb(z) >= max over groups of the cheapest live weight. A live option
    // without a link row does not bound z.
    double lower = -kInfinity;
    for (const auto& group : params.groups) {
      double cheapest = kInfinity;
      for (const BottleneckOption& opt : group) {
        if (!box.can_be_one(opt.selector)) continue;
        cheapest = std::min(cheapest, opt.weight ? *opt.weight : -kInfinity);
      }
      lower = std::max(lower, cheapest);
    }
    if (std::isfinite(lower)) changed = bt.set_lower(z, lower) || changed;
    if (bt.failed()) break;
    for (const auto& group : params.groups) {
      for (const BottleneckOption& opt : group) {
        if (opt.weight && box.can_be_one(opt.selector) &&
            *opt.weight > box.upper[z] + tol) {
          changed = bt.set_upper(opt.selector, 0.0) || changed;
        }
      }
    }
    // x <= y in both directions of use.
    for (const auto& group : params.groups) {
      for (const BottleneckOption& opt : group) {
        if (!opt.activator) continue;
        if (box.is_one(opt.selector)) {
          changed = bt.set_lower(*opt.activator, 1.0) || changed;
        }
        if (!box.can_be_one(*opt.activator)) {
          changed = bt.set_upper(opt.selector, 0.0) || changed;
        }
      }
    }
    if (bt.failed()) break;
    if (params.open_count) {
      const double p = *params.open_count;
      changed = close_count(params.activators, p, p, bt) || changed;
      if (bt.failed()) break;
      if (config.bottleneck_radius_rule) {
        const double r = radius_bound(params, box);
        if (std::isfinite(r)) changed = bt.set_lower(z, r) || changed;
      }
    }
    if (bt.failed()) break;
    if (changed && round + 1 == config.max_fixpoint_rounds) {
      out.budget_exhausted = true;
    }
  }
  finish(out);
  return out;
}

PropagationOutcome propagate_block_fixpoint(std::span<const LinearRow> rows,
                                            DomainBox& box,
                                            const PropagatorConfig& config) {
  if (box.empty) return empty_box_outcome();
  PropagationOutcome out;
  bool changed = true;
  for (int round = 0; changed && round < config.max_fixpoint_rounds; ++round) {
    changed = false;
    for (const LinearRow& row : rows) {
      PropagationOutcome step = tighten_row(row, box, config.tolerances);
      changed = changed || step.changed();
      out.bound_changes.insert(out.bound_changes.end(),
                               step.bound_changes.begin(),
                               step.bound_changes.end());
      out.domain_reductions += step.domain_reductions;
      if (step.cutoff) {
        out.cutoff = true;
        break;
      }
    }
    if (out.cutoff) break;
    if (changed && round + 1 == config.max_fixpoint_rounds) {
      out.budget_exhausted = true;
    }
  }
  finish(out);
  return out;
}

PropagationOutcome propagate_block_fixpoint(const MipModel& model,
                                            std::span<const RowId> rows,
                                            DomainBox& box,
                                            const PropagatorConfig& config) {
  std::vector<LinearRow> block;
  block.reserve(rows.size());
  for (RowId r : rows) block.push_back(model.rows.at(r));
  return propagate_block_fixpoint(block, box, config);
}

PropagationOutcome propagate_disj_polyhedral(const DisjPolyhedralParams& params,
                                             DomainBox& box,
                                             const PropagatorConfig& config) {
  if (box.empty) return empty_box_outcome();
  PropagationOutcome out;
  const std::size_t count = params.branches.size();
  std::vector<VarId> selectors;
  for (const DisjBranch& b : params.branches) selectors.push_back(b.selector);
  if (count < 2 || count > 6 || !all_binary(box, selectors)) {
    finish(out);
    return out;
  }
  const bool modes = params.variant == DisjVariant::kExactOneMode;

  std::vector<DomainBox> local(count, box);
  std::vector<std::set<VarId>> vars_of(count);
  std::vector<bool> viable(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    const DisjBranch& branch = params.branches[i];
    PropagationOutcome scratch;
    BoundTightener lt(local[i], scratch, config.tolerances);
    if (modes) {
      for (std::size_t j = 0; j < count; ++j) {
        if (j != i) lt.set_upper(params.branches[j].selector, 0.0);
      }
      lt.set_lower(branch.selector, 1.0);
    } else {
      lt.fix(branch.selector, branch.selector_value);
    }
    if (!lt.failed()) {
      std::vector<LinearRow> rows;
      for (const BranchRow& row : branch.rows) {
        rows.push_back(as_row(row));
        for (const Term& t : row.terms) vars_of[i].insert(t.var);
      }
      propagate_block_fixpoint(rows, local[i], config);
    }
    viable[i] = !local[i].empty;
  }

  BoundTightener bt(box, out, config.tolerances);
  if (std::none_of(viable.begin(), viable.end(), [](bool v) { return v; })) {
    bt.fail();
    finish(out);
    return out;
  }
  for (std::size_t i = 0; i < count && !bt.failed(); ++i) {
    if (viable[i]) continue;
    const DisjBranch& branch = params.branches[i];
    if (modes) {
      bt.set_upper(branch.selector, 0.0);
    } else {
      bt.fix(branch.selector, 1 - branch.selector_value);
    }
  }
  // Envelope over the variables that every surviving branch constrains.
  for (VarId v : params.touched) {
    if (bt.failed()) break;
    double lower = kInfinity;
    double upper = -kInfinity;
    bool everywhere = true;
    for (std::size_t i = 0; i < count; ++i) {
      if (!viable[i]) continue;
      if (vars_of[i].count(v) == 0) {
        everywhere = false;
        break;
      }
      lower = std::min(lower, local[i].lower[v]);
      upper = std::max(upper, local[i].upper[v]);
    }
    if (!everywhere) continue;
    bt.set_lower(v, lower);
    bt.set_upper(v, upper);
  }
  finish(out);
  return out;
}

}  // namespace structprop
