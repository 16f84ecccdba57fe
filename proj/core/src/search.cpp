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

#include "structprop/search.hpp"

#include <cmath>
#include <stdexcept>

namespace structprop {
namespace {

constexpr double kBoundSlack = 1e-9;

// Next variable to branch on, or -1 when every integer variable is fixed.
VarId pick_branch_var(const MipModel& model, const DomainBox& box,
                      BranchRule rule) {
  VarId best = -1;
  double best_width = kInfinity;
  for (VarId v = 0; v < model.num_variables(); ++v) {
    if (!box.is_integral(v) || box.is_fixed(v)) continue;
    if (rule == BranchRule::kFirstUnfixed) return v;
    const double width = box.upper[v] - box.lower[v];
    if (width < best_width) {
      best = v;
      best_width = width;
    }
  }
  return best;
}

void accumulate(SearchStats& stats, const PropagationOutcome& out) {
  stats.handler_calls += out.calls;
  stats.domain_reductions += out.domain_reductions;
  stats.cutoffs += out.cutoffs;
}

}  // namespace

std::string_view search_status_name(SearchStatus status) {
  switch (status) {
    case SearchStatus::kOptimal:
      return "optimal";
    case SearchStatus::kFeasible:
      return "feasible";
    case SearchStatus::kInfeasible:
      return "infeasible";
    case SearchStatus::kLimit:
      return "limit";
  }
  return "limit";
}

SearchResult dfs_solve(const MipModel& model,
                       std::span<const SemanticRecord> records,
                       const SearchConfig& config) {
  model.validate();
  for (const Variable& var : model.variables) {
    if (var.is_integral() && (!std::isfinite(var.lower) || !std::isfinite(var.upper))) {
      throw std::invalid_argument("dfs_solve: integer variable " + var.name +
                                  " is unbounded");
    }
  }
  const auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (config.time_limit <= 0.0) return false;
    const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start;
    return spent.count() >= config.time_limit;
  };

  PropagatorConfig full = config.propagator;
  full.include_rows = true;

  SearchResult result;
  SearchStats& stats = result.stats;
  std::vector<DomainBox> stack;
  stack.push_back(DomainBox::from_model(model));
  bool stopped = false;
  while (!stack.empty()) {
    if ((config.node_limit > 0 && stats.nodes >= config.node_limit) || out_of_time()) {
      stopped = true;
      break;
    }
    DomainBox box = std::move(stack.back());
    stack.pop_back();
    const bool root = stats.nodes == 0;
    ++stats.nodes;

    const auto prop_start = std::chrono::steady_clock::now();
    PropagationOutcome out;
    if (root || config.propfreq == PropFrequency::kEveryNode) {
      out = run_fixpoint(model, records, box, full);
    } else {
      out = propagate_block_fixpoint(model.rows, box, config.propagator);
      out.calls = 0;
    }
    stats.prop_time += std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - prop_start);
    accumulate(stats, out);
    if (out.cutoff || box.empty) continue;

    const double bound =
        compute_activity(std::span<const Term>(model.objective), box).min_activity +
        model.objective_offset;
    if (result.objective && bound >= *result.objective - kBoundSlack) continue;

    const VarId var = pick_branch_var(model, box, config.branch_rule);
    if (var == -1) {
      result.objective = bound;
      result.solution = box.lower;
      continue;
    }
    // Children are pushed in reverse so the first listed is explored first.
    DomainBox left = box;
    DomainBox right = std::move(box);
    if (left.lower[var] == 0.0 && left.upper[var] == 1.0) {
      // Binaries: fix first, then exclude.
      left.lower[var] = 1.0;
      right.upper[var] = 0.0;
    } else {
      const double mid = std::floor((left.lower[var] + left.upper[var]) / 2.0);
      left.upper[var] = mid;
      right.lower[var] = mid + 1.0;
    }
    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }
  stats.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  if (stopped) {
    stats.status = result.objective ? SearchStatus::kFeasible : SearchStatus::kLimit;
  } else {
    stats.status = result.objective ? SearchStatus::kOptimal : SearchStatus::kInfeasible;
  }
  return result;
}

}  // namespace structprop
