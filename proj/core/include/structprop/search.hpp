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

// A small depth-first branch-and-bound used to measure what record
// propagation buys during search.
//
// Every node tightens the model rows; the root (and, with kEveryNode, every
// node) additionally runs the record propagators to a common fixpoint.
// There is no LP: a node whose integer variables are all fixed is accepted
// when row propagation over the continuous variables finds no conflict, and
// its objective is the smallest value over the remaining box.

#ifndef STRUCTPROP_SEARCH_HPP_
#define STRUCTPROP_SEARCH_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "structprop/domain.hpp"
#include "structprop/model.hpp"
#include "structprop/propagate.hpp"
#include "structprop/record.hpp"

namespace structprop {

enum class PropFrequency : std::uint8_t { kRootOnly, kEveryNode };
enum class BranchRule : std::uint8_t { kFirstUnfixed, kMostConstrained };
enum class SearchStatus : std::uint8_t { kOptimal, kFeasible, kInfeasible, kLimit };

std::string_view search_status_name(SearchStatus status);

struct SearchConfig {
  PropFrequency propfreq = PropFrequency::kEveryNode;
  // 0 means unlimited.
  std::int64_t node_limit = 0;
  // Seconds; 0 means unlimited.
  double time_limit = 0.0;
  BranchRule branch_rule = BranchRule::kFirstUnfixed;
  PropagatorConfig propagator;
};

struct SearchStats {
  std::int64_t nodes = 0;
  std::int64_t handler_calls = 0;
  std::int64_t domain_reductions = 0;
  std::int64_t cutoffs = 0;
  std::chrono::nanoseconds prop_time{0};
  std::chrono::nanoseconds wall_time{0};
  SearchStatus status = SearchStatus::kLimit;
};

struct SearchResult {
  SearchStats stats;
  // Set for kOptimal and kFeasible; in minimization form.
  std::optional<double> objective;
  // Integer variables at their fixed values, continuous ones at the lower
  // bound of the final box.
  std::vector<double> solution;
};

// Throws std::invalid_argument if the model fails validation or an integer
// variable is unbounded.
SearchResult dfs_solve(const MipModel& model,
                       std::span<const SemanticRecord> records,
                       const SearchConfig& config = {});

}  // namespace structprop

#endif  // STRUCTPROP_SEARCH_HPP_
