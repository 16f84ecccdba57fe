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

// Helpers shared by the propagators.

#ifndef STRUCTPROP_PROPAGATE_COMMON_HPP_
#define STRUCTPROP_PROPAGATE_COMMON_HPP_

#include <span>

#include "structprop/domain.hpp"

namespace structprop::detail {

// True if every variable is an integer with bounds inside [0, 1].
inline bool all_binary(const DomainBox& box, std::span<const VarId> vars) {
  for (VarId v : vars) {
    if (v < 0 || v >= box.size() || !box.is_integral(v) ||
        box.lower[v] < 0.0 || box.upper[v] > 1.0) {
      return false;
    }
  }
  return true;
}

// Outcome of a call that starts on an empty box.
inline PropagationOutcome empty_box_outcome() {
  PropagationOutcome out;
  out.calls = 1;
  out.cutoff = true;
  out.cutoffs = 1;
  return out;
}

inline void finish(PropagationOutcome& out) {
  out.calls = 1;
  out.cutoffs = out.cutoff ? 1 : 0;
}

// Exact-one closure on one group of binaries: a fixed one clears the rest,
// a single live option is fixed to one, no live option is a cutoff. Returns
// true if a bound moved.
inline bool close_exact_one(std::span<const VarId> vars, BoundTightener& bt) {
  const DomainBox& box = bt.box();
  int ones = 0;
  int live = 0;
  VarId last_live = -1;
  for (VarId v : vars) {
    if (box.is_one(v)) ++ones;
    if (box.can_be_one(v)) {
      ++live;
      last_live = v;
    }
  }
  if (ones > 1 || live == 0) {
    bt.fail();
    return false;
  }
  bool changed = false;
  if (ones == 1) {
    for (VarId v : vars) {
      if (!box.is_one(v)) changed = bt.set_upper(v, 0.0) || changed;
    }
  } else if (live == 1) {
    changed = bt.set_lower(last_live, 1.0);
  }
  return changed;
}

// lower <= sum(vars) <= upper over binaries.
inline bool close_count(std::span<const VarId> vars, double lower, double upper,
                 BoundTightener& bt) {
  const DomainBox& box = bt.box();
  int ones = 0;
  int live = 0;
  for (VarId v : vars) {
    if (box.is_one(v)) ++ones;
    if (box.can_be_one(v)) ++live;
  }
  if (ones > upper + 0.5 || live < lower - 0.5) {
    bt.fail();
    return false;
  }
  bool changed = false;
  if (ones >= upper - 0.5) {
    for (VarId v : vars) {
      if (!box.is_one(v)) changed = bt.set_upper(v, 0.0) || changed;
    }
  } else if (live <= lower + 0.5) {
    for (VarId v : vars) {
      if (box.can_be_one(v)) changed = bt.set_lower(v, 1.0) || changed;
    }
  }
  return changed;
}

}  // namespace structprop::detail

#endif  // STRUCTPROP_PROPAGATE_COMMON_HPP_
