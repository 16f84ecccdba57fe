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

#ifndef STRUCTPROP_DOMAIN_HPP_
#define STRUCTPROP_DOMAIN_HPP_

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "structprop/model.hpp"

namespace structprop {

// Per-variable bounds. Propagation only ever shrinks a box; once a bound
// pair crosses the box is flagged empty and its bounds are left as they were.
struct DomainBox {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::uint8_t> integral;
  bool empty = false;

  static DomainBox from_model(const MipModel& model);

  int size() const { return static_cast<int>(lower.size()); }
  bool is_fixed(VarId var) const { return lower[var] == upper[var]; }
  bool is_integral(VarId var) const { return integral[var] != 0; }
  // ub > 0 on a binary: the value 1 is still available.
  bool can_be_one(VarId var) const { return upper[var] > 0.5; }
  bool is_one(VarId var) const { return lower[var] > 0.5; }

  friend bool operator==(const DomainBox&, const DomainBox&) = default;
};

struct RowActivity {
  double min_activity = 0.0;
  double max_activity = 0.0;
};

RowActivity compute_activity(const LinearRow& row, const DomainBox& box);
RowActivity compute_activity(std::span<const Term> terms,
                             const DomainBox& box);

// True if the row can never be violated under `box`.
bool is_redundant(const LinearRow& row, const DomainBox& box,
                  double tolerance = 1e-6);

enum class BoundSide : std::uint8_t { kLower, kUpper };

struct BoundChange {
  VarId var = 0;
  BoundSide side = BoundSide::kLower;
  double old_value = 0.0;
  double new_value = 0.0;

  friend bool operator==(const BoundChange&, const BoundChange&) = default;
};

struct PropagationOutcome {
  std::vector<BoundChange> bound_changes;
  bool cutoff = false;
  std::int64_t calls = 0;
  std::int64_t domain_reductions = 0;
  std::int64_t cutoffs = 0;
  std::chrono::nanoseconds prop_time{0};
  // Set when a fixpoint loop stopped on its round budget.
  bool budget_exhausted = false;

  bool changed() const { return !bound_changes.empty(); }
  void merge(const PropagationOutcome& other);
};

// Applies bound updates to a box and records them in an outcome. Integer
// variables are rounded inward with the integrality tolerance; updates that
// do not improve by more than the feasibility tolerance are dropped.
class BoundTightener {
 public:
  BoundTightener(DomainBox& box, PropagationOutcome& outcome,
                 const Tolerances& tol = {});

  bool set_upper(VarId var, double value);
  bool set_lower(VarId var, double value);
  bool fix(VarId var, double value);
  // Marks the box empty and flags a cutoff.
  void fail();

  bool failed() const { return box_.empty; }
  const DomainBox& box() const { return box_; }
  const Tolerances& tolerances() const { return tol_; }

 private:
  DomainBox& box_;
  PropagationOutcome& outcome_;
  Tolerances tol_;
};

// Residual-activity bound tightening on one row.
PropagationOutcome tighten_row(const LinearRow& row, DomainBox& box,
                               const Tolerances& tol = {});

// True iff reduced is contained in original and every feasible point lies in
// reduced. Points are full assignments when `scope` is empty, otherwise
// point[k] is the value of scope[k]. Throws std::invalid_argument on a
// dimension mismatch.
bool is_valid_reduction(const DomainBox& original, const DomainBox& reduced,
                        std::span<const std::vector<double>> feasible_points,
                        std::span<const VarId> scope = {},
                        double tolerance = 1e-6);

}  // namespace structprop

#endif  // STRUCTPROP_DOMAIN_HPP_
