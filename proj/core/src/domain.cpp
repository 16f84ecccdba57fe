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

#include "structprop/domain.hpp"

#include <cmath>
#include <stdexcept>

namespace structprop {
namespace {

// Bounds beyond this magnitude are not derived; they carry no information
// and invite overflow.
constexpr double kHugeBound = 1e15;

// Activity split into a finite part and a count of infinite contributions,
// so that residual activities never evaluate inf - inf.
struct ActivityParts {
  double finite_min = 0.0;
  double finite_max = 0.0;
  int inf_min = 0;
  int inf_max = 0;
};

double min_contribution(const Term& t, const DomainBox& box) {
  return t.coef > 0 ? t.coef * box.lower[t.var] : t.coef * box.upper[t.var];
}

double max_contribution(const Term& t, const DomainBox& box) {
  return t.coef > 0 ? t.coef * box.upper[t.var] : t.coef * box.lower[t.var];
}

ActivityParts activity_parts(std::span<const Term> terms,
                             const DomainBox& box) {
  ActivityParts parts;
  for (const Term& t : terms) {
    const double lo = min_contribution(t, box);
    const double hi = max_contribution(t, box);
    if (std::isinf(lo)) {
      ++parts.inf_min;
    } else {
      parts.finite_min += lo;
    }
    if (std::isinf(hi)) {
      ++parts.inf_max;
    } else {
      parts.finite_max += hi;
    }
  }
  return parts;
}

double residual(double finite_sum, int inf_count, double own, double inf) {
  if (inf_count == 0) return finite_sum - own;
  if (inf_count == 1 && std::isinf(own)) return finite_sum;
  return inf;
}

}  // namespace

DomainBox DomainBox::from_model(const MipModel& model) {
  DomainBox box;
  const int n = model.num_variables();
  box.lower.resize(n);
  box.upper.resize(n);
  box.integral.resize(n);
  for (int j = 0; j < n; ++j) {
    const Variable& v = model.variables[j];
    box.lower[j] = v.lower;
    box.upper[j] = v.upper;
    box.integral[j] = v.is_integral() ? 1 : 0;
    if (v.lower > v.upper) box.empty = true;
  }
  return box;
}

RowActivity compute_activity(std::span<const Term> terms,
                             const DomainBox& box) {
  const ActivityParts parts = activity_parts(terms, box);
  RowActivity act;
  act.min_activity = parts.inf_min > 0 ? -kInfinity : parts.finite_min;
  act.max_activity = parts.inf_max > 0 ? kInfinity : parts.finite_max;
  return act;
}

RowActivity compute_activity(const LinearRow& row, const DomainBox& box) {
  return compute_activity(row.terms, box);
}

bool is_redundant(const LinearRow& row, const DomainBox& box,
                  double tolerance) {
  const RowActivity act = compute_activity(row, box);
  return act.min_activity >= row.lhs - tolerance &&
         act.max_activity <= row.rhs + tolerance;
}

void PropagationOutcome::merge(const PropagationOutcome& other) {
  bound_changes.insert(bound_changes.end(), other.bound_changes.begin(),
                       other.bound_changes.end());
  cutoff = cutoff || other.cutoff;
  calls += other.calls;
  domain_reductions += other.domain_reductions;
  cutoffs += other.cutoffs;
  prop_time += other.prop_time;
  budget_exhausted = budget_exhausted || other.budget_exhausted;
}

BoundTightener::BoundTightener(DomainBox& box, PropagationOutcome& outcome,
                               const Tolerances& tol)
    : box_(box), outcome_(outcome), tol_(tol) {}

void BoundTightener::fail() {
  if (!box_.empty) {
    box_.empty = true;
  }
  outcome_.cutoff = true;
}

bool BoundTightener::set_upper(VarId var, double value) {
  if (box_.empty || std::isnan(value)) return false;
  if (box_.is_integral(var)) value = std::floor(value + tol_.integrality);
  const double old = box_.upper[var];
  if (value >= old - tol_.feasibility) return false;
  const double lo = box_.lower[var];
  if (value < lo - tol_.feasibility) {
    fail();
    return false;
  }
  if (value < lo) value = lo;
  box_.upper[var] = value;
  outcome_.bound_changes.push_back({var, BoundSide::kUpper, old, value});
  ++outcome_.domain_reductions;
  return true;
}

bool BoundTightener::set_lower(VarId var, double value) {
  if (box_.empty || std::isnan(value)) return false;
  if (box_.is_integral(var)) value = std::ceil(value - tol_.integrality);
  const double old = box_.lower[var];
  if (value <= old + tol_.feasibility) return false;
  const double hi = box_.upper[var];
  if (value > hi + tol_.feasibility) {
    fail();
    return false;
  }
  if (value > hi) value = hi;
  box_.lower[var] = value;
  outcome_.bound_changes.push_back({var, BoundSide::kLower, old, value});
  ++outcome_.domain_reductions;
  return true;
}

bool BoundTightener::fix(VarId var, double value) {
  const bool lo = set_lower(var, value);
  const bool hi = set_upper(var, value);
  return lo || hi;
}

PropagationOutcome tighten_row(const LinearRow& row, DomainBox& box,
                               const Tolerances& tol) {
  PropagationOutcome out;
  out.calls = 1;
  if (box.empty) {
    out.cutoff = true;
    return out;
  }
  BoundTightener tightener(box, out, tol);
  const ActivityParts parts = activity_parts(row.terms, box);
  const double min_act = parts.inf_min > 0 ? -kInfinity : parts.finite_min;
  const double max_act = parts.inf_max > 0 ? kInfinity : parts.finite_max;
  if (min_act > row.rhs + tol.feasibility ||
      max_act < row.lhs - tol.feasibility) {
    tightener.fail();
    out.cutoffs = 1;
    return out;
  }
  const bool has_rhs = std::isfinite(row.rhs);
  const bool has_lhs = std::isfinite(row.lhs);

  for (const Term& t : row.terms) {
    if (std::abs(t.coef) < tol.coefficient_floor) continue;
    // Residuals use the activity of the box as it was on entry; bounds that
    // moved earlier in this pass only make the derived bounds weaker.
    const double res_min = residual(parts.finite_min, parts.inf_min,
                                    min_contribution(t, box), -kInfinity);
    const double res_max = residual(parts.finite_max, parts.inf_max,
                                    max_contribution(t, box), kInfinity);
    double from_rhs = kInfinity;
    double from_lhs = kInfinity;
    if (has_rhs && std::isfinite(res_min)) {
      from_rhs = (row.rhs - res_min) / t.coef;
    }
    if (has_lhs && std::isfinite(res_max)) {
      from_lhs = (row.lhs - res_max) / t.coef;
    }
    if (t.coef > 0) {
      if (std::abs(from_rhs) < kHugeBound) tightener.set_upper(t.var, from_rhs);
      if (std::abs(from_lhs) < kHugeBound) tightener.set_lower(t.var, from_lhs);
    } else {
      if (std::abs(from_rhs) < kHugeBound) tightener.set_lower(t.var, from_rhs);
      if (std::abs(from_lhs) < kHugeBound) tightener.set_upper(t.var, from_lhs);
    }
    if (tightener.failed()) break;
  }
  if (out.cutoff) out.cutoffs = 1;
  return out;
}

bool is_valid_reduction(const DomainBox& original, const DomainBox& reduced,
                        std::span<const std::vector<double>> feasible_points,
                        std::span<const VarId> scope, double tolerance) {
  if (original.size() != reduced.size()) {
    throw std::invalid_argument("is_valid_reduction: boxes differ in size");
  }
  const std::size_t dim =
      scope.empty() ? static_cast<std::size_t>(original.size()) : scope.size();
  for (VarId var : scope) {
    if (var < 0 || var >= original.size()) {
      throw std::invalid_argument("is_valid_reduction: scope out of range");
    }
  }
  for (const auto& point : feasible_points) {
    if (point.size() != dim) {
      throw std::invalid_argument(
          "is_valid_reduction: point dimension mismatch");
    }
  }
  if (reduced.empty) return feasible_points.empty();
  if (original.empty) return false;
  for (int j = 0; j < original.size(); ++j) {
    if (reduced.lower[j] < original.lower[j] - tolerance ||
        reduced.upper[j] > original.upper[j] + tolerance) {
      return false;
    }
  }
  for (const auto& point : feasible_points) {
    for (std::size_t k = 0; k < dim; ++k) {
      const VarId var = scope.empty() ? static_cast<VarId>(k) : scope[k];
      if (point[k] < reduced.lower[var] - tolerance ||
          point[k] > reduced.upper[var] + tolerance) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace structprop
