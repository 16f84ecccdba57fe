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

// An exact feasibility oracle that shares no code with the library's
// enumerator: it walks the full Cartesian product of the integer domains,
// evaluates rows in rational arithmetic and decides the remaining linear
// system over the continuous variables by Fourier-Motzkin elimination.
// Meant for tiny models only.

#ifndef STRUCTPROP_TESTS_SUPPORT_ORACLE_HPP_
#define STRUCTPROP_TESTS_SUPPORT_ORACLE_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "structprop/domain.hpp"
#include "structprop/model.hpp"

namespace structprop::testing {

using Rational = boost::multiprecision::cpp_rational;

// The exact value of a finite double.
Rational exact(double value);

struct OracleResult {
  // Integer variables of the model, ascending; points[k][i] is the value of
  // int_vars[i] in the k-th feasible assignment (lexicographic order).
  std::vector<VarId> int_vars;
  std::vector<std::vector<std::int64_t>> points;
  // Per variable, the smallest box containing every feasible point,
  // including the feasible ranges of continuous variables. Only meaningful
  // when points is non-empty.
  std::vector<double> hull_lower;
  std::vector<double> hull_upper;

  bool feasible() const { return !points.empty(); }
};

// Throws std::invalid_argument if an integer domain in `box` is unbounded
// or the product of domain sizes exceeds `limit`.
OracleResult oracle_feasible(const MipModel& model, const DomainBox& box,
                             std::int64_t limit = 1 << 16);

// Minimum of the objective over the feasible points; nullopt when
// infeasible. Throws if the objective has a continuous term.
std::optional<Rational> oracle_optimum(const MipModel& model, const OracleResult& result);

}  // namespace structprop::testing

#endif  // STRUCTPROP_TESTS_SUPPORT_ORACLE_HPP_
