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

#ifndef STRUCTPROP_MODEL_HPP_
#define STRUCTPROP_MODEL_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace structprop {

using VarId = int;
using RowId = int;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Numerical policy shared by propagation, enumeration and search.
struct Tolerances {
  double feasibility = 1e-6;
  double integrality = 1e-6;
  double coefficient_floor = 1e-9;
};

enum class Integrality : std::uint8_t { kContinuous, kInteger, kBinary };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  Integrality integrality = Integrality::kContinuous;

  bool is_integral() const { return integrality != Integrality::kContinuous; }
  bool is_binary() const { return integrality == Integrality::kBinary; }

  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Term {
  VarId var = 0;
  double coef = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

// lhs <= sum(coef * x) <= rhs. Terms are kept sorted by variable id, without
// duplicates and without zero coefficients.
struct LinearRow {
  std::string name;
  std::vector<Term> terms;
  double lhs = -kInfinity;
  double rhs = kInfinity;

  bool is_equality() const { return lhs == rhs; }
  double coef_of(VarId var) const;
  bool contains(VarId var) const;

  friend bool operator==(const LinearRow&, const LinearRow&) = default;
};

enum class ObjectiveSense : std::uint8_t { kMinimize, kMaximize };

// A mixed-integer linear program. The objective is always stored in
// minimization form; `sense` remembers how it was stated so writers can
// restore it.
class MipModel {
 public:
  std::string name;
  std::vector<Variable> variables;
  std::vector<LinearRow> rows;
  std::vector<Term> objective;
  double objective_offset = 0.0;
  ObjectiveSense sense = ObjectiveSense::kMinimize;
  std::string objective_name = "OBJ";

  int num_variables() const { return static_cast<int>(variables.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  // Integer variables whose bounds lie within [0, 1] are stored as binary.
  VarId add_variable(std::string var_name, double lower, double upper,
                     Integrality integrality = Integrality::kContinuous);

  // Sorts terms, drops zero coefficients. Throws std::invalid_argument on an
  // unknown variable, a duplicate variable, NaN data or lhs > rhs.
  RowId add_row(std::string row_name, std::vector<Term> terms, double lhs,
                double rhs);

  // Coefficients as stated for `objective_sense`; stored negated for
  // maximization.
  void set_objective(std::vector<Term> terms, ObjectiveSense objective_sense,
                     double offset = 0.0);
  // Objective coefficients in the sense the model was stated in.
  std::vector<Term> stated_objective() const;

  // True if some variable has lower > upper.
  bool has_inconsistent_bounds() const;

  // Throws std::invalid_argument if a row or the objective references a
  // variable that does not exist, or a row breaks the term invariants.
  void validate() const;

  double objective_value(std::span<const double> point) const;

  // Checks bounds, integrality and every row at `point`.
  bool is_feasible(std::span<const double> point,
                   const Tolerances& tol = {}) const;

  friend bool operator==(const MipModel&, const MipModel&) = default;
};

// Classifies integer variables with bounds inside [0, 1] as binary.
Integrality normalize_integrality(Integrality integrality, double lower,
                                  double upper);

// Sorts by variable id and drops zero coefficients; returns false on a
// duplicate variable.
bool canonicalize_terms(std::vector<Term>& terms);

double row_value(const LinearRow& row, std::span<const double> point);

// Row multiplied by -1 with sides swapped.
LinearRow negated(const LinearRow& row);

}  // namespace structprop

#endif  // STRUCTPROP_MODEL_HPP_
