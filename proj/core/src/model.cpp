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

#include "structprop/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace structprop {

Integrality normalize_integrality(Integrality integrality, double lower,
                                  double upper) {
  if (integrality == Integrality::kInteger && lower >= 0.0 && upper <= 1.0) {
    return Integrality::kBinary;
  }
  return integrality;
}

bool canonicalize_terms(std::vector<Term>& terms) {
  std::erase_if(terms, [](const Term& t) { return t.coef == 0.0; });
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  return std::adjacent_find(terms.begin(), terms.end(),
                            [](const Term& a, const Term& b) {
                              return a.var == b.var;
                            }) == terms.end();
}

double LinearRow::coef_of(VarId var) const {
  auto it = std::lower_bound(
      terms.begin(), terms.end(), var,
      [](const Term& t, VarId v) { return t.var < v; });
  return (it != terms.end() && it->var == var) ? it->coef : 0.0;
}

bool LinearRow::contains(VarId var) const { return coef_of(var) != 0.0; }

double row_value(const LinearRow& row, std::span<const double> point) {
  double value = 0.0;
  for (const Term& t : row.terms) value += t.coef * point[t.var];
  return value;
}

LinearRow negated(const LinearRow& row) {
  LinearRow out;
  out.name = row.name;
  out.terms = row.terms;
  for (Term& t : out.terms) t.coef = -t.coef;
  out.lhs = -row.rhs;
  out.rhs = -row.lhs;
  return out;
}

VarId MipModel::add_variable(std::string var_name, double lower, double upper,
                             Integrality integrality) {
  if (std::isnan(lower) || std::isnan(upper)) {
    throw std::invalid_argument("variable '" + var_name + "' has a NaN bound");
  }
  Variable v;
  v.name = std::move(var_name);
  v.lower = lower;
  v.upper = upper;
  v.integrality = normalize_integrality(integrality, lower, upper);
  variables.push_back(std::move(v));
  return num_variables() - 1;
}

RowId MipModel::add_row(std::string row_name, std::vector<Term> terms,
                        double lhs, double rhs) {
  if (std::isnan(lhs) || std::isnan(rhs) || lhs > rhs) {
    throw std::invalid_argument("row '" + row_name + "' has invalid sides");
  }
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw std::invalid_argument("row '" + row_name +
                                  "' references unknown variable " +
                                  std::to_string(t.var));
    }
    if (!std::isfinite(t.coef)) {
      throw std::invalid_argument("row '" + row_name +
                                  "' has a non-finite coefficient");
    }
  }
  if (!canonicalize_terms(terms)) {
    throw std::invalid_argument("row '" + row_name +
                                "' repeats a variable");
  }
  LinearRow row;
  row.name = std::move(row_name);
  row.terms = std::move(terms);
  row.lhs = lhs;
  row.rhs = rhs;
  rows.push_back(std::move(row));
  return num_rows() - 1;
}

void MipModel::set_objective(std::vector<Term> terms,
                             ObjectiveSense objective_sense, double offset) {
  if (!canonicalize_terms(terms)) {
    throw std::invalid_argument("objective repeats a variable");
  }
  sense = objective_sense;
  if (sense == ObjectiveSense::kMaximize) {
    for (Term& t : terms) t.coef = -t.coef;
    offset = -offset;
  }
  objective = std::move(terms);
  objective_offset = offset;
}

std::vector<Term> MipModel::stated_objective() const {
  std::vector<Term> out = objective;
  if (sense == ObjectiveSense::kMaximize) {
    for (Term& t : out) t.coef = -t.coef;
  }
  return out;
}

bool MipModel::has_inconsistent_bounds() const {
  return std::any_of(variables.begin(), variables.end(),
                     [](const Variable& v) { return v.lower > v.upper; });
}

void MipModel::validate() const {
  auto check_terms = [&](const std::vector<Term>& terms,
                         const std::string& where) {
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const Term& t = terms[k];
      if (t.var < 0 || t.var >= num_variables()) {
        throw std::invalid_argument(where + " references unknown variable " +
                                    std::to_string(t.var));
      }
      if (t.coef == 0.0) {
        throw std::invalid_argument(where + " stores a zero coefficient");
      }
      if (k > 0 && terms[k - 1].var >= t.var) {
        throw std::invalid_argument(where +
                                    " terms are unsorted or duplicated");
      }
    }
  };
  for (const LinearRow& row : rows) {
    check_terms(row.terms, "row '" + row.name + "'");
    if (!(row.lhs <= row.rhs)) {
      throw std::invalid_argument("row '" + row.name + "' has lhs > rhs");
    }
  }
  check_terms(objective, "objective");
}

double MipModel::objective_value(std::span<const double> point) const {
  double value = objective_offset;
  for (const Term& t : objective) value += t.coef * point[t.var];
  return value;
}

bool MipModel::is_feasible(std::span<const double> point,
                           const Tolerances& tol) const {
  if (static_cast<int>(point.size()) != num_variables()) return false;
  for (int j = 0; j < num_variables(); ++j) {
    const Variable& v = variables[j];
    if (point[j] < v.lower - tol.feasibility ||
        point[j] > v.upper + tol.feasibility) {
      return false;
    }
    if (v.is_integral() &&
        std::abs(point[j] - std::round(point[j])) > tol.integrality) {
      return false;
    }
  }
  for (const LinearRow& row : rows) {
    const double value = row_value(row, point);
    if (value < row.lhs - tol.feasibility || value > row.rhs + tol.feasibility) {
      return false;
    }
  }
  return true;
}

}  // namespace structprop
