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

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace structprop::testing {
namespace {

using boost::multiprecision::cpp_int;

// sum(a[j] * y[j]) <= b over the continuous variables.
struct Ineq {
  std::vector<Rational> a;
  Rational b;
};

using System = std::map<std::vector<Rational>, Rational>;

// Scales each inequality so its largest coefficient is 1 in magnitude and
// keeps the tightest right-hand side per direction. False when a
// coefficient-free inequality reads 0 <= negative.
bool add_normalized(System& system, Ineq ineq) {
  Rational scale = 0;
  for (const Rational& c : ineq.a) scale = std::max(scale, Rational(abs(c)));
  if (scale == 0) return ineq.b >= 0;
  for (Rational& c : ineq.a) c /= scale;
  ineq.b /= scale;
  auto [it, inserted] = system.emplace(std::move(ineq.a), ineq.b);
  if (!inserted && ineq.b < it->second) it->second = ineq.b;
  return true;
}

// Fourier-Motzkin step on variable j; false when infeasibility shows up.
bool eliminate(System& system, std::size_t j) {
  std::vector<Ineq> pos;
  std::vector<Ineq> neg;
  System rest;
  for (const auto& [a, b] : system) {
    if (a[j] > 0) {
      pos.push_back({a, b});
    } else if (a[j] < 0) {
      neg.push_back({a, b});
    } else {
      rest.emplace(a, b);
    }
  }
  for (const Ineq& p : pos) {
    for (const Ineq& n : neg) {
      const Rational fp = -n.a[j];
      const Rational fn = p.a[j];
      Ineq combined;
      combined.a.resize(p.a.size());
      for (std::size_t i = 0; i < p.a.size(); ++i) combined.a[i] = p.a[i] * fp + n.a[i] * fn;
      combined.a[j] = 0;
      combined.b = p.b * fp + n.b * fn;
      if (!add_normalized(rest, std::move(combined))) return false;
    }
  }
  system = std::move(rest);
  return true;
}

struct ExactTerm {
  std::size_t index;
  Rational coef;
};

struct ExactRow {
  std::vector<ExactTerm> ints;
  std::vector<ExactTerm> conts;
  std::optional<Rational> lhs;
  std::optional<Rational> rhs;
};

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace

Rational exact(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("exact: non-finite value");
  if (value == 0.0) return 0;
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational result = Rational(cpp_int(scaled));
  if (exponent > 0) {
    result *= Rational(cpp_int(1) << exponent);
  } else if (exponent < 0) {
    result /= Rational(cpp_int(1) << -exponent);
  }
  return result;
}

OracleResult oracle_feasible(const MipModel& model, const DomainBox& box, std::int64_t limit) {
  OracleResult result;
  std::vector<int> position(model.num_variables(), -1);
  std::vector<VarId> conts;
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> hi;
  double combos = 1.0;
  for (VarId v = 0; v < model.num_variables(); ++v) {
    if (model.variables[v].is_integral()) {
      if (!std::isfinite(box.lower[v]) || !std::isfinite(box.upper[v])) {
        throw std::invalid_argument("oracle: unbounded integer variable");
      }
      position[v] = static_cast<int>(result.int_vars.size());
      result.int_vars.push_back(v);
      lo.push_back(static_cast<std::int64_t>(std::ceil(box.lower[v] - 1e-9)));
      hi.push_back(static_cast<std::int64_t>(std::floor(box.upper[v] + 1e-9)));
      combos *= static_cast<double>(std::max<std::int64_t>(hi.back() - lo.back() + 1, 0));
    } else {
      position[v] = static_cast<int>(conts.size());
      conts.push_back(v);
    }
  }
  if (combos > static_cast<double>(limit)) {
    throw std::invalid_argument("oracle: too many integer combinations");
  }

  std::vector<ExactRow> rows;
  for (const LinearRow& row : model.rows) {
    ExactRow er;
    for (const Term& t : row.terms) {
      const ExactTerm term{static_cast<std::size_t>(position[t.var]), exact(t.coef)};
      (model.variables[t.var].is_integral() ? er.ints : er.conts).push_back(term);
    }
    if (std::isfinite(row.lhs)) er.lhs = exact(row.lhs);
    if (std::isfinite(row.rhs)) er.rhs = exact(row.rhs);
    rows.push_back(std::move(er));
  }

  const std::size_t k = conts.size();
  const double inf = std::numeric_limits<double>::infinity();
  result.hull_lower.assign(model.num_variables(), inf);
  result.hull_upper.assign(model.num_variables(), -inf);
  for (VarId v : result.int_vars) {
    if (lo[position[v]] > hi[position[v]]) return result;
  }

  std::vector<std::int64_t> point(lo);
  while (true) {
    bool ok = true;
    System system;
    for (std::size_t c = 0; c < k && ok; ++c) {
      const VarId v = conts[c];
      Ineq bound;
      bound.a.assign(k, Rational(0));
      if (std::isfinite(box.upper[v])) {
        bound.a[c] = 1;
        bound.b = exact(box.upper[v]);
        ok = add_normalized(system, bound);
      }
      if (ok && std::isfinite(box.lower[v])) {
        bound.a[c] = -1;
        bound.b = -exact(box.lower[v]);
        ok = add_normalized(system, bound);
      }
    }
    for (const ExactRow& row : rows) {
      if (!ok) break;
      Rational fixed = 0;
      for (const ExactTerm& t : row.ints) fixed += t.coef * point[t.index];
      if (row.conts.empty()) {
        ok = (!row.lhs || fixed >= *row.lhs) && (!row.rhs || fixed <= *row.rhs);
        continue;
      }
      Ineq ineq;
      ineq.a.assign(k, Rational(0));
      if (row.rhs) {
        for (const ExactTerm& t : row.conts) ineq.a[t.index] = t.coef;
        ineq.b = *row.rhs - fixed;
        ok = add_normalized(system, ineq);
      }
      if (ok && row.lhs) {
        for (const ExactTerm& t : row.conts) ineq.a[t.index] = -t.coef;
        ineq.b = fixed - *row.lhs;
        ok = add_normalized(system, ineq);
      }
    }
    if (ok) {
      System all = system;
      for (std::size_t j = 0; j < k && ok; ++j) ok = eliminate(all, j);
    }
    if (ok) {
      result.points.push_back(point);
      for (std::size_t i = 0; i < point.size(); ++i) {
        const VarId v = result.int_vars[i];
        result.hull_lower[v] = std::min(result.hull_lower[v], static_cast<double>(point[i]));
        result.hull_upper[v] = std::max(result.hull_upper[v], static_cast<double>(point[i]));
      }
      for (std::size_t c = 0; c < k; ++c) {
        System own = system;
        for (std::size_t j = 0; j < k; ++j) {
          if (j != c) eliminate(own, j);
        }
        double low = -inf;
        double high = inf;
        for (const auto& [a, b] : own) {
          if (a[c] > 0) high = std::min(high, to_double(b / a[c]));
          if (a[c] < 0) low = std::max(low, to_double(b / a[c]));
        }
        const VarId v = conts[c];
        result.hull_lower[v] = std::min(result.hull_lower[v], low);
        result.hull_upper[v] = std::max(result.hull_upper[v], high);
      }
    }
    // Odometer, last integer variable fastest.
    std::size_t i = point.size();
    while (i > 0) {
      --i;
      if (point[i] < hi[i]) {
        ++point[i];
        break;
      }
      point[i] = lo[i];
      if (i == 0) return result;
    }
    if (point.empty()) return result;
  }
}

std::optional<Rational> oracle_optimum(const MipModel& model, const OracleResult& result) {
  std::vector<int> position(model.num_variables(), -1);
  for (std::size_t i = 0; i < result.int_vars.size(); ++i) {
    position[result.int_vars[i]] = static_cast<int>(i);
  }
  for (const Term& t : model.objective) {
    if (position[t.var] < 0) throw std::invalid_argument("oracle: continuous objective term");
  }
  std::optional<Rational> best;
  for (const auto& point : result.points) {
    Rational value = exact(model.objective_offset);
    for (const Term& t : model.objective) value += exact(t.coef) * point[position[t.var]];
    if (!best || value < *best) best = value;
  }
  return best;
}

}  // namespace structprop::testing
