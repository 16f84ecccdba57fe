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

#include "detect/context.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace structprop::detail {

DetectContext::DetectContext(const MipModel& model, const DetectConfig& config,
                             std::span<const std::uint8_t> available)
    : model_(model), config_(config), box_(DomainBox::from_model(model)) {
  const int m = model.num_rows();
  usable_.assign(m, 0);
  unit_sums_.resize(m);
  var_rows_.resize(model.num_variables());
  const int scanned = std::min(m, std::max(config.max_rows, 0));
  if (scanned < m) {
    warnings_.push_back("row scan truncated at " + std::to_string(scanned) +
                        " of " + std::to_string(m) + " rows");
  }
  for (RowId r = 0; r < scanned; ++r) {
    if (!available.empty() && available[r] == 0) continue;
    const LinearRow& row = model.rows[r];
    if (row.terms.empty()) continue;
    if (box_.empty ||
        is_redundant(row, box_, config.tolerances.feasibility)) {
      continue;
    }
    usable_[r] = 1;
    rows_.push_back(r);
    for (const Term& t : row.terms) var_rows_[t.var].push_back(r);

    bool unit = true;
    const double sign = row.terms.front().coef > 0 ? 1.0 : -1.0;
    for (const Term& t : row.terms) {
      if (!is_binary(t.var) || t.coef != sign) {
        unit = false;
        break;
      }
    }
    if (unit) {
      UnitSum sum;
      for (const Term& t : row.terms) sum.vars.push_back(t.var);
      const double n = static_cast<double>(sum.vars.size());
      const double lo = sign > 0 ? row.lhs : -row.rhs;
      const double hi = sign > 0 ? row.rhs : -row.lhs;
      const double tol = config.tolerances.integrality;
      sum.lower = std::max(0.0, std::isfinite(lo) ? std::ceil(lo - tol) : 0.0);
      sum.upper = std::min(n, std::isfinite(hi) ? std::floor(hi + tol) : n);
      unit_sums_[r] = std::move(sum);
    }
  }
}

bool DetectContext::is_binary(VarId var) const {
  return model_.variables[var].is_binary();
}

bool DetectContext::is_general_integer(VarId var) const {
  const Variable& v = model_.variables[var];
  return v.is_integral() && !v.is_binary();
}

bool DetectContext::is_exact_one(RowId row) const {
  const auto& sum = unit_sums_[row];
  return sum && sum->lower == 1.0 && sum->upper == 1.0;
}

bool DetectContext::is_set_packing(RowId row) const {
  const auto& sum = unit_sums_[row];
  return sum && sum->lower == 0.0 && sum->upper == 1.0;
}

std::optional<LeqRow> DetectContext::leq_form(RowId row) const {
  const LinearRow& r = model_.rows[row];
  const bool has_lhs = std::isfinite(r.lhs);
  const bool has_rhs = std::isfinite(r.rhs);
  if (has_lhs == has_rhs) return std::nullopt;
  LeqRow out;
  out.terms = r.terms;
  out.rhs = r.rhs;
  if (has_lhs) {
    for (Term& t : out.terms) t.coef = -t.coef;
    out.rhs = -r.lhs;
  }
  return out;
}

std::optional<std::pair<VarId, VarId>> DetectContext::implication(
    RowId row) const {
  const LinearRow& r = model_.rows[row];
  if (r.terms.size() != 2) return std::nullopt;
  const auto leq = leq_form(row);
  if (!leq || leq->rhs != 0.0) return std::nullopt;
  const Term& a = leq->terms[0];
  const Term& b = leq->terms[1];
  if (!is_binary(a.var) || !is_binary(b.var) || a.coef != -b.coef) {
    return std::nullopt;
  }
  if (a.coef > 0) return std::make_pair(a.var, b.var);
  return std::make_pair(b.var, a.var);
}

bool intersects(std::span<const int> a, std::span<const int> b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return false;
}

DisjointSets::DisjointSets(int n) : parent_(n) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int DisjointSets::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

void DisjointSets::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  // Smaller root wins, which keeps representatives deterministic.
  if (a < b) {
    parent_[b] = a;
  } else {
    parent_[a] = b;
  }
}

void sort_records(std::vector<SemanticRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const SemanticRecord& a, const SemanticRecord& b) {
              const RowId ka = a.evidence.empty() ? -1 : a.evidence.front();
              const RowId kb = b.evidence.empty() ? -1 : b.evidence.front();
              if (ka != kb) return ka < kb;
              return a.scope < b.scope;
            });
}

}  // namespace structprop::detail
