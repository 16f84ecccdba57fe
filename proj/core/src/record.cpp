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

#include "structprop/record.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace structprop {
namespace {

constexpr std::array<std::string_view, kNumFamilies> kFamilyNames = {
    "AllDifferent",       "Cardinality",        "Channel",
    "Cumulative",         "NValue",             "Stretch",
    "OneHotResource",     "BottleneckExactOne", "RosteringWindow",
    "UnitCommitmentRamp", "DisjPolyhedral",
};

constexpr std::array<std::string_view, 9> kRosterTags = {
    "workWind", "restWind", "flow", "dem", "sos", "hlb", "hub", "lba", "other",
};

constexpr std::array<std::string_view, 6> kUcTags = {
    "Demand", "Reserve", "Link", "Ramp", "MinUp", "Logic",
};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

// Calls var_fn on every variable id and row_fn on every row id held by the
// params, allowing in-place rewriting.
template <typename VarFn, typename RowFn>
void visit_ids(RecordParams& params, VarFn&& var_fn, RowFn&& row_fn) {
  auto vars = [&](std::vector<VarId>& ids) {
    for (VarId& v : ids) {
      if (v >= 0) var_fn(v);
    }
  };
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, AllDifferentParams>) {
          for (auto& row : p.cells) vars(row);
        } else if constexpr (std::is_same_v<T, CardinalityParams>) {
          vars(p.vars);
        } else if constexpr (std::is_same_v<T, ChannelParams>) {
          for (auto& link : p.links) {
            var_fn(link.var);
            for (auto& ind : link.indicators) var_fn(ind.var);
            if (link.link_row >= 0) row_fn(link.link_row);
            if (link.choice_row >= 0) row_fn(link.choice_row);
          }
        } else if constexpr (std::is_same_v<T, CumulativeParams>) {
          for (auto& task : p.tasks) {
            if (task.choice_row >= 0) row_fn(task.choice_row);
            for (auto& start : task.starts) {
              var_fn(start.var);
              for (RowId& r : start.periods) row_fn(r);
            }
          }
          for (auto& cap : p.capacities) row_fn(cap.row);
        } else if constexpr (std::is_same_v<T, NValueParams>) {
          var_fn(p.count);
          for (auto& item : p.items) vars(item);
          for (auto& value : p.values) {
            var_fn(value.indicator);
            vars(value.uses);
          }
        } else if constexpr (std::is_same_v<T, StretchParams>) {
          vars(p.states);
          vars(p.starts);
        } else if constexpr (std::is_same_v<T, OneHotResourceParams>) {
          for (auto& group : p.groups) {
            for (auto& option : group) var_fn(option.var);
          }
        } else if constexpr (std::is_same_v<T, BottleneckExactOneParams>) {
          var_fn(p.bottleneck);
          for (auto& group : p.groups) {
            for (auto& option : group) {
              var_fn(option.selector);
              if (option.activator) var_fn(*option.activator);
            }
          }
          vars(p.activators);
        } else if constexpr (std::is_same_v<T, RosteringWindowParams>) {
          for (auto& group : p.shift_choices) vars(group);
          for (auto& cov : p.coverage) vars(cov.vars);
          for (auto& rr : p.block) row_fn(rr.row);
        } else if constexpr (std::is_same_v<T, UnitCommitmentRampParams>) {
          for (auto& unit : p.units) {
            vars(unit.status);
            vars(unit.startup);
            vars(unit.shutdown);
            vars(unit.power);
            vars(unit.reserve);
          }
          for (auto& rr : p.rows) row_fn(rr.row);
        } else if constexpr (std::is_same_v<T, DisjPolyhedralParams>) {
          for (auto& branch : p.branches) {
            var_fn(branch.selector);
            for (auto& row : branch.rows) {
              if (row.row >= 0) row_fn(row.row);
              for (Term& t : row.terms) var_fn(t.var);
            }
          }
          vars(p.touched);
          if (p.mode_row >= 0) row_fn(p.mode_row);
        }
      },
      params);
}

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

VarId front_or_max(const std::vector<VarId>& v) {
  return v.empty() ? std::numeric_limits<VarId>::max() : v.front();
}

// Orders grid columns by their smallest variable, then rows by theirs.
std::vector<std::vector<VarId>> canonical_grid(
    std::vector<std::vector<VarId>> cells) {
  if (cells.empty()) return cells;
  const std::size_t cols = cells.front().size();
  std::vector<std::size_t> order(cols);
  std::vector<VarId> col_min(cols, std::numeric_limits<VarId>::max());
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < cols && c < row.size(); ++c) {
      col_min[c] = std::min(col_min[c], row[c]);
    }
  }
  for (std::size_t c = 0; c < cols; ++c) order[c] = c;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return col_min[a] < col_min[b]; });
  for (auto& row : cells) {
    std::vector<VarId> permuted(row.size());
    for (std::size_t c = 0; c < cols && c < row.size(); ++c) {
      permuted[c] = row[order[c]];
    }
    row = std::move(permuted);
  }
  std::sort(cells.begin(), cells.end(),
            [](const std::vector<VarId>& a, const std::vector<VarId>& b) {
              return *std::min_element(a.begin(), a.end()) <
                     *std::min_element(b.begin(), b.end());
            });
  return cells;
}

void canonicalize_params(AllDifferentParams& p) {
  p.cells = canonical_grid(std::move(p.cells));
  const std::size_t n = p.cells.size();
  // A square grid with exact-one rows and columns has no preferred
  // orientation; keep the lexicographically smaller one.
  if (p.values_exact && n > 0 && p.cells.front().size() == n) {
    std::vector<std::vector<VarId>> transposed(n, std::vector<VarId>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) transposed[j][i] = p.cells[i][j];
    }
    transposed = canonical_grid(std::move(transposed));
    if (transposed < p.cells) p.cells = std::move(transposed);
  }
}

void canonicalize_params(CardinalityParams& p) { sort_unique(p.vars); }

void canonicalize_params(ChannelParams& p) {
  for (auto& link : p.links) {
    std::sort(link.indicators.begin(), link.indicators.end(),
              [](const ChannelIndicator& a, const ChannelIndicator& b) {
                return a.var < b.var;
              });
  }
  std::sort(p.links.begin(), p.links.end(),
            [](const ChannelLink& a, const ChannelLink& b) {
              return a.var < b.var;
            });
}

void canonicalize_params(CumulativeParams& p) {
  for (auto& task : p.tasks) {
    for (auto& start : task.starts) std::sort(start.periods.begin(), start.periods.end());
    std::sort(task.starts.begin(), task.starts.end(),
              [](const CumulativeStart& a, const CumulativeStart& b) {
                return a.var < b.var;
              });
  }
  std::sort(p.tasks.begin(), p.tasks.end(),
            [](const CumulativeTask& a, const CumulativeTask& b) {
              const VarId ka = a.starts.empty() ? -1 : a.starts.front().var;
              const VarId kb = b.starts.empty() ? -1 : b.starts.front().var;
              return ka < kb;
            });
  std::sort(p.capacities.begin(), p.capacities.end(),
            [](const CumulativeCapacity& a, const CumulativeCapacity& b) {
              return a.row < b.row;
            });
}

void canonicalize_params(NValueParams& p) {
  for (auto& item : p.items) std::sort(item.begin(), item.end());
  std::sort(p.items.begin(), p.items.end(),
            [](const auto& a, const auto& b) {
              return front_or_max(a) < front_or_max(b);
            });
  for (auto& value : p.values) std::sort(value.uses.begin(), value.uses.end());
  std::sort(p.values.begin(), p.values.end(),
            [](const NValueValue& a, const NValueValue& b) {
              return a.indicator < b.indicator;
            });
}

void canonicalize_params(StretchParams&) {}

void canonicalize_params(OneHotResourceParams& p) {
  for (auto& group : p.groups) {
    std::sort(group.begin(), group.end(),
              [](const OneHotOption& a, const OneHotOption& b) {
                return a.var < b.var;
              });
  }
  std::sort(p.groups.begin(), p.groups.end(),
            [](const auto& a, const auto& b) {
              return a.front().var < b.front().var;
            });
}

void canonicalize_params(BottleneckExactOneParams& p) {
  for (auto& group : p.groups) {
    std::sort(group.begin(), group.end(),
              [](const BottleneckOption& a, const BottleneckOption& b) {
                return a.selector < b.selector;
              });
  }
  std::sort(p.groups.begin(), p.groups.end(),
            [](const auto& a, const auto& b) {
              return a.front().selector < b.front().selector;
            });
  sort_unique(p.activators);
}

void canonicalize_params(RosteringWindowParams& p) {
  for (auto& group : p.shift_choices) std::sort(group.begin(), group.end());
  std::sort(p.shift_choices.begin(), p.shift_choices.end(),
            [](const auto& a, const auto& b) {
              return front_or_max(a) < front_or_max(b);
            });
  for (auto& cov : p.coverage) std::sort(cov.vars.begin(), cov.vars.end());
  std::sort(p.coverage.begin(), p.coverage.end(),
            [](const RosterCoverage& a, const RosterCoverage& b) {
              return front_or_max(a.vars) < front_or_max(b.vars);
            });
  std::sort(p.block.begin(), p.block.end(),
            [](const RoleRow& a, const RoleRow& b) { return a.row < b.row; });
}

void canonicalize_params(UnitCommitmentRampParams& p) {
  std::sort(p.units.begin(), p.units.end(),
            [](const UnitSchedule& a, const UnitSchedule& b) {
              return front_or_max(a.status) < front_or_max(b.status);
            });
  std::sort(p.rows.begin(), p.rows.end(),
            [](const RoleRow& a, const RoleRow& b) { return a.row < b.row; });
}

void canonicalize_params(DisjPolyhedralParams& p) {
  for (auto& branch : p.branches) {
    for (auto& row : branch.rows) {
      std::sort(row.terms.begin(), row.terms.end(),
                [](const Term& a, const Term& b) { return a.var < b.var; });
    }
    std::sort(branch.rows.begin(), branch.rows.end(),
              [](const BranchRow& a, const BranchRow& b) {
                if (a.row != b.row) return a.row < b.row;
                if (a.rhs != b.rhs) return a.rhs < b.rhs;
                return a.terms.size() < b.terms.size();
              });
  }
  std::sort(p.branches.begin(), p.branches.end(),
            [](const DisjBranch& a, const DisjBranch& b) {
              if (a.selector != b.selector) return a.selector < b.selector;
              return a.selector_value < b.selector_value;
            });
  sort_unique(p.touched);
}

}  // namespace

std::string_view family_name(Family family) {
  return kFamilyNames.at(static_cast<std::size_t>(family));
}

std::optional<Family> family_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
    if (iequals(kFamilyNames[i], name)) return static_cast<Family>(i);
  }
  return std::nullopt;
}

const std::array<Family, kNumFamilies>& all_families() {
  static const std::array<Family, kNumFamilies> kAll = {
      Family::kAllDifferent,       Family::kCardinality,
      Family::kChannel,            Family::kCumulative,
      Family::kNValue,             Family::kStretch,
      Family::kOneHotResource,     Family::kBottleneckExactOne,
      Family::kRosteringWindow,    Family::kUnitCommitmentRamp,
      Family::kDisjPolyhedral,
  };
  return kAll;
}

const std::array<Family, kNumFamilies>& priority_order() {
  static const std::array<Family, kNumFamilies> kOrder = {
      Family::kDisjPolyhedral,     Family::kUnitCommitmentRamp,
      Family::kRosteringWindow,    Family::kBottleneckExactOne,
      Family::kOneHotResource,     Family::kCumulative,
      Family::kChannel,            Family::kAllDifferent,
      Family::kNValue,             Family::kStretch,
      Family::kCardinality,
  };
  return kOrder;
}

bool is_cp_family(Family family) {
  return static_cast<int>(family) <= static_cast<int>(Family::kStretch);
}

std::string_view roster_role_tag(RosterRole role) {
  return kRosterTags.at(static_cast<std::size_t>(role));
}

std::optional<RosterRole> roster_role_from_tag(std::string_view tag) {
  for (std::size_t i = 0; i < kRosterTags.size(); ++i) {
    if (kRosterTags[i] == tag) return static_cast<RosterRole>(i);
  }
  return std::nullopt;
}

std::string_view uc_role_tag(UcRole role) {
  return kUcTags.at(static_cast<std::size_t>(role));
}

std::optional<UcRole> uc_role_from_tag(std::string_view tag) {
  for (std::size_t i = 0; i < kUcTags.size(); ++i) {
    if (kUcTags[i] == tag) return static_cast<UcRole>(i);
  }
  return std::nullopt;
}

Family family_of(const RecordParams& params) {
  return static_cast<Family>(params.index());
}

std::vector<VarId> params_variables(const RecordParams& params) {
  std::vector<VarId> out;
  RecordParams copy = params;
  visit_ids(
      copy, [&](VarId& v) { out.push_back(v); }, [](RowId&) {});
  sort_unique(out);
  return out;
}

SemanticRecord make_record(RecordParams params, std::vector<RowId> evidence,
                           Confidence confidence) {
  SemanticRecord record;
  record.family = family_of(params);
  record.scope = params_variables(params);
  record.params = std::move(params);
  record.evidence = std::move(evidence);
  record.confidence = confidence;
  canonicalize(record);
  return record;
}

void canonicalize(SemanticRecord& record) {
  sort_unique(record.scope);
  sort_unique(record.evidence);
  std::visit([](auto& p) { canonicalize_params(p); }, record.params);
}

SemanticRecord remap(const SemanticRecord& record,
                     std::span<const VarId> var_map,
                     std::span<const RowId> row_map) {
  auto map_var = [&](VarId& v) {
    if (v < 0 || static_cast<std::size_t>(v) >= var_map.size()) {
      throw std::out_of_range("remap: variable id outside the map");
    }
    v = var_map[v];
  };
  auto map_row = [&](RowId& r) {
    if (r < 0 || static_cast<std::size_t>(r) >= row_map.size()) {
      throw std::out_of_range("remap: row id outside the map");
    }
    r = row_map[r];
  };
  SemanticRecord out = record;
  for (VarId& v : out.scope) map_var(v);
  for (RowId& r : out.evidence) map_row(r);
  visit_ids(out.params, map_var, map_row);
  canonicalize(out);
  return out;
}

bool same_structure(const SemanticRecord& a, const SemanticRecord& b) {
  SemanticRecord ca = a;
  SemanticRecord cb = b;
  canonicalize(ca);
  canonicalize(cb);
  return ca.family == cb.family && ca.scope == cb.scope &&
         ca.params == cb.params;
}

}  // namespace structprop
