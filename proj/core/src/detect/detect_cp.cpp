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

// Detectors for the classic CP families: assignment grids, cardinality rows,
// channeling equalities, time-indexed cumulative, value counting and
// run-length chains.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "detect/context.hpp"

namespace structprop::detail {
namespace {

// Groups `ids` into connected components of a union-find.
std::map<int, std::vector<int>> components(DisjointSets& sets,
                                           const std::vector<int>& ids) {
  std::map<int, std::vector<int>> out;
  for (int id : ids) out[sets.find(id)].push_back(id);
  return out;
}

}  // namespace

std::vector<SemanticRecord> detect_all_different(const DetectContext& ctx) {
  const MipModel& model = ctx.model();
  std::vector<RowId> cand;
  for (RowId r : ctx.rows()) {
    const auto& sum = ctx.unit_sum(r);
    if (sum && sum->vars.size() >= 2 &&
        (ctx.is_exact_one(r) || ctx.is_set_packing(r))) {
      cand.push_back(r);
    }
  }
  if (cand.size() < 4) return {};
  std::vector<int> index(model.num_rows(), -1);
  for (std::size_t k = 0; k < cand.size(); ++k) index[cand[k]] = static_cast<int>(k);

  // Candidate rows per variable.
  std::unordered_map<VarId, std::vector<int>> incidence;
  for (std::size_t k = 0; k < cand.size(); ++k) {
    for (const Term& t : model.rows[cand[k]].terms) {
      incidence[t.var].push_back(static_cast<int>(k));
    }
  }
  DisjointSets sets(static_cast<int>(cand.size()));
  for (const auto& [var, rows] : incidence) {
    for (std::size_t k = 1; k < rows.size(); ++k) sets.unite(rows[0], rows[k]);
  }
  std::vector<int> all(cand.size());
  for (std::size_t k = 0; k < cand.size(); ++k) all[k] = static_cast<int>(k);

  std::vector<SemanticRecord> out;
  for (const auto& [root, members] : components(sets, all)) {
    if (members.size() < 4) continue;
    // Two-colour the rows: every variable must sit in exactly two rows of
    // different colour.
    std::map<int, int> color;
    color[members.front()] = 0;
    std::vector<int> stack = {members.front()};
    bool ok = true;
    while (!stack.empty() && ok) {
      const int k = stack.back();
      stack.pop_back();
      for (const Term& t : model.rows[cand[k]].terms) {
        const auto& rows = incidence[t.var];
        if (rows.size() != 2) {
          ok = false;
          break;
        }
        const int other = rows[0] == k ? rows[1] : rows[0];
        auto it = color.find(other);
        if (it == color.end()) {
          color[other] = 1 - color[k];
          stack.push_back(other);
        } else if (it->second == color[k]) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::vector<int> side[2];
    for (const auto& [k, c] : color) side[c].push_back(k);
    if (side[0].size() < 2 || side[1].size() < 2) continue;
    auto all_exact = [&](const std::vector<int>& rows) {
      return std::all_of(rows.begin(), rows.end(),
                         [&](int k) { return ctx.is_exact_one(cand[k]); });
    };
    const bool exact0 = all_exact(side[0]);
    const bool exact1 = all_exact(side[1]);
    if (!exact0 && !exact1) continue;
    const int items = exact0 ? 0 : 1;
    const std::vector<int>& item_rows = side[items];
    const std::vector<int>& value_rows = side[1 - items];
    std::map<int, int> value_pos;
    for (std::size_t v = 0; v < value_rows.size(); ++v) {
      value_pos[value_rows[v]] = static_cast<int>(v);
    }
    AllDifferentParams params;
    params.values_exact = exact0 && exact1;
    params.cells.assign(item_rows.size(),
                        std::vector<VarId>(value_rows.size(), -1));
    for (std::size_t i = 0; i < item_rows.size() && ok; ++i) {
      for (const Term& t : model.rows[cand[item_rows[i]]].terms) {
        const auto& rows = incidence[t.var];
        const int other = rows[0] == item_rows[i] ? rows[1] : rows[0];
        VarId& cell = params.cells[i][value_pos.at(other)];
        if (cell != -1) {
          ok = false;
          break;
        }
        cell = t.var;
      }
    }
    if (!ok) continue;
    for (const auto& row : params.cells) {
      if (std::find(row.begin(), row.end(), -1) != row.end()) ok = false;
    }
    if (!ok) continue;
    std::vector<RowId> evidence;
    for (int k : members) evidence.push_back(cand[k]);
    out.push_back(make_record(std::move(params), std::move(evidence)));
  }
  return out;
}

std::vector<SemanticRecord> detect_cardinality(const DetectContext& ctx) {
  std::vector<SemanticRecord> out;
  for (RowId r : ctx.rows()) {
    const auto& sum = ctx.unit_sum(r);
    if (!sum || sum->vars.size() < 3) continue;
    CardinalityParams params{sum->vars, sum->lower, sum->upper};
    out.push_back(make_record(std::move(params), {r}));
  }
  return out;
}

std::vector<SemanticRecord> detect_channel(const DetectContext& ctx) {
  const MipModel& model = ctx.model();
  std::vector<ChannelLink> links;
  for (RowId r : ctx.rows()) {
    const LinearRow& row = model.rows[r];
    if (!row.is_equality() || row.terms.size() < 3) continue;
    VarId x = -1;
    double x_coef = 0.0;
    bool ok = true;
    for (const Term& t : row.terms) {
      if (ctx.is_binary(t.var)) continue;
      if (x != -1 || !ctx.is_general_integer(t.var)) {
        ok = false;
        break;
      }
      x = t.var;
      x_coef = t.coef;
    }
    if (!ok || x == -1) continue;
    // x = c - sum(beta * y)
    const double c = row.rhs / x_coef;
    std::vector<VarId> ys;
    std::map<VarId, double> value_of;
    for (const Term& t : row.terms) {
      if (t.var == x) continue;
      ys.push_back(t.var);
      value_of[t.var] = c - t.coef / x_coef;
    }
    // The choice row: the unique exact-one row holding every indicator,
    // plus at most one indicator for the value c itself.
    RowId choice = -1;
    int found = 0;
    for (RowId e : ctx.rows_of(ys.front())) {
      if (!ctx.is_exact_one(e)) continue;
      const auto& vars = ctx.unit_sum(e)->vars;
      if (!std::includes(vars.begin(), vars.end(), ys.begin(), ys.end())) {
        continue;
      }
      if (vars.size() > ys.size() + 1) continue;
      choice = e;
      ++found;
    }
    if (found != 1) continue;
    ChannelLink link;
    link.var = x;
    link.link_row = r;
    link.choice_row = choice;
    for (VarId y : ctx.unit_sum(choice)->vars) {
      const auto it = value_of.find(y);
      link.indicators.push_back({y, it == value_of.end() ? c : it->second});
    }
    std::set<double> distinct;
    for (const auto& ind : link.indicators) distinct.insert(ind.value);
    if (distinct.size() != link.indicators.size()) continue;
    if (link.indicators.size() < 2) continue;
    links.push_back(std::move(link));
  }
  // A choice row or channelled variable claimed twice is ambiguous: drop
  // every claimant.
  std::map<RowId, int> choice_uses;
  std::map<VarId, int> var_uses;
  for (const auto& link : links) {
    ++choice_uses[link.choice_row];
    ++var_uses[link.var];
  }
  ChannelParams params;
  std::vector<RowId> evidence;
  for (auto& link : links) {
    if (choice_uses[link.choice_row] != 1 || var_uses[link.var] != 1) continue;
    evidence.push_back(link.link_row);
    evidence.push_back(link.choice_row);
    params.links.push_back(std::move(link));
  }
  if (params.links.empty()) return {};
  std::vector<SemanticRecord> out;
  out.push_back(make_record(std::move(params), std::move(evidence)));
  return out;
}

std::vector<SemanticRecord> detect_cumulative(const DetectContext& ctx) {
  const MipModel& model = ctx.model();
  // Tasks: exact-one rows with at least two start indicators.
  std::vector<RowId> tasks;
  std::unordered_map<VarId, int> task_of;
  std::set<VarId> ambiguous;
  for (RowId r : ctx.rows()) {
    if (!ctx.is_exact_one(r) || ctx.unit_sum(r)->vars.size() < 2) continue;
    const int k = static_cast<int>(tasks.size());
    tasks.push_back(r);
    for (VarId v : ctx.unit_sum(r)->vars) {
      if (!task_of.emplace(v, k).second) ambiguous.insert(v);
    }
  }
  if (tasks.size() < 2) return {};

  struct Capacity {
    RowId row;
    double rhs;
    std::map<int, double> demand;  // task -> coefficient
  };
  std::vector<Capacity> caps;
  for (RowId r : ctx.rows()) {
    const auto leq = ctx.leq_form(r);
    if (!leq || leq->rhs < 0) continue;
    Capacity cap{r, leq->rhs, {}};
    bool ok = true;
    for (const Term& t : leq->terms) {
      const auto it = task_of.find(t.var);
      if (t.coef <= 0 || it == task_of.end() || ambiguous.count(t.var) != 0) {
        ok = false;
        break;
      }
      auto [d, inserted] = cap.demand.emplace(it->second, t.coef);
      if (!inserted && d->second != t.coef) {
        ok = false;
        break;
      }
    }
    if (ok) caps.push_back(std::move(cap));
  }
  if (caps.size() < 2) return {};

  DisjointSets sets(static_cast<int>(tasks.size()));
  for (const Capacity& cap : caps) {
    const int first = cap.demand.begin()->first;
    for (const auto& [task, d] : cap.demand) sets.unite(first, task);
  }
  std::map<int, std::vector<int>> cap_groups;
  for (std::size_t c = 0; c < caps.size(); ++c) {
    cap_groups[sets.find(caps[c].demand.begin()->first)].push_back(
        static_cast<int>(c));
  }

  std::vector<SemanticRecord> out;
  for (const auto& [root, cap_ids] : cap_groups) {
    if (cap_ids.size() < 2) continue;
    std::set<int> comp_tasks;
    for (int c : cap_ids) {
      for (const auto& [task, d] : caps[c].demand) comp_tasks.insert(task);
    }
    if (comp_tasks.size() < 2) continue;
    CumulativeParams params;
    std::vector<RowId> evidence;
    bool ok = true;
    bool long_task = false;
    for (int k : comp_tasks) {
      CumulativeTask task;
      task.choice_row = tasks[k];
      task.demand = -1.0;
      std::map<VarId, std::vector<RowId>> periods;
      for (int c : cap_ids) {
        const auto it = caps[c].demand.find(k);
        if (it == caps[c].demand.end()) continue;
        if (task.demand < 0) {
          task.demand = it->second;
        } else if (task.demand != it->second) {
          ok = false;
        }
        for (const Term& t : model.rows[caps[c].row].terms) {
          if (task_of.at(t.var) == k) periods[t.var].push_back(caps[c].row);
        }
      }
      for (VarId v : ctx.unit_sum(tasks[k])->vars) {
        const auto it = periods.find(v);
        if (it == periods.end()) {
          ok = false;
          break;
        }
        const int duration = static_cast<int>(it->second.size());
        if (task.duration == 0) task.duration = duration;
        if (task.duration != duration) ok = false;
        task.starts.push_back({v, it->second});
      }
      if (!ok) break;
      if (task.duration >= 2) long_task = true;
      evidence.push_back(tasks[k]);
      params.tasks.push_back(std::move(task));
    }
    // Unit durations everywhere describe an assignment grid, not a
    // schedule.
    if (!ok || !long_task) continue;
    for (int c : cap_ids) {
      params.capacities.push_back({caps[c].row, caps[c].rhs});
      evidence.push_back(caps[c].row);
    }
    out.push_back(make_record(std::move(params), std::move(evidence)));
  }
  return out;
}

std::vector<SemanticRecord> detect_nvalue(const DetectContext& ctx) {
  const MipModel& model = ctx.model();
  std::vector<SemanticRecord> out;
  std::set<RowId> claimed_items;
  for (RowId r : ctx.rows()) {
    const LinearRow& row = model.rows[r];
    if (!row.is_equality() || row.rhs != 0.0 || row.terms.size() < 3) continue;
    VarId count = -1;
    double count_coef = 0.0;
    bool ok = true;
    for (const Term& t : row.terms) {
      if (ctx.is_binary(t.var)) continue;
      if (count != -1 || !ctx.is_general_integer(t.var)) {
        ok = false;
        break;
      }
      count = t.var;
      count_coef = t.coef;
    }
    if (!ok || count == -1) continue;
    NValueParams params;
    params.count = count;
    std::vector<RowId> evidence = {r};
    std::vector<RowId> upper_rows;
    std::set<VarId> indicators;
    for (const Term& t : row.terms) {
      if (t.var == count) continue;
      if (t.coef != -count_coef) {
        ok = false;
        break;
      }
      indicators.insert(t.var);
    }
    if (!ok) continue;
    std::map<VarId, VarId> value_of_use;
    for (VarId z : indicators) {
      NValueValue value;
      value.indicator = z;
      for (RowId e : ctx.rows_of(z)) {
        const auto imp = ctx.implication(e);
        if (imp && imp->second == z && imp->first != count &&
            indicators.count(imp->first) == 0) {
          value.uses.push_back(imp->first);
          evidence.push_back(e);
        }
      }
      if (value.uses.empty()) {
        ok = false;
        break;
      }
      std::sort(value.uses.begin(), value.uses.end());
      for (VarId y : value.uses) {
        if (!value_of_use.emplace(y, z).second) ok = false;
      }
      // Optional z <= sum(uses).
      for (RowId e : ctx.rows_of(z)) {
        const auto leq = ctx.leq_form(e);
        if (!leq || leq->rhs != 0.0 || leq->terms.size() != value.uses.size() + 1) {
          continue;
        }
        double a = 0.0;
        for (const Term& t : leq->terms) {
          if (t.var == z) a = t.coef;
        }
        if (a <= 0) continue;
        bool match = true;
        for (const Term& t : leq->terms) {
          if (t.var == z) continue;
          if (t.coef != -a || !std::binary_search(value.uses.begin(),
                                                  value.uses.end(), t.var)) {
            match = false;
          }
        }
        if (match) {
          upper_rows.push_back(e);
          break;
        }
      }
      params.values.push_back(std::move(value));
    }
    if (!ok) continue;
    // Items: exact-one rows over the use indicators.
    std::set<RowId> item_rows;
    for (const auto& [y, z] : value_of_use) {
      RowId item = -1;
      int found = 0;
      for (RowId e : ctx.rows_of(y)) {
        if (ctx.is_exact_one(e)) {
          item = e;
          ++found;
        }
      }
      if (found != 1) {
        ok = false;
        break;
      }
      item_rows.insert(item);
    }
    if (!ok || item_rows.size() < 2) continue;
    for (RowId e : item_rows) {
      const auto& vars = ctx.unit_sum(e)->vars;
      for (VarId v : vars) {
        if (value_of_use.count(v) == 0) ok = false;
      }
      if (claimed_items.count(e) != 0) ok = false;
      params.items.push_back(vars);
      evidence.push_back(e);
    }
    if (!ok) continue;
    claimed_items.insert(item_rows.begin(), item_rows.end());
    params.upper_links = upper_rows.size() == params.values.size();
    if (params.upper_links) {
      evidence.insert(evidence.end(), upper_rows.begin(), upper_rows.end());
    }
    out.push_back(make_record(std::move(params), std::move(evidence)));
  }
  return out;
}

std::vector<SemanticRecord> detect_stretch(const DetectContext& ctx) {
  // Implications a -> b, indexed both ways.
  std::map<VarId, std::vector<std::pair<VarId, RowId>>> implies;
  for (RowId r : ctx.rows()) {
    if (const auto imp = ctx.implication(r)) {
      implies[imp->first].push_back({imp->second, r});
    }
  }
  auto implication_row = [&](VarId a, VarId b) -> RowId {
    const auto it = implies.find(a);
    if (it == implies.end()) return -1;
    for (const auto& [to, row] : it->second) {
      if (to == b) return row;
    }
    return -1;
  };

  // Transition rows x_t - x_{t-1} - s_t <= 0.
  struct Transition {
    VarId state;
    VarId prev;
    VarId start;
    RowId row;
  };
  std::map<VarId, Transition> by_state;
  std::set<VarId> duplicate_states;
  for (RowId r : ctx.rows()) {
    const auto leq = ctx.leq_form(r);
    if (!leq || leq->rhs != 0.0 || leq->terms.size() != 3) continue;
    VarId pos = -1;
    std::vector<VarId> neg;
    bool ok = true;
    const double a = std::abs(leq->terms.front().coef);
    for (const Term& t : leq->terms) {
      if (!ctx.is_binary(t.var) || std::abs(t.coef) != a) ok = false;
      if (t.coef > 0) {
        if (pos != -1) ok = false;
        pos = t.var;
      } else {
        neg.push_back(t.var);
      }
    }
    if (!ok || pos == -1 || neg.size() != 2) continue;
    // The start is the negative literal that implies the new state.
    const bool n0 = implication_row(neg[0], pos) != -1;
    const bool n1 = implication_row(neg[1], pos) != -1;
    if (n0 == n1) continue;
    Transition tr{pos, n0 ? neg[1] : neg[0], n0 ? neg[0] : neg[1], r};
    if (!by_state.emplace(pos, tr).second) duplicate_states.insert(pos);
  }
  for (VarId v : duplicate_states) by_state.erase(v);

  std::map<VarId, VarId> next_state;
  std::set<VarId> branching;
  for (const auto& [state, tr] : by_state) {
    if (!next_state.emplace(tr.prev, state).second) branching.insert(tr.prev);
  }

  std::vector<SemanticRecord> out;
  for (const auto& [first_prev, unused] : next_state) {
    (void)unused;
    // Chain heads: states that are nobody's successor.
    if (by_state.count(first_prev) != 0) continue;
    StretchParams params;
    std::vector<RowId> evidence;
    params.states.push_back(first_prev);
    bool ok = branching.count(first_prev) == 0;
    VarId cur = first_prev;
    std::set<VarId> seen = {cur};
    while (ok) {
      const auto it = next_state.find(cur);
      if (it == next_state.end()) break;
      cur = it->second;
      if (!seen.insert(cur).second || branching.count(cur) != 0) {
        ok = false;
        break;
      }
      params.states.push_back(cur);
    }
    if (!ok || params.states.size() < 2) continue;
    const int horizon = static_cast<int>(params.states.size());
    // Head row x_1 - s_1 <= 0: the only implication out of x_1.
    const auto head = implies.find(params.states[0]);
    if (head == implies.end() || head->second.size() != 1) continue;
    params.starts.push_back(head->second[0].first);
    evidence.push_back(head->second[0].second);
    for (int t = 1; t < horizon; ++t) {
      const Transition& tr = by_state.at(params.states[t]);
      params.starts.push_back(tr.start);
      evidence.push_back(tr.row);
    }
    std::set<VarId> chain(params.states.begin(), params.states.end());
    for (VarId s : params.starts) {
      if (chain.count(s) != 0) ok = false;
    }
    if (!ok) continue;
    // Run starts may not follow an on state: s_t + x_{t-1} <= 1.
    for (int t = 1; t < horizon && ok; ++t) {
      RowId found = -1;
      for (RowId e : ctx.rows_of(params.starts[t])) {
        if (!ctx.is_set_packing(e)) continue;
        const auto& vars = ctx.unit_sum(e)->vars;
        if (vars.size() == 2 &&
            std::binary_search(vars.begin(), vars.end(), params.states[t - 1])) {
          found = e;
        }
      }
      if (found == -1) ok = false;
      evidence.push_back(found);
    }
    if (!ok) continue;
    // Minimum run: s_t -> x_{t+k} for k = 0..L-1.
    std::map<VarId, int> position;
    for (int t = 0; t < horizon; ++t) position[params.states[t]] = t;
    int min_run = 0;
    std::vector<std::vector<int>> offsets(horizon);
    for (int t = 0; t < horizon; ++t) {
      const auto it = implies.find(params.starts[t]);
      if (it == implies.end()) {
        ok = false;
        break;
      }
      for (const auto& [to, row] : it->second) {
        const auto p = position.find(to);
        if (p == position.end() || p->second < t) {
          ok = false;
          break;
        }
        offsets[t].push_back(p->second - t);
        evidence.push_back(row);
      }
      std::sort(offsets[t].begin(), offsets[t].end());
      if (!offsets[t].empty()) min_run = std::max(min_run, offsets[t].back() + 1);
    }
    if (!ok || min_run < 1) continue;
    for (int t = 0; t < horizon && ok; ++t) {
      const int expected = std::min(min_run, horizon - t);
      if (static_cast<int>(offsets[t].size()) != expected) ok = false;
      for (int k = 0; k < expected && ok; ++k) {
        if (offsets[t][k] != k) ok = false;
      }
    }
    if (!ok) continue;
    params.min_run = min_run;
    // Maximum run: every window of U+1 consecutive states sums to <= U.
    std::map<int, std::vector<std::pair<int, RowId>>> windows;  // length -> (start, row)
    std::set<RowId> window_rows;
    for (VarId x : params.states) {
      for (RowId e : ctx.rows_of(x)) {
        const auto& sum = ctx.unit_sum(e);
        if (!sum || sum->lower != 0.0 || sum->vars.size() < 2) continue;
        if (sum->upper != static_cast<double>(sum->vars.size()) - 1) continue;
        window_rows.insert(e);
      }
    }
    for (RowId e : window_rows) {
      std::vector<int> pos;
      for (VarId v : ctx.unit_sum(e)->vars) {
        const auto p = position.find(v);
        if (p == position.end()) {
          pos.clear();
          break;
        }
        pos.push_back(p->second);
      }
      if (pos.empty()) continue;
      std::sort(pos.begin(), pos.end());
      if (pos.back() - pos.front() + 1 != static_cast<int>(pos.size())) continue;
      windows[static_cast<int>(pos.size())].push_back({pos.front(), e});
    }
    // Start exclusivity rows mix a start with a state, so they never pass
    // the all-states test above.
    for (const auto& [length, list] : windows) {
      if (static_cast<int>(list.size()) != horizon - length + 1) continue;
      std::set<int> starts;
      for (const auto& [s, row] : list) starts.insert(s);
      if (static_cast<int>(starts.size()) != horizon - length + 1) continue;
      if (params.max_run == 0 || length - 1 < params.max_run) {
        params.max_run = length - 1;
      }
    }
    if (params.max_run > 0) {
      for (const auto& [s, row] : windows[params.max_run + 1]) {
        evidence.push_back(row);
      }
    }
    out.push_back(make_record(std::move(params), std::move(evidence)));
  }
  return out;
}

}  // namespace structprop::detail
