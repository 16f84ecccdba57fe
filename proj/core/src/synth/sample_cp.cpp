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

// Generators for the classic CP families, each emitting the MIP encoding
// the matching detector looks for.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "synth/builder.hpp"

namespace structprop::detail {
namespace {

// `count` distinct integers drawn from [lo, hi], ascending.
std::vector<int> distinct_values(Rng& rng, int count, int lo, int hi) {
  std::vector<int> pool(hi - lo + 1);
  std::iota(pool.begin(), pool.end(), lo);
  rng.shuffle(pool);
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<Term> unit_terms(const std::vector<VarId>& vars, double coef = 1.0) {
  std::vector<Term> terms;
  for (VarId v : vars) terms.push_back({v, coef});
  return terms;
}

}  // namespace

int pick_size(Rng& rng, int value, int lo, int hi, const char* what) {
  if (value == 0) return rng.uniform(lo, hi);
  if (value < lo || value > hi) {
    throw std::invalid_argument(std::string(what) + " must lie in [" +
                                std::to_string(lo) + ", " + std::to_string(hi) +
                                "], got " + std::to_string(value));
  }
  return value;
}

std::optional<Draft> sample_all_different(Rng& rng, const SynthSize& size) {
  const int items = pick_size(rng, size.n, 2, 3, "items");
  int values = size.m;
  if (values == 0) {
    values = size.n != 0 ? items : rng.uniform(items, std::max(items, 12 / items));
  }
  if (values < items || items * values > 12) {
    throw std::invalid_argument("AllDifferent needs items <= values and at "
                                "most 12 cells");
  }
  Draft d;
  Builder& b = d.builder;
  std::vector<int> assign(values);
  std::iota(assign.begin(), assign.end(), 0);
  rng.shuffle(assign);
  AllDifferentParams params;
  params.values_exact = items == values;
  params.cells.assign(items, std::vector<VarId>(values));
  for (int i = 0; i < items; ++i) {
    for (int v = 0; v < values; ++v) {
      params.cells[i][v] = b.binary(assign[i] == v ? 1.0 : 0.0);
    }
  }
  for (int i = 0; i < items; ++i) {
    d.evidence.push_back(b.eq(unit_terms(params.cells[i]), 1.0));
  }
  for (int v = 0; v < values; ++v) {
    std::vector<VarId> column;
    for (int i = 0; i < items; ++i) column.push_back(params.cells[i][v]);
    d.evidence.push_back(params.values_exact ? b.eq(unit_terms(column), 1.0)
                                             : b.leq(unit_terms(column), 1.0));
  }
  d.params = std::move(params);
  return d;
}

std::optional<Draft> sample_cardinality(Rng& rng, const SynthSize& size) {
  const int n = pick_size(rng, size.n, 3, 12, "binaries");
  Draft d;
  Builder& b = d.builder;
  std::vector<VarId> vars;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    const int value = rng.uniform(0, 1);
    ones += value;
    vars.push_back(b.binary(value));
  }
  const int lower = rng.uniform(0, ones);
  const int upper = rng.uniform(ones, n);
  if (lower == 0 && upper == n) return std::nullopt;
  const double lhs = lower == 0 ? -kInfinity : lower;
  const double rhs = upper == n ? kInfinity : upper;
  d.evidence.push_back(b.row(unit_terms(vars), lhs, rhs));
  d.params = CardinalityParams{vars, static_cast<double>(lower),
                               static_cast<double>(upper)};
  return d;
}

std::optional<Draft> sample_channel(Rng& rng, const SynthSize& size) {
  const int count = pick_size(rng, size.n, 3, 6, "values");
  // A second channelled variable fits the enumeration budget only when
  // both stay small.
  const int links = count == 3 && rng.chance(0.5) ? 2 : 1;
  Draft d;
  Builder& b = d.builder;
  ChannelParams params;
  for (int l = 0; l < links; ++l) {
    const int span = links == 2 ? 2 : rng.uniform(std::max(2, count - 1), 9);
    const int base = rng.uniform(0, 9 - span);
    // Both ends are always used, so x keeps a non-binary range.
    std::vector<int> inner =
        span - 1 >= count - 2
            ? distinct_values(rng, count - 2, base + 1, base + span - 1)
            : std::vector<int>{};
    std::vector<int> values = {base};
    values.insert(values.end(), inner.begin(), inner.end());
    values.push_back(base + span);
    const int chosen = rng.uniform(0, count - 1);
    const VarId x = b.integer(base, base + span, values[chosen]);
    ChannelLink link;
    link.var = x;
    std::vector<Term> link_terms = {{x, 1.0}};
    std::vector<VarId> ys;
    for (int k = 0; k < count; ++k) {
      const VarId y = b.binary(k == chosen ? 1.0 : 0.0);
      ys.push_back(y);
      link.indicators.push_back({y, static_cast<double>(values[k])});
      if (values[k] != 0) link_terms.push_back({y, -static_cast<double>(values[k])});
    }
    link.link_row = b.eq(link_terms, 0.0);
    link.choice_row = b.eq(unit_terms(ys), 1.0);
    d.evidence.push_back(link.link_row);
    d.evidence.push_back(link.choice_row);
    params.links.push_back(std::move(link));
  }
  d.params = std::move(params);
  return d;
}

std::optional<Draft> sample_cumulative(Rng& rng, const SynthSize& size) {
  const int tasks = pick_size(rng, size.n, 2, 3, "tasks");
  const int horizon = rng.uniform(3, 5);
  Draft d;
  Builder& b = d.builder;
  struct Plan {
    int demand;
    int duration;
    std::vector<int> times;
    std::vector<VarId> vars;
  };
  std::vector<Plan> plans(tasks);
  for (int k = 0; k < tasks; ++k) {
    Plan& p = plans[k];
    p.demand = rng.uniform(1, 4);
    p.duration = k == 0 ? rng.uniform(2, std::min(3, horizon - 1))
                        : rng.uniform(1, std::min(3, horizon - 1));
    const int slots = horizon - p.duration + 1;
    const int count = rng.uniform(2, std::min(4, slots));
    p.times = distinct_values(rng, count, 0, slots - 1);
    const int chosen = rng.uniform(0, count - 1);
    for (int s = 0; s < count; ++s) p.vars.push_back(b.binary(s == chosen ? 1.0 : 0.0));
  }
  CumulativeParams params;
  for (int k = 0; k < tasks; ++k) {
    CumulativeTask task;
    task.demand = plans[k].demand;
    task.duration = plans[k].duration;
    task.choice_row = b.eq(unit_terms(plans[k].vars), 1.0);
    for (VarId v : plans[k].vars) task.starts.push_back({v, {}});
    params.tasks.push_back(std::move(task));
  }
  // One capacity row per covered period.
  std::vector<std::vector<Term>> period_terms(horizon);
  std::vector<std::set<int>> period_tasks(horizon);
  for (int k = 0; k < tasks; ++k) {
    for (std::size_t s = 0; s < plans[k].times.size(); ++s) {
      for (int t = plans[k].times[s]; t < plans[k].times[s] + plans[k].duration; ++t) {
        period_terms[t].push_back({plans[k].vars[s], static_cast<double>(plans[k].demand)});
        period_tasks[t].insert(k);
      }
    }
  }
  // Tasks must be linked through shared periods.
  std::vector<int> comp(tasks);
  std::iota(comp.begin(), comp.end(), 0);
  for (int t = 0; t < horizon; ++t) {
    if (period_tasks[t].size() < 2) continue;
    const int first = comp[*period_tasks[t].begin()];
    for (int k : period_tasks[t]) {
      const int old = comp[k];
      for (int& c : comp) {
        if (c == old) c = first;
      }
    }
  }
  if (std::any_of(comp.begin(), comp.end(), [&](int c) { return c != comp[0]; })) {
    return std::nullopt;
  }
  double capacity = 0.0;
  for (int t = 0; t < horizon; ++t) {
    capacity = std::max(capacity, b.value(period_terms[t]));
  }
  if (capacity < 1.0) return std::nullopt;
  std::map<VarId, std::vector<RowId>> periods;
  for (int t = 0; t < horizon; ++t) {
    if (period_terms[t].empty()) continue;
    if (b.activity(period_terms[t]).max_activity <= capacity) return std::nullopt;
    const RowId r = b.leq(period_terms[t], capacity);
    params.capacities.push_back({r, capacity});
    d.evidence.push_back(r);
    for (const Term& term : period_terms[t]) periods[term.var].push_back(r);
  }
  for (auto& task : params.tasks) {
    d.evidence.push_back(task.choice_row);
    for (auto& s : task.starts) s.periods = periods[s.var];
  }
  d.params = std::move(params);
  return d;
}

std::optional<Draft> sample_nvalue(Rng& rng, const SynthSize& size) {
  const int items = pick_size(rng, size.n, 2, 3, "items");
  const int max_values = items == 3 ? 2 : 3;
  const int values = pick_size(rng, size.m, 2, max_values, "values");
  Draft d;
  Builder& b = d.builder;
  std::vector<int> choice(items);
  std::set<int> used;
  for (int i = 0; i < items; ++i) {
    choice[i] = rng.uniform(0, values - 1);
    used.insert(choice[i]);
  }
  NValueParams params;
  std::vector<std::vector<VarId>> y(items, std::vector<VarId>(values));
  for (int i = 0; i < items; ++i) {
    for (int v = 0; v < values; ++v) y[i][v] = b.binary(choice[i] == v ? 1.0 : 0.0);
    params.items.push_back(y[i]);
  }
  std::vector<VarId> z(values);
  for (int v = 0; v < values; ++v) z[v] = b.binary(used.count(v) != 0 ? 1.0 : 0.0);
  params.count = b.integer(0, values, static_cast<double>(used.size()));
  params.upper_links = rng.chance(0.5);
  for (int i = 0; i < items; ++i) {
    d.evidence.push_back(b.eq(unit_terms(y[i]), 1.0));
  }
  for (int v = 0; v < values; ++v) {
    NValueValue value;
    value.indicator = z[v];
    std::vector<Term> upper = {{z[v], 1.0}};
    for (int i = 0; i < items; ++i) {
      value.uses.push_back(y[i][v]);
      d.evidence.push_back(b.leq({{y[i][v], 1.0}, {z[v], -1.0}}, 0.0));
      upper.push_back({y[i][v], -1.0});
    }
    if (params.upper_links) d.evidence.push_back(b.leq(upper, 0.0));
    params.values.push_back(std::move(value));
  }
  std::vector<Term> count_terms = unit_terms(z);
  count_terms.push_back({params.count, -1.0});
  d.evidence.push_back(b.eq(count_terms, 0.0));
  d.params = std::move(params);
  return d;
}

std::optional<Draft> sample_stretch(Rng& rng, const SynthSize& size) {
  const int horizon = pick_size(rng, size.n, 3, 6, "periods");
  const int min_run = rng.uniform(1, std::min(3, horizon - 1));
  const int max_run =
      rng.chance(0.5) ? rng.uniform(std::max(min_run, 1), horizon - 1) : 0;
  // Rejection-sample a state sequence whose runs respect both limits;
  // runs cut by the horizon may be short.
  std::vector<int> x(horizon);
  bool valid = false;
  for (int attempt = 0; attempt < 200 && !valid; ++attempt) {
    for (int& v : x) v = rng.uniform(0, 1);
    valid = true;
    int run = 0;
    for (int t = 0; t <= horizon; ++t) {
      if (t < horizon && x[t] == 1) {
        ++run;
        if (max_run > 0 && run > max_run) valid = false;
      } else {
        if (run > 0 && run < min_run && t < horizon) valid = false;
        run = 0;
      }
    }
  }
  if (!valid) return std::nullopt;
  Draft d;
  Builder& b = d.builder;
  StretchParams params;
  params.min_run = min_run;
  params.max_run = max_run;
  for (int t = 0; t < horizon; ++t) params.states.push_back(b.binary(x[t]));
  for (int t = 0; t < horizon; ++t) {
    const bool start = x[t] == 1 && (t == 0 || x[t - 1] == 0);
    params.starts.push_back(b.binary(start ? 1.0 : 0.0));
  }
  const auto& xs = params.states;
  const auto& ss = params.starts;
  d.evidence.push_back(b.leq({{xs[0], 1.0}, {ss[0], -1.0}}, 0.0));
  for (int t = 1; t < horizon; ++t) {
    d.evidence.push_back(
        b.leq({{xs[t], 1.0}, {xs[t - 1], -1.0}, {ss[t], -1.0}}, 0.0));
    d.evidence.push_back(b.leq({{ss[t], 1.0}, {xs[t - 1], 1.0}}, 1.0));
  }
  for (int t = 0; t < horizon; ++t) {
    for (int k = 0; k < min_run && t + k < horizon; ++k) {
      d.evidence.push_back(b.leq({{ss[t], 1.0}, {xs[t + k], -1.0}}, 0.0));
    }
  }
  if (max_run > 0) {
    for (int t = 0; t + max_run < horizon; ++t) {
      std::vector<VarId> window(xs.begin() + t, xs.begin() + t + max_run + 1);
      d.evidence.push_back(b.leq(unit_terms(window), max_run));
    }
  }
  d.params = std::move(params);
  return d;
}

}  // namespace structprop::detail
