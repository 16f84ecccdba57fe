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

// Generators for the multi-row patterns.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "synth/builder.hpp"

namespace structprop::detail {
namespace {

std::vector<Term> unit_terms(const std::vector<VarId>& vars) {
  std::vector<Term> terms;
  for (VarId v : vars) terms.push_back({v, 1.0});
  return terms;
}

template <typename T>
std::uint8_t tag(T role) {
  return static_cast<std::uint8_t>(role);
}

}  // namespace

std::optional<Draft> sample_one_hot_resource(Rng& rng, const SynthSize& size) {
  const int groups = pick_size(rng, size.n, 2, 3, "groups");
  const int options = pick_size(rng, size.m, 2, groups == 3 ? 4 : 6, "options");
  Draft d;
  Builder& b = d.builder;
  OneHotResourceParams params;
  std::vector<Term> budget;
  for (int g = 0; g < groups; ++g) {
    const int chosen = rng.uniform(0, options - 1);
    std::vector<VarId> vars;
    std::vector<OneHotOption> group;
    for (int k = 0; k < options; ++k) {
      const VarId x = b.binary(k == chosen ? 1.0 : 0.0);
      const double cost = rng.uniform(1, 9);
      vars.push_back(x);
      group.push_back({x, cost});
      budget.push_back({x, cost});
    }
    d.evidence.push_back(b.eq(unit_terms(vars), 1.0));
    params.groups.push_back(std::move(group));
  }
  // An optional general integer outside the groups shifts the budget.
  if (groups * options <= 10 && rng.chance(0.5)) {
    const int lo = rng.uniform(0, 2);
    const VarId w = b.integer(lo, lo + 2, lo + rng.uniform(0, 2));
    const int coef = rng.nonzero(3);
    budget.push_back({w, static_cast<double>(coef)});
    params.external_min = coef > 0 ? coef * lo : coef * (lo + 2);
  }
  params.budget = b.value(budget) + rng.uniform(0, 3);
  if (params.budget >= b.activity(budget).max_activity) return std::nullopt;
  d.evidence.push_back(b.leq(budget, params.budget));
  d.params = std::move(params);
  return d;
}

std::optional<Draft> sample_bottleneck(Rng& rng, const SynthSize& size) {
  const int groups = pick_size(rng, size.n, 2, 4, "groups");
  const int options = pick_size(rng, size.m, 2, 9 / groups, "options");
  if (groups * options > 9) {
    throw std::invalid_argument("BottleneckExactOne allows at most 9 selectors");
  }
  const bool activators = groups * options + options <= 12 && rng.chance(0.5);
  Draft d;
  Builder& b = d.builder;
  std::vector<int> open(options, 1);
  int open_count = options;
  if (activators) {
    open_count = rng.uniform(1, options - 1);
    std::vector<int> order(options);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (int j = 0; j < options; ++j) open[order[j]] = j < open_count ? 1 : 0;
  }
  std::vector<std::vector<int>> weight(groups, std::vector<int>(options));
  std::vector<int> chosen(groups);
  int witness_z = 0;
  int heaviest = 0;
  for (int i = 0; i < groups; ++i) {
    std::vector<int> allowed;
    for (int j = 0; j < options; ++j) {
      weight[i][j] = rng.uniform(1, 9);
      heaviest = std::max(heaviest, weight[i][j]);
      if (open[j] == 1) allowed.push_back(j);
    }
    chosen[i] = allowed[rng.uniform(0, static_cast<int>(allowed.size()) - 1)];
    witness_z = std::max(witness_z, weight[i][chosen[i]]);
  }
  BottleneckExactOneParams params;
  params.bottleneck = b.continuous(0.0, heaviest + rng.uniform(0, 3), witness_z);
  std::vector<std::vector<VarId>> x(groups, std::vector<VarId>(options));
  for (int i = 0; i < groups; ++i) {
    for (int j = 0; j < options; ++j) x[i][j] = b.binary(chosen[i] == j ? 1.0 : 0.0);
  }
  if (activators) {
    for (int j = 0; j < options; ++j) params.activators.push_back(b.binary(open[j]));
    params.open_count = open_count;
  }
  for (int i = 0; i < groups; ++i) {
    d.evidence.push_back(b.eq(unit_terms(x[i]), 1.0));
    std::vector<BottleneckOption> group;
    for (int j = 0; j < options; ++j) {
      BottleneckOption opt;
      opt.selector = x[i][j];
      opt.weight = weight[i][j];
      d.evidence.push_back(b.leq(
          {{x[i][j], static_cast<double>(weight[i][j])}, {params.bottleneck, -1.0}},
          0.0));
      if (activators) {
        opt.activator = params.activators[j];
        d.evidence.push_back(b.leq({{x[i][j], 1.0}, {params.activators[j], -1.0}}, 0.0));
      }
      group.push_back(opt);
    }
    params.groups.push_back(std::move(group));
  }
  if (activators) {
    d.evidence.push_back(b.eq(unit_terms(params.activators), open_count));
  }
  d.params = std::move(params);
  return d;
}

std::optional<Draft> sample_rostering(Rng& rng, const SynthSize& size) {
  constexpr int kShifts = 2;
  const int nurses = pick_size(rng, size.n, 2, 3, "nurses");
  const int days = pick_size(rng, size.m, 2, nurses == 3 ? 2 : 3, "days");
  Draft d;
  Builder& b = d.builder;
  // Every shift of every day is covered by a different nurse; the rest
  // work a random shift or rest.
  std::vector<std::vector<int>> shift(nurses, std::vector<int>(days, -1));
  for (int day = 0; day < days; ++day) {
    std::vector<int> order(nurses);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (int k = 0; k < nurses; ++k) {
      shift[order[k]][day] = k < kShifts ? k : rng.uniform(-1, kShifts - 1);
    }
  }
  using Grid = std::vector<std::vector<std::vector<VarId>>>;
  Grid x(nurses, std::vector<std::vector<VarId>>(days, std::vector<VarId>(kShifts)));
  for (int n = 0; n < nurses; ++n) {
    for (int day = 0; day < days; ++day) {
      for (int s = 0; s < kShifts; ++s) x[n][day][s] = b.binary(shift[n][day] == s);
    }
  }
  RosteringWindowParams params;
  auto add = [&](RowId r, RosterRole role) {
    params.block.push_back({r, tag(role)});
    d.evidence.push_back(r);
  };
  for (int n = 0; n < nurses; ++n) {
    for (int day = 0; day < days; ++day) {
      params.shift_choices.push_back(x[n][day]);
      add(b.leq(unit_terms(x[n][day]), 1.0), RosterRole::kShiftChoice);
    }
  }
  for (int day = 0; day < days; ++day) {
    for (int s = 0; s < kShifts; ++s) {
      std::vector<VarId> vars;
      int covered = 0;
      for (int n = 0; n < nurses; ++n) {
        vars.push_back(x[n][day][s]);
        covered += shift[n][day] == s;
      }
      const int req = rng.uniform(1, covered);
      params.coverage.push_back({vars, static_cast<double>(req),
                                 static_cast<double>(nurses)});
      add(b.geq(unit_terms(vars), req), RosterRole::kDemand);
    }
  }
  for (int n = 0; n < nurses; ++n) {
    std::vector<VarId> all;
    int worked = 0;
    for (int day = 0; day < days; ++day) {
      all.insert(all.end(), x[n][day].begin(), x[n][day].end());
      worked += shift[n][day] >= 0;
    }
    // The hours cap links the nurse's days, which is how nurses are told
    // apart from one another.
    const int cap = std::min(days * kShifts - 1,
                             std::max(2, worked) + rng.uniform(0, 1));
    add(b.leq(unit_terms(all), cap), RosterRole::kHoursUpper);
    if (worked >= 1 && rng.chance(0.4)) {
      add(b.geq(unit_terms(all), rng.uniform(1, worked)), RosterRole::kHoursLower);
    }
    if (days >= 3 && rng.chance(0.5)) {
      for (int day = 0; day + 1 < days; ++day) {
        if (shift[n][day] < 0 && shift[n][day + 1] < 0) continue;
        std::vector<VarId> window = x[n][day];
        window.insert(window.end(), x[n][day + 1].begin(), x[n][day + 1].end());
        add(b.geq(unit_terms(window), 1.0), RosterRole::kRestWindow);
      }
    }
  }
  // A non-unit row over one nurse's shifts on two days.
  if (rng.chance(0.5)) {
    const int n = rng.uniform(0, nurses - 1);
    const int day = rng.uniform(0, days - 2);
    std::vector<Term> terms = {{x[n][day][rng.uniform(0, kShifts - 1)], 2.0},
                               {x[n][day + 1][rng.uniform(0, kShifts - 1)],
                                static_cast<double>(rng.uniform(1, 3))}};
    const double rhs = b.activity(terms).max_activity - 1.0;
    if (b.value(terms) <= rhs) add(b.leq(terms, rhs), RosterRole::kOther);
  }
  d.params = std::move(params);
  return d;
}

std::optional<Draft> sample_unit_commitment(Rng& rng, const SynthSize& size) {
  const int units = pick_size(rng, size.n, 1, 2, "units");
  const int horizon = pick_size(rng, size.m, 2, units == 2 ? 2 : 4, "periods");
  const bool reserves = rng.chance(0.5);
  const bool ramps = rng.chance(0.6);
  Draft d;
  Builder& b = d.builder;

  struct Plan {
    int p_min;
    int p_max;
    int min_up;
    std::vector<int> on;
    std::vector<int> power;
    std::vector<int> reserve;
  };
  std::vector<Plan> plans(units);
  for (Plan& p : plans) {
    p.p_max = rng.uniform(3, 9);
    p.p_min = rng.uniform(1, p.p_max - 1);
    p.min_up = rng.uniform(1, 2);
    p.on.resize(horizon);
    for (int& u : p.on) u = rng.uniform(0, 1);
  }
  for (int t = 0; t < horizon; ++t) {
    bool any = false;
    for (const Plan& p : plans) any = any || p.on[t] == 1;
    if (!any) plans[rng.uniform(0, units - 1)].on[t] = 1;
  }
  for (Plan& p : plans) {
    for (int t = 1; t < horizon; ++t) {
      if (p.on[t] == 1 && p.on[t - 1] == 0) {
        for (int tau = t; tau < std::min(horizon, t + p.min_up); ++tau) {
          if (p.on[tau] == 0) p.min_up = 1;
        }
      }
    }
    for (int t = 0; t < horizon; ++t) {
      int pw = 0;
      int rs = 0;
      if (p.on[t] == 1) {
        pw = rng.uniform(p.p_min, reserves ? p.p_max - 1 : p.p_max);
        if (reserves) rs = rng.uniform(1, p.p_max - pw);
      }
      p.power.push_back(pw);
      p.reserve.push_back(rs);
    }
  }

  UnitCommitmentRampParams params;
  auto add = [&](RowId r, UcRole role) {
    params.rows.push_back({r, tag(role)});
    d.evidence.push_back(r);
  };
  for (const Plan& p : plans) {
    UnitSchedule unit;
    for (int t = 0; t < horizon; ++t) {
      unit.status.push_back(b.binary(p.on[t]));
      if (t == 0) {
        unit.startup.push_back(-1);
        unit.shutdown.push_back(-1);
      } else {
        unit.startup.push_back(b.binary(p.on[t] == 1 && p.on[t - 1] == 0));
        unit.shutdown.push_back(b.binary(p.on[t] == 0 && p.on[t - 1] == 1));
      }
      unit.power.push_back(b.continuous(0.0, p.p_max, p.power[t]));
      if (reserves) unit.reserve.push_back(b.continuous(0.0, p.p_max, p.reserve[t]));
    }
    unit.p_min = p.p_min;
    unit.p_max = p.p_max;
    params.units.push_back(std::move(unit));
  }
  for (std::size_t g = 0; g < plans.size(); ++g) {
    const Plan& p = plans[g];
    UnitSchedule& unit = params.units[g];
    for (int t = 1; t < horizon; ++t) {
      add(b.eq({{unit.status[t], 1.0}, {unit.status[t - 1], -1.0},
                {unit.startup[t], -1.0}, {unit.shutdown[t], 1.0}},
               0.0),
          UcRole::kLogic);
      for (int tau = t; tau < std::min(horizon, t + p.min_up); ++tau) {
        add(b.leq({{unit.startup[t], 1.0}, {unit.status[tau], -1.0}}, 0.0),
            UcRole::kMinUp);
      }
      add(b.leq({{unit.status[t], 1.0}, {unit.shutdown[t], 1.0}}, 1.0),
          UcRole::kLogic);
    }
    for (int t = 0; t < horizon; ++t) {
      const VarId u = unit.status[t];
      const VarId pw = unit.power[t];
      add(b.leq({{pw, 1.0}, {u, -static_cast<double>(p.p_max)}}, 0.0),
          UcRole::kLink);
      add(b.leq({{u, static_cast<double>(p.p_min)}, {pw, -1.0}}, 0.0),
          UcRole::kLink);
      if (reserves) {
        add(b.leq({{pw, 1.0}, {unit.reserve[t], 1.0},
                   {u, -static_cast<double>(p.p_max)}},
                  0.0),
            UcRole::kLink);
      }
    }
    if (ramps) {
      // Smallest integer rates the witness needs, plus some slack.
      int need_up = 1;
      int need_start = 1;
      for (int t = 1; t < horizon; ++t) {
        const int rise = p.power[t] - p.power[t - 1];
        if (p.on[t - 1] == 1) need_up = std::max(need_up, rise);
        if (p.on[t - 1] == 0 && p.on[t] == 1) need_start = std::max(need_start, rise);
      }
      unit.ramp_up = need_up + rng.uniform(0, 2);
      unit.startup_ramp = need_start + rng.uniform(0, 2);
      for (int t = 1; t < horizon; ++t) {
        add(b.leq({{unit.power[t], 1.0}, {unit.power[t - 1], -1.0},
                   {unit.status[t - 1], -unit.ramp_up},
                   {unit.startup[t], -unit.startup_ramp}},
                  0.0),
            UcRole::kRamp);
      }
    }
  }
  for (int t = 0; t < horizon; ++t) {
    std::vector<VarId> power;
    std::vector<VarId> reserve;
    int total_power = 0;
    int total_reserve = 0;
    for (std::size_t g = 0; g < plans.size(); ++g) {
      power.push_back(params.units[g].power[t]);
      total_power += plans[g].power[t];
      if (reserves) {
        reserve.push_back(params.units[g].reserve[t]);
        total_reserve += plans[g].reserve[t];
      }
    }
    const int demand = rng.uniform(1, total_power);
    params.demand.push_back(demand);
    add(b.geq(unit_terms(power), demand), UcRole::kDemand);
    if (reserves) {
      const int level = rng.uniform(1, total_reserve);
      params.reserve.push_back(level);
      add(b.geq(unit_terms(reserve), level), UcRole::kReserve);
    }
  }
  d.params = std::move(params);
  return d;
}

std::optional<Draft> sample_disjunction(Rng& rng, const SynthSize& size) {
  const int branches = pick_size(rng, size.n, 2, 6, "branches");
  constexpr int kUpper = 7;
  Draft d;
  Builder& b = d.builder;
  const std::vector<VarId> xs = {b.integer(0, kUpper, rng.uniform(0, kUpper)),
                                 b.integer(0, kUpper, rng.uniform(0, kUpper))};
  const int active = rng.uniform(0, branches - 1);
  DisjPolyhedralParams params;
  std::vector<VarId> selectors;
  if (branches == 2) {
    params.variant = DisjVariant::kBinarySelector;
    const VarId y = b.binary(active);
    selectors = {y, y};
  } else {
    params.variant = DisjVariant::kExactOneMode;
    for (int k = 0; k < branches; ++k) selectors.push_back(b.binary(k == active));
  }
  std::set<VarId> touched;
  for (int k = 0; k < branches; ++k) {
    DisjBranch branch;
    branch.selector = selectors[k];
    branch.selector_value = params.variant == DisjVariant::kBinarySelector ? k : 1;
    // Each branch holds at its own anchor point; the active one at the
    // witness.
    std::vector<double> anchor = {b.witness[xs[0]], b.witness[xs[1]]};
    if (k != active) anchor = {1.0 * rng.uniform(0, kUpper), 1.0 * rng.uniform(0, kUpper)};
    const int rows = rng.uniform(1, 2);
    for (int r = 0; r < rows; ++r) {
      const int mask = rng.uniform(1, 3);
      std::vector<Term> terms;
      double at_anchor = 0.0;
      for (int j = 0; j < 2; ++j) {
        if ((mask >> j & 1) == 0) continue;
        const double coef = rng.nonzero(3);
        terms.push_back({xs[j], coef});
        at_anchor += coef * anchor[j];
        touched.insert(xs[j]);
      }
      const double rhs = at_anchor + rng.uniform(0, 2);
      const double max_act = b.activity(terms).max_activity;
      if (rhs >= max_act) return std::nullopt;
      const double big_m = max_act - rhs + rng.uniform(0, 2);
      std::vector<Term> row = terms;
      RowId id;
      if (branch.selector_value == 1) {
        row.push_back({branch.selector, big_m});
        id = b.leq(row, rhs + big_m);
      } else {
        row.push_back({branch.selector, -big_m});
        id = b.leq(row, rhs);
      }
      branch.rows.push_back({id, terms, rhs});
      d.evidence.push_back(id);
    }
    params.branches.push_back(std::move(branch));
  }
  if (params.variant == DisjVariant::kExactOneMode) {
    if (touched.size() < 2) return std::nullopt;
    params.mode_row = b.eq(unit_terms(selectors), 1.0);
    d.evidence.push_back(params.mode_row);
  }
  params.touched.assign(touched.begin(), touched.end());
  d.params = std::move(params);
  return d;
}

}  // namespace structprop::detail
