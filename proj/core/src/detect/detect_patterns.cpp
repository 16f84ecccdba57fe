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

// Detectors for the multi-row patterns: one-hot groups under a shared
// budget, bottleneck selection, rostering blocks, unit commitment with ramps
// and big-M disjunctions.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "detect/context.hpp"

namespace structprop::detail {
namespace {

// Exact-one rows with >= 2 binaries, and the row of each variable; variables
// in more than one such row are left out of the map.
struct ExactOneGroups {
  std::vector<RowId> rows;
  std::unordered_map<VarId, RowId> row_of;
};

ExactOneGroups exact_one_groups(const DetectContext& ctx) {
  ExactOneGroups g;
  std::set<VarId> ambiguous;
  for (RowId r : ctx.rows()) {
    if (!ctx.is_exact_one(r) || ctx.unit_sum(r)->vars.size() < 2) continue;
    g.rows.push_back(r);
    for (VarId v : ctx.unit_sum(r)->vars) {
      if (!g.row_of.emplace(v, r).second) ambiguous.insert(v);
    }
  }
  for (VarId v : ambiguous) g.row_of.erase(v);
  return g;
}

bool is_continuous(const DetectContext& ctx, VarId var) {
  return !ctx.model().variables[var].is_integral();
}

}  // namespace

std::vector<SemanticRecord> detect_one_hot_resource(const DetectContext& ctx) {
  const ExactOneGroups groups = exact_one_groups(ctx);
  if (groups.rows.size() < 2) return {};

  struct Candidate {
    RowId row;
    std::vector<RowId> group_rows;
    OneHotResourceParams params;
  };
  std::vector<Candidate> cands;
  for (RowId r : ctx.rows()) {
    const auto leq = ctx.leq_form(r);
    if (!leq) continue;
    std::map<RowId, int> hits;
    for (const Term& t : leq->terms) {
      const auto it = groups.row_of.find(t.var);
      if (it != groups.row_of.end()) ++hits[it->second];
    }
    Candidate cand{r, {}, {}};
    std::set<VarId> inside;
    for (const auto& [g, count] : hits) {
      const auto& vars = ctx.unit_sum(g)->vars;
      if (count != static_cast<int>(vars.size())) continue;
      cand.group_rows.push_back(g);
      inside.insert(vars.begin(), vars.end());
    }
    if (cand.group_rows.size() < 2) continue;
    std::vector<Term> outside;
    std::map<VarId, double> cost;
    for (const Term& t : leq->terms) {
      if (inside.count(t.var) != 0) {
        cost[t.var] = t.coef;
      } else {
        outside.push_back(t);
      }
    }
    const double r_min = compute_activity(outside, ctx.box()).min_activity;
    if (!std::isfinite(r_min)) continue;
    for (RowId g : cand.group_rows) {
      std::vector<OneHotOption> options;
      for (VarId v : ctx.unit_sum(g)->vars) options.push_back({v, cost.at(v)});
      cand.params.groups.push_back(std::move(options));
    }
    cand.params.budget = leq->rhs;
    cand.params.external_min = r_min;
    cands.push_back(std::move(cand));
  }
  // A group shared by two budget rows is ambiguous; drop every claimant.
  std::map<RowId, int> claims;
  for (const auto& c : cands) {
    for (RowId g : c.group_rows) ++claims[g];
  }
  std::vector<SemanticRecord> out;
  for (auto& c : cands) {
    bool unique = true;
    for (RowId g : c.group_rows) unique = unique && claims[g] == 1;
    if (!unique) continue;
    std::vector<RowId> evidence = c.group_rows;
    evidence.push_back(c.row);
    out.push_back(make_record(std::move(c.params), std::move(evidence)));
  }
  return out;
}

std::vector<SemanticRecord> detect_bottleneck(const DetectContext& ctx) {
  const DetectConfig& config = ctx.config();
  const ExactOneGroups groups = exact_one_groups(ctx);
  if (groups.rows.size() < 2) return {};

  // Link rows w x - z <= 0 grouped by z.
  struct Link {
    double weight;
    RowId row;
  };
  std::map<VarId, std::map<VarId, Link>> links;
  std::set<std::pair<VarId, VarId>> duplicate;
  for (RowId r : ctx.rows()) {
    const auto leq = ctx.leq_form(r);
    if (!leq || leq->rhs != 0.0 || leq->terms.size() != 2) continue;
    const Term* x = nullptr;
    const Term* z = nullptr;
    for (const Term& t : leq->terms) {
      if (ctx.is_binary(t.var)) {
        x = &t;
      } else {
        z = &t;
      }
    }
    if (x == nullptr || z == nullptr || x->coef <= 0 || z->coef >= 0) continue;
    const double w = x->coef / -z->coef;
    if (!links[z->var].emplace(x->var, Link{w, r}).second) {
      duplicate.insert({z->var, x->var});
    }
  }

  struct Candidate {
    BottleneckExactOneParams params;
    std::vector<RowId> group_rows;
    std::vector<RowId> evidence;
  };
  std::vector<Candidate> cands;
  for (auto& [z, linked] : links) {
    bool ok = true;
    std::set<RowId> group_rows;
    for (const auto& [x, link] : linked) {
      if (duplicate.count({z, x}) != 0) ok = false;
      const auto it = groups.row_of.find(x);
      if (it == groups.row_of.end()) {
        ok = false;
        break;
      }
      group_rows.insert(it->second);
    }
    if (!ok || group_rows.size() < 2) continue;
    Candidate cand;
    cand.params.bottleneck = z;
    int pairs = 0;
    int covered = 0;
    for (RowId g : group_rows) {
      const auto& vars = ctx.unit_sum(g)->vars;
      if (vars.size() < 2) ok = false;
      std::vector<BottleneckOption> options;
      for (VarId x : vars) {
        BottleneckOption opt;
        opt.selector = x;
        ++pairs;
        const auto it = linked.find(x);
        if (it != linked.end()) {
          opt.weight = it->second.weight;
          cand.evidence.push_back(it->second.row);
          ++covered;
        }
        options.push_back(opt);
      }
      cand.params.groups.push_back(std::move(options));
      cand.group_rows.push_back(g);
      cand.evidence.push_back(g);
    }
    if (!ok || pairs == 0 ||
        covered < config.bottleneck_link_coverage * pairs - 1e-12) {
      continue;
    }
    // Activators: selector -> y implications whose targets form one
    // cardinality equality sum(y) = p.
    std::map<VarId, std::vector<std::pair<VarId, RowId>>> targets;
    std::set<VarId> selectors;
    for (const auto& group : cand.params.groups) {
      for (const auto& opt : group) selectors.insert(opt.selector);
    }
    std::set<VarId> ys;
    for (VarId x : selectors) {
      for (RowId e : ctx.rows_of(x)) {
        const auto imp = ctx.implication(e);
        if (imp && imp->first == x && selectors.count(imp->second) == 0) {
          targets[x].push_back({imp->second, e});
          ys.insert(imp->second);
        }
      }
    }
    if (!ys.empty()) {
      RowId count_row = -1;
      int found = 0;
      for (RowId e : ctx.rows_of(*ys.begin())) {
        const auto& sum = ctx.unit_sum(e);
        if (!sum || sum->lower != sum->upper || sum->lower < 1) continue;
        if (!std::includes(sum->vars.begin(), sum->vars.end(), ys.begin(),
                           ys.end())) {
          continue;
        }
        bool disjoint = true;
        for (VarId v : sum->vars) disjoint = disjoint && selectors.count(v) == 0;
        if (!disjoint) continue;
        count_row = e;
        ++found;
      }
      if (found == 1) {
        const auto& sum = *ctx.unit_sum(count_row);
        cand.params.activators = sum.vars;
        cand.params.open_count = static_cast<int>(sum.lower);
        cand.evidence.push_back(count_row);
        for (auto& group : cand.params.groups) {
          for (auto& opt : group) {
            const auto it = targets.find(opt.selector);
            if (it == targets.end() || it->second.size() != 1) continue;
            opt.activator = it->second.front().first;
            cand.evidence.push_back(it->second.front().second);
          }
        }
      }
    }
    cands.push_back(std::move(cand));
  }
  std::map<RowId, int> claims;
  for (const auto& c : cands) {
    for (RowId g : c.group_rows) ++claims[g];
  }
  std::vector<SemanticRecord> out;
  for (auto& c : cands) {
    bool unique = true;
    for (RowId g : c.group_rows) unique = unique && claims[g] == 1;
    if (!unique) continue;
    out.push_back(make_record(std::move(c.params), std::move(c.evidence)));
  }
  return out;
}

std::vector<SemanticRecord> detect_rostering(const DetectContext& ctx) {
  const MipModel& model = ctx.model();
  // Shift-choice rows (at most one) and coverage rows (at least req).
  std::vector<RowId> sos;
  std::vector<RowId> dem;
  std::unordered_map<VarId, int> sos_count;
  std::unordered_map<VarId, int> dem_count;
  std::unordered_map<VarId, RowId> sos_of;
  std::unordered_map<VarId, RowId> dem_of;
  for (RowId r : ctx.rows()) {
    const auto& sum = ctx.unit_sum(r);
    if (!sum || sum->vars.size() < 2 || !ctx.is_set_packing(r)) continue;
    sos.push_back(r);
    for (VarId v : sum->vars) {
      ++sos_count[v];
      sos_of[v] = r;
    }
  }
  // Coverage rows take at most one variable from each shift-choice row;
  // this keeps lower-bounded windows over whole days out.
  for (RowId r : ctx.rows()) {
    const auto& sum = ctx.unit_sum(r);
    if (!sum || sum->vars.size() < 2 || sum->lower < 1) continue;
    std::set<RowId> hit;
    bool spread = true;
    for (VarId v : sum->vars) {
      const auto it = sos_count.find(v);
      if (it == sos_count.end() || it->second != 1 ||
          !hit.insert(sos_of[v]).second) {
        spread = false;
        break;
      }
    }
    if (!spread) continue;
    dem.push_back(r);
    for (VarId v : sum->vars) {
      ++dem_count[v];
      dem_of[v] = r;
    }
  }
  if (sos.size() < 2 || dem.size() < 2) return {};
  auto in_grid = [&](VarId v) {
    const auto a = sos_count.find(v);
    const auto b = dem_count.find(v);
    return a != sos_count.end() && a->second == 1 && b != dem_count.end() &&
           b->second == 1;
  };
  // Components over grid rows.
  std::map<RowId, int> index;
  std::vector<RowId> grid_rows;
  for (RowId r : sos) {
    index[r] = static_cast<int>(grid_rows.size());
    grid_rows.push_back(r);
  }
  for (RowId r : dem) {
    index[r] = static_cast<int>(grid_rows.size());
    grid_rows.push_back(r);
  }
  DisjointSets sets(static_cast<int>(grid_rows.size()));
  std::set<int> broken;
  for (RowId r : grid_rows) {
    for (VarId v : ctx.unit_sum(r)->vars) {
      if (!in_grid(v)) {
        broken.insert(index[r]);
        continue;
      }
      sets.unite(index[sos_of[v]], index[dem_of[v]]);
    }
  }
  // Choice and coverage rows alone split the grid into single days; rows
  // over grid variables only (hours, windows) join the days of a roster.
  for (RowId r : ctx.rows()) {
    if (index.count(r) != 0) continue;
    const auto& terms = model.rows[r].terms;
    if (terms.size() < 2 ||
        !std::all_of(terms.begin(), terms.end(),
                     [&](const Term& t) { return in_grid(t.var); })) {
      continue;
    }
    for (const Term& t : terms) {
      sets.unite(index[sos_of[terms.front().var]], index[sos_of[t.var]]);
    }
  }
  std::map<int, std::vector<RowId>> comps;
  for (RowId r : grid_rows) comps[sets.find(index[r])].push_back(r);
  for (int b : broken) comps.erase(sets.find(b));

  std::vector<SemanticRecord> out;
  for (const auto& [root, members] : comps) {
    std::vector<RowId> comp_sos;
    std::vector<RowId> comp_dem;
    std::set<RowId> member_set(members.begin(), members.end());
    for (RowId r : members) {
      if (ctx.is_set_packing(r)) {
        comp_sos.push_back(r);
      } else {
        comp_dem.push_back(r);
      }
    }
    if (comp_sos.size() < 2 || comp_dem.size() < 2) continue;
    // Each (choice, coverage) pair shares at most one variable.
    std::set<std::pair<RowId, RowId>> pairs;
    bool ok = true;
    std::set<VarId> grid_vars;
    for (RowId r : comp_sos) {
      for (VarId v : ctx.unit_sum(r)->vars) {
        grid_vars.insert(v);
        if (!pairs.insert({r, dem_of[v]}).second) ok = false;
      }
    }
    if (!ok) continue;
    // Days: shift-choice rows hitting the same coverage rows.
    std::map<std::vector<RowId>, std::vector<RowId>> days;
    for (RowId r : comp_sos) {
      std::vector<RowId> hit;
      for (VarId v : ctx.unit_sum(r)->vars) hit.push_back(dem_of[v]);
      std::sort(hit.begin(), hit.end());
      days[hit].push_back(r);
    }
    std::set<RowId> seen_dem;
    for (const auto& [hit, rows] : days) {
      for (RowId d : hit) {
        if (!seen_dem.insert(d).second) ok = false;
      }
    }
    if (!ok || days.size() < 2) continue;
    std::map<RowId, int> day_of;
    {
      int d = 0;
      for (const auto& [hit, rows] : days) {
        for (RowId r : rows) day_of[r] = d;
        ++d;
      }
    }
    // Block rows: every other usable row over grid variables only.
    std::set<RowId> block_set;
    for (VarId v : grid_vars) {
      for (RowId e : ctx.rows_of(v)) {
        if (member_set.count(e) != 0) continue;
        bool inside = true;
        for (const Term& t : model.rows[e].terms) {
          inside = inside && grid_vars.count(t.var) != 0;
        }
        if (inside) block_set.insert(e);
      }
    }
    // Nurse identity: choice rows linked by a block row that touches at
    // most one choice row per day across several days.
    std::map<RowId, int> sos_index;
    for (std::size_t k = 0; k < comp_sos.size(); ++k) {
      sos_index[comp_sos[k]] = static_cast<int>(k);
    }
    auto touched_groups = [&](RowId e) {
      std::set<RowId> g;
      for (const Term& t : model.rows[e].terms) g.insert(sos_of[t.var]);
      return g;
    };
    DisjointSets nurses(static_cast<int>(comp_sos.size()));
    for (RowId e : block_set) {
      const auto g = touched_groups(e);
      std::set<int> day_set;
      for (RowId s : g) day_set.insert(day_of[s]);
      if (day_set.size() != g.size() || day_set.size() < 2) continue;
      const int first = sos_index[*g.begin()];
      for (RowId s : g) nurses.unite(first, sos_index[s]);
    }
    RosteringWindowParams params;
    std::vector<RowId> evidence(members.begin(), members.end());
    for (RowId r : comp_sos) {
      params.shift_choices.push_back(ctx.unit_sum(r)->vars);
      params.block.push_back({r, static_cast<std::uint8_t>(RosterRole::kShiftChoice)});
    }
    for (RowId r : comp_dem) {
      const auto& sum = *ctx.unit_sum(r);
      params.coverage.push_back({sum.vars, sum.lower, sum.upper});
      params.block.push_back({r, static_cast<std::uint8_t>(RosterRole::kDemand)});
    }
    for (RowId e : block_set) {
      const auto g = touched_groups(e);
      std::set<int> nurse_set;
      std::set<int> day_set;
      std::size_t group_vars = 0;
      for (RowId s : g) {
        nurse_set.insert(nurses.find(sos_index[s]));
        day_set.insert(day_of[s]);
        group_vars += ctx.unit_sum(s)->vars.size();
      }
      RosterRole role = RosterRole::kOther;
      const auto& sum = ctx.unit_sum(e);
      if (sum && nurse_set.size() == 1) {
        const double n = static_cast<double>(sum->vars.size());
        const bool upper_only = sum->lower == 0.0 && sum->upper < n;
        const bool lower_only = sum->lower > 0.0 && sum->upper == n;
        // Count the nurse's working days to tell windows from totals.
        std::set<int> nurse_days;
        for (RowId s : comp_sos) {
          if (nurses.find(sos_index[s]) == *nurse_set.begin()) {
            nurse_days.insert(day_of[s]);
          }
        }
        const bool full_shifts = sum->vars.size() == group_vars;
        const bool all_days = day_set.size() == nurse_days.size();
        if (full_shifts && day_set.size() >= 2) {
          if (upper_only) {
            role = all_days ? RosterRole::kHoursUpper : RosterRole::kWorkWindow;
          } else if (lower_only) {
            role = all_days ? RosterRole::kHoursLower : RosterRole::kRestWindow;
          }
        } else if (!full_shifts) {
          if (upper_only) {
            role = RosterRole::kFlow;
          } else if (lower_only) {
            role = RosterRole::kLowerAssign;
          }
        }
      }
      params.block.push_back({e, static_cast<std::uint8_t>(role)});
      evidence.push_back(e);
    }
    out.push_back(make_record(std::move(params), std::move(evidence)));
  }
  return out;
}

std::vector<SemanticRecord> detect_unit_commitment(const DetectContext& ctx) {
  const MipModel& model = ctx.model();
  // Implications a -> b.
  std::set<std::pair<VarId, VarId>> implies;
  std::map<std::pair<VarId, VarId>, RowId> implication_rows;
  for (RowId r : ctx.rows()) {
    if (const auto imp = ctx.implication(r)) {
      implies.insert(*imp);
      implication_rows[*imp] = r;
    }
  }
  // Logic rows u_t - u_{t-1} - v_t + w_t = 0.
  struct Logic {
    VarId u;
    VarId u_prev;
    VarId v;
    VarId w;
    RowId row;
  };
  std::map<VarId, Logic> logic_by_u;
  std::set<VarId> duplicate;
  for (RowId r : ctx.rows()) {
    const LinearRow& row = model.rows[r];
    if (!row.is_equality() || row.rhs != 0.0 || row.terms.size() != 4) continue;
    const double a = std::abs(row.terms.front().coef);
    std::vector<VarId> pos;
    std::vector<VarId> neg;
    bool ok = true;
    for (const Term& t : row.terms) {
      if (!ctx.is_binary(t.var) || std::abs(t.coef) != a) ok = false;
      (t.coef > 0 ? pos : neg).push_back(t.var);
    }
    if (!ok || pos.size() != 2 || neg.size() != 2) continue;
    // The startup literal implies the new status (v_t <= u_t).
    std::vector<Logic> found;
    for (int side = 0; side < 2; ++side) {
      const auto& from = side == 0 ? neg : pos;
      const auto& to = side == 0 ? pos : neg;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          if (implies.count({from[i], to[j]}) != 0) {
            found.push_back({to[j], from[1 - i], from[i], to[1 - j], r});
          }
        }
      }
    }
    if (found.size() != 1) continue;
    if (!logic_by_u.emplace(found[0].u, found[0]).second) {
      duplicate.insert(found[0].u);
    }
  }
  for (VarId u : duplicate) logic_by_u.erase(u);
  if (logic_by_u.empty()) return {};

  std::map<VarId, VarId> next;
  for (const auto& [u, lg] : logic_by_u) {
    if (!next.emplace(lg.u_prev, u).second) return {};
  }
  UnitCommitmentRampParams params;
  std::vector<RoleRow> rows;
  auto tag = [&](RowId r, UcRole role) {
    rows.push_back({r, static_cast<std::uint8_t>(role)});
  };
  for (const auto& [head, unused] : next) {
    (void)unused;
    if (logic_by_u.count(head) != 0) continue;
    UnitSchedule unit;
    unit.status.push_back(head);
    unit.startup.push_back(-1);
    unit.shutdown.push_back(-1);
    VarId cur = head;
    while (next.count(cur) != 0) {
      cur = next.at(cur);
      const Logic& lg = logic_by_u.at(cur);
      unit.status.push_back(cur);
      unit.startup.push_back(lg.v);
      unit.shutdown.push_back(lg.w);
      tag(lg.row, UcRole::kLogic);
      if (unit.status.size() > logic_by_u.size() + 1) return {};
    }
    params.units.push_back(std::move(unit));
  }
  if (params.units.empty()) return {};
  const std::size_t horizon = params.units.front().status.size();
  for (const auto& unit : params.units) {
    if (unit.status.size() != horizon) return {};
  }

  for (auto& unit : params.units) {
    for (std::size_t t = 1; t < horizon; ++t) {
      // Minimum-up rows v_t -> u_tau.
      for (VarId u : unit.status) {
        const auto it = implication_rows.find({unit.startup[t], u});
        if (it != implication_rows.end()) tag(it->second, UcRole::kMinUp);
      }
      // u_t + w_t <= 1.
      for (RowId e : ctx.rows_of(unit.shutdown[t])) {
        if (!ctx.is_set_packing(e)) continue;
        const auto& vars = ctx.unit_sum(e)->vars;
        if (vars.size() == 2 &&
            std::binary_search(vars.begin(), vars.end(), unit.status[t])) {
          tag(e, UcRole::kLogic);
        }
      }
    }
    // Capacity links on each status variable.
    unit.p_max = -1.0;
    unit.p_min = -1.0;
    for (std::size_t t = 0; t < horizon; ++t) {
      const VarId u = unit.status[t];
      VarId p = -1;
      VarId p_low = -1;
      VarId r = -1;
      double p_max = -1.0;
      double p_min = -1.0;
      double r_max = -1.0;
      RowId max_row = -1;
      RowId min_row = -1;
      RowId res_row = -1;
      for (RowId e : ctx.rows_of(u)) {
        const auto leq = ctx.leq_form(e);
        if (!leq || leq->rhs != 0.0) continue;
        double cu = 0.0;
        std::vector<Term> cont;
        bool ok = true;
        for (const Term& term : leq->terms) {
          if (term.var == u) {
            cu = term.coef;
          } else if (is_continuous(ctx, term.var)) {
            cont.push_back(term);
          } else {
            ok = false;
          }
        }
        if (!ok || cont.empty() || cont.size() > 2) continue;
        const double a = cont[0].coef;
        bool same = true;
        for (const Term& c : cont) same = same && c.coef == a;
        if (!same) continue;
        if (cont.size() == 1 && a > 0 && cu < 0) {
          p = cont[0].var;
          p_max = -cu / a;
          max_row = e;
        } else if (cont.size() == 1 && a < 0 && cu > 0) {
          p_min = cu / -a;
          min_row = e;
          p_low = cont[0].var;
        } else if (cont.size() == 2 && a > 0 && cu < 0) {
          r_max = -cu / a;
          res_row = e;
        }
      }
      if (p == -1 || max_row == -1) return {};
      if (min_row != -1 && p_low != p) return {};
      if (res_row != -1) {
        for (const Term& term : model.rows[res_row].terms) {
          if (term.var != u && term.var != p) r = term.var;
        }
        if (r == -1 || r_max != p_max) return {};
      }
      if (t == 0) {
        unit.p_max = p_max;
        unit.p_min = min_row == -1 ? 0.0 : p_min;
      } else if (unit.p_max != p_max ||
                 unit.p_min != (min_row == -1 ? 0.0 : p_min)) {
        return {};
      }
      unit.power.push_back(p);
      tag(max_row, UcRole::kLink);
      if (min_row != -1) tag(min_row, UcRole::kLink);
      if (res_row != -1) {
        unit.reserve.push_back(r);
        tag(res_row, UcRole::kLink);
      }
    }
    if (!unit.reserve.empty() && unit.reserve.size() != horizon) return {};
  }
  // All units must agree on whether reserves are modelled.
  const bool reserves = !params.units.front().reserve.empty();
  for (const auto& unit : params.units) {
    if (unit.reserve.empty() == reserves) return {};
  }

  // Demand and reserve rows: one per period over the units' power (reserve)
  // variables with equal coefficients and a finite lower side.
  auto period_row = [&](const std::vector<VarId>& vars, double& level) {
    std::vector<VarId> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    for (RowId e : ctx.rows_of(sorted.front())) {
      const LinearRow& row = model.rows[e];
      if (row.terms.size() != sorted.size()) continue;
      const double c = row.terms.front().coef;
      bool match = true;
      for (std::size_t k = 0; k < sorted.size(); ++k) {
        match = match && row.terms[k].var == sorted[k] && row.terms[k].coef == c;
      }
      if (!match) continue;
      const double lo = c > 0 ? row.lhs / c : row.rhs / c;
      if (!std::isfinite(lo)) continue;
      level = lo;
      return e;
    }
    return RowId{-1};
  };
  for (std::size_t t = 0; t < horizon; ++t) {
    std::vector<VarId> power;
    std::vector<VarId> reserve;
    for (const auto& unit : params.units) {
      power.push_back(unit.power[t]);
      if (reserves) reserve.push_back(unit.reserve[t]);
    }
    double level = 0.0;
    const RowId d = period_row(power, level);
    if (d == -1) return {};
    params.demand.push_back(level);
    tag(d, UcRole::kDemand);
    if (reserves) {
      const RowId rr = period_row(reserve, level);
      if (rr == -1) return {};
      params.reserve.push_back(level);
      tag(rr, UcRole::kReserve);
    }
  }
  // Ramp rows p_t - p_{t-1} - RU u_{t-1} - SU v_t <= 0.
  for (auto& unit : params.units) {
    int ramps = 0;
    for (std::size_t t = 1; t < horizon; ++t) {
      for (RowId e : ctx.rows_of(unit.power[t])) {
        const auto leq = ctx.leq_form(e);
        if (!leq || leq->rhs != 0.0 || leq->terms.size() != 4) continue;
        double a = 0.0;
        double b = 0.0;
        double cu = 0.0;
        double cv = 0.0;
        for (const Term& term : leq->terms) {
          if (term.var == unit.power[t]) a = term.coef;
          if (term.var == unit.power[t - 1]) b = term.coef;
          if (term.var == unit.status[t - 1]) cu = term.coef;
          if (term.var == unit.startup[t]) cv = term.coef;
        }
        if (a <= 0 || b != -a || cu >= 0 || cv >= 0) continue;
        const double ru = -cu / a;
        const double su = -cv / a;
        if (ramps == 0) {
          unit.ramp_up = ru;
          unit.startup_ramp = su;
        } else if (unit.ramp_up != ru || unit.startup_ramp != su) {
          return {};
        }
        ++ramps;
        tag(e, UcRole::kRamp);
      }
    }
    if (ramps != 0 && ramps != static_cast<int>(horizon) - 1) return {};
  }
  params.rows = std::move(rows);
  std::vector<RowId> evidence;
  for (const RoleRow& rr : params.rows) evidence.push_back(rr.row);
  std::vector<SemanticRecord> out;
  out.push_back(make_record(std::move(params), std::move(evidence)));
  return out;
}

std::vector<SemanticRecord> detect_disjunction(const DetectContext& ctx) {
  const double tol = ctx.config().tolerances.feasibility;
  // Guarded rows: exactly one binary, whose coefficient dominates the rest.
  struct Guarded {
    VarId guard;
    int active;  // selector value that activates the row
    BranchRow branch;
  };
  std::unordered_map<VarId, std::vector<Guarded>> by_guard;
  std::set<RowId> guarded_rows;
  for (RowId r : ctx.rows()) {
    const auto leq = ctx.leq_form(r);
    if (!leq || leq->terms.size() < 2) continue;
    const Term* guard = nullptr;
    std::vector<Term> rest;
    bool ok = true;
    for (const Term& t : leq->terms) {
      if (ctx.is_binary(t.var)) {
        if (guard != nullptr) ok = false;
        guard = &t;
      } else {
        rest.push_back(t);
      }
    }
    if (!ok || guard == nullptr || rest.empty()) continue;
    const int active = guard->coef > 0 ? 1 : 0;
    const double b = leq->rhs - guard->coef * active;
    const double max_rest = compute_activity(rest, ctx.box()).max_activity;
    if (!std::isfinite(max_rest)) continue;
    if (std::abs(guard->coef) < max_rest - b - tol) continue;
    by_guard[guard->var].push_back({guard->var, active, {r, rest, b}});
    guarded_rows.insert(r);
  }
  // A guard may appear in nothing but its guarded rows (and, for modes, the
  // exact-one row).
  auto only_guarded = [&](VarId y, RowId mode_row) {
    for (RowId e : ctx.rows_of(y)) {
      if (e == mode_row) continue;
      if (guarded_rows.count(e) == 0) return false;
    }
    return true;
  };
  auto touched_of = [](const std::vector<DisjBranch>& branches) {
    std::set<VarId> touched;
    for (const auto& b : branches) {
      for (const auto& row : b.rows) {
        for (const Term& t : row.terms) touched.insert(t.var);
      }
    }
    return std::vector<VarId>(touched.begin(), touched.end());
  };

  std::vector<SemanticRecord> out;
  std::set<VarId> mode_vars;
  // Exact-one modes.
  for (RowId e : ctx.rows()) {
    if (!ctx.is_exact_one(e)) continue;
    const auto& vars = ctx.unit_sum(e)->vars;
    if (vars.size() < 2 ||
        static_cast<int>(vars.size()) > ctx.config().max_disjunction_branches) {
      continue;
    }
    bool ok = true;
    DisjPolyhedralParams params;
    params.variant = DisjVariant::kExactOneMode;
    params.mode_row = e;
    std::vector<RowId> evidence = {e};
    for (VarId y : vars) {
      const auto it = by_guard.find(y);
      if (it == by_guard.end() || !only_guarded(y, e)) {
        ok = false;
        break;
      }
      DisjBranch branch;
      branch.selector = y;
      branch.selector_value = 1;
      for (const Guarded& g : it->second) {
        if (g.active != 1) ok = false;
        branch.rows.push_back(g.branch);
        evidence.push_back(g.branch.row);
      }
      params.branches.push_back(std::move(branch));
    }
    if (!ok) continue;
    params.touched = touched_of(params.branches);
    if (params.touched.size() < 2) continue;
    mode_vars.insert(vars.begin(), vars.end());
    out.push_back(make_record(std::move(params), std::move(evidence)));
  }
  // Binary selectors with both branches populated.
  std::vector<VarId> guards;
  for (const auto& [y, rows] : by_guard) guards.push_back(y);
  std::sort(guards.begin(), guards.end());
  for (VarId y : guards) {
    if (mode_vars.count(y) != 0 || !only_guarded(y, -1)) continue;
    DisjPolyhedralParams params;
    params.variant = DisjVariant::kBinarySelector;
    DisjBranch off{y, 0, {}};
    DisjBranch on{y, 1, {}};
    std::vector<RowId> evidence;
    for (const Guarded& g : by_guard.at(y)) {
      (g.active == 1 ? on : off).rows.push_back(g.branch);
      evidence.push_back(g.branch.row);
    }
    if (off.rows.empty() || on.rows.empty()) continue;
    params.branches = {std::move(off), std::move(on)};
    params.touched = touched_of(params.branches);
    out.push_back(make_record(std::move(params), std::move(evidence)));
  }
  return out;
}

}  // namespace structprop::detail
