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

#include "structprop/record_json.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

namespace structprop {
namespace {

using nlohmann::json;

std::string fallback_label(char prefix, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c%04d", prefix, index + 1);
  return buf;
}

json number(double value) {
  if (value == kInfinity) return "inf";
  if (value == -kInfinity) return "-inf";
  return value;
}

double read_number(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    throw std::invalid_argument("expected a number, got '" + s + "'");
  }
  return j.get<double>();
}

// Translates ids to names and back for one model.
class Codec {
 public:
  explicit Codec(const MipModel& model) : model_(model) {}

  json var(VarId v) const {
    return v < 0 ? json(nullptr) : json(variable_label(model_, v));
  }
  json row(RowId r) const {
    return r < 0 ? json(nullptr) : json(row_label(model_, r));
  }

  json vars(const std::vector<VarId>& ids) const {
    json out = json::array();
    for (VarId v : ids) out.push_back(var(v));
    return out;
  }
  json rows(const std::vector<RowId>& ids) const {
    json out = json::array();
    for (RowId r : ids) out.push_back(row(r));
    return out;
  }

  VarId var_id(const json& j) const {
    if (j.is_null()) return -1;
    build();
    const auto it = var_index_.find(j.get<std::string>());
    if (it == var_index_.end()) {
      throw std::invalid_argument("unknown variable '" + j.get<std::string>() +
                                  "'");
    }
    return it->second;
  }
  RowId row_id(const json& j) const {
    if (j.is_null()) return -1;
    build();
    const auto it = row_index_.find(j.get<std::string>());
    if (it == row_index_.end()) {
      throw std::invalid_argument("unknown row '" + j.get<std::string>() + "'");
    }
    return it->second;
  }
  std::vector<VarId> var_ids(const json& j) const {
    std::vector<VarId> out;
    for (const json& e : j) out.push_back(var_id(e));
    return out;
  }
  std::vector<RowId> row_ids(const json& j) const {
    std::vector<RowId> out;
    for (const json& e : j) out.push_back(row_id(e));
    return out;
  }

 private:
  void build() const {
    if (built_) return;
    for (int j = 0; j < model_.num_variables(); ++j) {
      var_index_.emplace(variable_label(model_, j), j);
    }
    for (int i = 0; i < model_.num_rows(); ++i) {
      row_index_.emplace(row_label(model_, i), i);
    }
    built_ = true;
  }

  const MipModel& model_;
  mutable bool built_ = false;
  mutable std::unordered_map<std::string, VarId> var_index_;
  mutable std::unordered_map<std::string, RowId> row_index_;
};

json roles_to_json(const std::vector<RoleRow>& rows, const Codec& c,
                   bool roster) {
  json out = json::array();
  for (const RoleRow& rr : rows) {
    const std::string_view tag =
        roster ? roster_role_tag(static_cast<RosterRole>(rr.role))
               : uc_role_tag(static_cast<UcRole>(rr.role));
    out.push_back({{"row", c.row(rr.row)}, {"role", std::string(tag)}});
  }
  return out;
}

std::vector<RoleRow> roles_from_json(const json& j, const Codec& c,
                                     bool roster) {
  std::vector<RoleRow> out;
  for (const json& e : j) {
    const std::string tag = e.at("role").get<std::string>();
    std::optional<std::uint8_t> role;
    if (roster) {
      if (auto r = roster_role_from_tag(tag)) role = static_cast<std::uint8_t>(*r);
    } else {
      if (auto r = uc_role_from_tag(tag)) role = static_cast<std::uint8_t>(*r);
    }
    if (!role) throw std::invalid_argument("unknown role tag '" + tag + "'");
    out.push_back({c.row_id(e.at("row")), *role});
  }
  return out;
}

json params_to_json(const RecordParams& params, const Codec& c) {
  return std::visit(
      [&](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        json j;
        if constexpr (std::is_same_v<T, AllDifferentParams>) {
          j["cells"] = json::array();
          for (const auto& row : p.cells) j["cells"].push_back(c.vars(row));
          j["values_exact"] = p.values_exact;
        } else if constexpr (std::is_same_v<T, CardinalityParams>) {
          j["vars"] = c.vars(p.vars);
          j["lower"] = number(p.lower);
          j["upper"] = number(p.upper);
        } else if constexpr (std::is_same_v<T, ChannelParams>) {
          j["links"] = json::array();
          for (const auto& link : p.links) {
            json inds = json::array();
            for (const auto& ind : link.indicators) {
              inds.push_back({{"var", c.var(ind.var)}, {"value", ind.value}});
            }
            j["links"].push_back({{"var", c.var(link.var)},
                                  {"indicators", inds},
                                  {"link_row", c.row(link.link_row)},
                                  {"choice_row", c.row(link.choice_row)}});
          }
        } else if constexpr (std::is_same_v<T, CumulativeParams>) {
          j["tasks"] = json::array();
          for (const auto& task : p.tasks) {
            json starts = json::array();
            for (const auto& s : task.starts) {
              starts.push_back({{"var", c.var(s.var)}, {"periods", c.rows(s.periods)}});
            }
            j["tasks"].push_back({{"demand", task.demand},
                                  {"duration", task.duration},
                                  {"choice_row", c.row(task.choice_row)},
                                  {"starts", starts}});
          }
          j["capacities"] = json::array();
          for (const auto& cap : p.capacities) {
            j["capacities"].push_back(
                {{"row", c.row(cap.row)}, {"capacity", cap.capacity}});
          }
        } else if constexpr (std::is_same_v<T, NValueParams>) {
          j["count"] = c.var(p.count);
          j["items"] = json::array();
          for (const auto& item : p.items) j["items"].push_back(c.vars(item));
          j["values"] = json::array();
          for (const auto& v : p.values) {
            j["values"].push_back(
                {{"indicator", c.var(v.indicator)}, {"uses", c.vars(v.uses)}});
          }
          j["upper_links"] = p.upper_links;
        } else if constexpr (std::is_same_v<T, StretchParams>) {
          j["states"] = c.vars(p.states);
          j["starts"] = c.vars(p.starts);
          j["min_run"] = p.min_run;
          j["max_run"] = p.max_run;
        } else if constexpr (std::is_same_v<T, OneHotResourceParams>) {
          j["groups"] = json::array();
          for (const auto& group : p.groups) {
            json options = json::array();
            for (const auto& o : group) {
              options.push_back({{"var", c.var(o.var)}, {"cost", o.cost}});
            }
            j["groups"].push_back(options);
          }
          j["budget"] = p.budget;
          j["external_min"] = number(p.external_min);
        } else if constexpr (std::is_same_v<T, BottleneckExactOneParams>) {
          j["bottleneck"] = c.var(p.bottleneck);
          j["groups"] = json::array();
          for (const auto& group : p.groups) {
            json options = json::array();
            for (const auto& o : group) {
              json opt = {{"selector", c.var(o.selector)}};
              opt["weight"] = o.weight ? json(*o.weight) : json(nullptr);
              opt["activator"] = o.activator ? c.var(*o.activator) : json(nullptr);
              options.push_back(opt);
            }
            j["groups"].push_back(options);
          }
          j["activators"] = c.vars(p.activators);
          j["open_count"] = p.open_count ? json(*p.open_count) : json(nullptr);
        } else if constexpr (std::is_same_v<T, RosteringWindowParams>) {
          j["shift_choices"] = json::array();
          for (const auto& g : p.shift_choices) j["shift_choices"].push_back(c.vars(g));
          j["coverage"] = json::array();
          for (const auto& cov : p.coverage) {
            j["coverage"].push_back({{"vars", c.vars(cov.vars)},
                                     {"lower", number(cov.lower)},
                                     {"upper", number(cov.upper)}});
          }
          j["block"] = roles_to_json(p.block, c, true);
        } else if constexpr (std::is_same_v<T, UnitCommitmentRampParams>) {
          j["units"] = json::array();
          for (const auto& u : p.units) {
            j["units"].push_back({{"status", c.vars(u.status)},
                                  {"startup", c.vars(u.startup)},
                                  {"shutdown", c.vars(u.shutdown)},
                                  {"power", c.vars(u.power)},
                                  {"reserve", c.vars(u.reserve)},
                                  {"p_min", u.p_min},
                                  {"p_max", u.p_max},
                                  {"ramp_up", u.ramp_up},
                                  {"startup_ramp", u.startup_ramp}});
          }
          j["demand"] = p.demand;
          j["reserve"] = p.reserve;
          j["rows"] = roles_to_json(p.rows, c, false);
        } else if constexpr (std::is_same_v<T, DisjPolyhedralParams>) {
          j["variant"] = p.variant == DisjVariant::kBinarySelector
                             ? "binary_selector"
                             : "exact_one_mode";
          j["branches"] = json::array();
          for (const auto& b : p.branches) {
            json rows = json::array();
            for (const auto& r : b.rows) {
              json terms = json::array();
              for (const Term& t : r.terms) {
                terms.push_back({{"var", c.var(t.var)}, {"coef", t.coef}});
              }
              rows.push_back({{"row", c.row(r.row)}, {"terms", terms}, {"rhs", r.rhs}});
            }
            j["branches"].push_back({{"selector", c.var(b.selector)},
                                     {"selector_value", b.selector_value},
                                     {"rows", rows}});
          }
          j["touched"] = c.vars(p.touched);
          j["mode_row"] = c.row(p.mode_row);
        }
        return j;
      },
      params);
}

RecordParams params_from_json(Family family, const json& j, const Codec& c) {
  switch (family) {
    case Family::kAllDifferent: {
      AllDifferentParams p;
      for (const json& row : j.at("cells")) p.cells.push_back(c.var_ids(row));
      p.values_exact = j.at("values_exact").get<bool>();
      return p;
    }
    case Family::kCardinality: {
      CardinalityParams p;
      p.vars = c.var_ids(j.at("vars"));
      p.lower = read_number(j.at("lower"));
      p.upper = read_number(j.at("upper"));
      return p;
    }
    case Family::kChannel: {
      ChannelParams p;
      for (const json& l : j.at("links")) {
        ChannelLink link;
        link.var = c.var_id(l.at("var"));
        for (const json& ind : l.at("indicators")) {
          link.indicators.push_back(
              {c.var_id(ind.at("var")), ind.at("value").get<double>()});
        }
        link.link_row = c.row_id(l.at("link_row"));
        link.choice_row = c.row_id(l.at("choice_row"));
        p.links.push_back(std::move(link));
      }
      return p;
    }
    case Family::kCumulative: {
      CumulativeParams p;
      for (const json& t : j.at("tasks")) {
        CumulativeTask task;
        task.demand = t.at("demand").get<double>();
        task.duration = t.at("duration").get<int>();
        task.choice_row = c.row_id(t.at("choice_row"));
        for (const json& s : t.at("starts")) {
          task.starts.push_back({c.var_id(s.at("var")), c.row_ids(s.at("periods"))});
        }
        p.tasks.push_back(std::move(task));
      }
      for (const json& cap : j.at("capacities")) {
        p.capacities.push_back(
            {c.row_id(cap.at("row")), cap.at("capacity").get<double>()});
      }
      return p;
    }
    case Family::kNValue: {
      NValueParams p;
      p.count = c.var_id(j.at("count"));
      for (const json& item : j.at("items")) p.items.push_back(c.var_ids(item));
      for (const json& v : j.at("values")) {
        p.values.push_back({c.var_id(v.at("indicator")), c.var_ids(v.at("uses"))});
      }
      p.upper_links = j.at("upper_links").get<bool>();
      return p;
    }
    case Family::kStretch: {
      StretchParams p;
      p.states = c.var_ids(j.at("states"));
      p.starts = c.var_ids(j.at("starts"));
      p.min_run = j.at("min_run").get<int>();
      p.max_run = j.at("max_run").get<int>();
      return p;
    }
    case Family::kOneHotResource: {
      OneHotResourceParams p;
      for (const json& g : j.at("groups")) {
        std::vector<OneHotOption> group;
        for (const json& o : g) {
          group.push_back({c.var_id(o.at("var")), o.at("cost").get<double>()});
        }
        p.groups.push_back(std::move(group));
      }
      p.budget = j.at("budget").get<double>();
      p.external_min = read_number(j.at("external_min"));
      return p;
    }
    case Family::kBottleneckExactOne: {
      BottleneckExactOneParams p;
      p.bottleneck = c.var_id(j.at("bottleneck"));
      for (const json& g : j.at("groups")) {
        std::vector<BottleneckOption> group;
        for (const json& o : g) {
          BottleneckOption opt;
          opt.selector = c.var_id(o.at("selector"));
          if (!o.at("weight").is_null()) opt.weight = o.at("weight").get<double>();
          if (!o.at("activator").is_null()) opt.activator = c.var_id(o.at("activator"));
          group.push_back(opt);
        }
        p.groups.push_back(std::move(group));
      }
      p.activators = c.var_ids(j.at("activators"));
      if (!j.at("open_count").is_null()) p.open_count = j.at("open_count").get<int>();
      return p;
    }
    case Family::kRosteringWindow: {
      RosteringWindowParams p;
      for (const json& g : j.at("shift_choices")) p.shift_choices.push_back(c.var_ids(g));
      for (const json& cov : j.at("coverage")) {
        p.coverage.push_back({c.var_ids(cov.at("vars")), read_number(cov.at("lower")),
                              read_number(cov.at("upper"))});
      }
      p.block = roles_from_json(j.at("block"), c, true);
      return p;
    }
    case Family::kUnitCommitmentRamp: {
      UnitCommitmentRampParams p;
      for (const json& u : j.at("units")) {
        UnitSchedule unit;
        unit.status = c.var_ids(u.at("status"));
        unit.startup = c.var_ids(u.at("startup"));
        unit.shutdown = c.var_ids(u.at("shutdown"));
        unit.power = c.var_ids(u.at("power"));
        unit.reserve = c.var_ids(u.at("reserve"));
        unit.p_min = u.at("p_min").get<double>();
        unit.p_max = u.at("p_max").get<double>();
        unit.ramp_up = u.at("ramp_up").get<double>();
        unit.startup_ramp = u.at("startup_ramp").get<double>();
        p.units.push_back(std::move(unit));
      }
      p.demand = j.at("demand").get<std::vector<double>>();
      p.reserve = j.at("reserve").get<std::vector<double>>();
      p.rows = roles_from_json(j.at("rows"), c, false);
      return p;
    }
    case Family::kDisjPolyhedral: {
      DisjPolyhedralParams p;
      const std::string variant = j.at("variant").get<std::string>();
      if (variant == "binary_selector") {
        p.variant = DisjVariant::kBinarySelector;
      } else if (variant == "exact_one_mode") {
        p.variant = DisjVariant::kExactOneMode;
      } else {
        throw std::invalid_argument("unknown disjunction variant '" + variant + "'");
      }
      for (const json& b : j.at("branches")) {
        DisjBranch branch;
        branch.selector = c.var_id(b.at("selector"));
        branch.selector_value = b.at("selector_value").get<int>();
        for (const json& r : b.at("rows")) {
          BranchRow row;
          row.row = c.row_id(r.at("row"));
          for (const json& t : r.at("terms")) {
            row.terms.push_back({c.var_id(t.at("var")), t.at("coef").get<double>()});
          }
          row.rhs = r.at("rhs").get<double>();
          branch.rows.push_back(std::move(row));
        }
        p.branches.push_back(std::move(branch));
      }
      p.touched = c.var_ids(j.at("touched"));
      p.mode_row = c.row_id(j.at("mode_row"));
      return p;
    }
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace

std::string variable_label(const MipModel& model, VarId var) {
  const std::string& name = model.variables.at(var).name;
  return name.empty() ? fallback_label('C', var) : name;
}

std::string row_label(const MipModel& model, RowId row) {
  const std::string& name = model.rows.at(row).name;
  return name.empty() ? fallback_label('R', row) : name;
}

nlohmann::json record_to_json(const SemanticRecord& record,
                              const MipModel& model) {
  const Codec c(model);
  json j;
  j["family"] = std::string(family_name(record.family));
  j["scope"] = c.vars(record.scope);
  j["params"] = params_to_json(record.params, c);
  j["evidence"] = c.rows(record.evidence);
  j["confidence"] =
      record.confidence == Confidence::kExact ? "exact" : "heuristic";
  return j;
}

SemanticRecord record_from_json(const nlohmann::json& doc,
                                const MipModel& model) {
  const Codec c(model);
  try {
    const std::string name = doc.at("family").get<std::string>();
    const auto family = family_from_name(name);
    if (!family) throw std::invalid_argument("unknown family '" + name + "'");
    SemanticRecord record;
    record.family = *family;
    record.params = params_from_json(*family, doc.at("params"), c);
    record.scope = c.var_ids(doc.at("scope"));
    record.evidence = c.row_ids(doc.at("evidence"));
    const std::string conf = doc.value("confidence", std::string("exact"));
    if (conf == "exact") {
      record.confidence = Confidence::kExact;
    } else if (conf == "heuristic") {
      record.confidence = Confidence::kHeuristic;
    } else {
      throw std::invalid_argument("unknown confidence '" + conf + "'");
    }
    canonicalize(record);
    return record;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed record: ") + e.what());
  }
}

nlohmann::json records_to_json(std::span<const SemanticRecord> records,
                               const MipModel& model) {
  json j;
  j["schema"] = kRecordSchemaVersion;
  j["records"] = json::array();
  for (const SemanticRecord& r : records) {
    j["records"].push_back(record_to_json(r, model));
  }
  return j;
}

std::vector<SemanticRecord> records_from_json(const nlohmann::json& doc,
                                              const MipModel& model) {
  if (!doc.is_object() || doc.value("schema", 0) != kRecordSchemaVersion) {
    throw std::invalid_argument("record document lacks \"schema\": 1");
  }
  std::vector<SemanticRecord> out;
  for (const json& r : doc.at("records")) {
    out.push_back(record_from_json(r, model));
  }
  return out;
}

nlohmann::json outcome_to_json(const PropagationOutcome& outcome,
                               const MipModel& model) {
  json j;
  j["calls"] = outcome.calls;
  j["domain_reductions"] = outcome.domain_reductions;
  j["cutoffs"] = outcome.cutoffs;
  j["cutoff"] = outcome.cutoff;
  j["prop_time_ms"] =
      std::chrono::duration<double, std::milli>(outcome.prop_time).count();
  j["bound_changes"] = json::array();
  for (const BoundChange& bc : outcome.bound_changes) {
    j["bound_changes"].push_back(
        {{"var", variable_label(model, bc.var)},
         {"side", bc.side == BoundSide::kLower ? "lb" : "ub"},
         {"old", number(bc.old_value)},
         {"new", number(bc.new_value)}});
  }
  return j;
}

}  // namespace structprop
