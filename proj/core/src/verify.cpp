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

#include "structprop/verify.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "structprop/detect.hpp"
#include "structprop/mps.hpp"
#include "structprop/record_json.hpp"
#include "structprop/search.hpp"
#include "synth/builder.hpp"

namespace structprop {
namespace {

using Propagator = std::function<PropagationOutcome(const MipModel&, const SemanticRecord&,
                                                    DomainBox&)>;

// Rounds enough for row tightening to settle on the small instances
// verified here.
constexpr int kOracleRounds = 1000;

bool row_cut_off(const LinearRow& row, const DomainBox& box, double tol) {
  const RowActivity act = compute_activity(row, box);
  return act.min_activity > row.rhs + tol || act.max_activity < row.lhs - tol;
}

// Row tightening over all rows; false on a conflict.
bool rows_consistent(const MipModel& model, DomainBox& box, const Tolerances& tol) {
  PropagatorConfig config;
  config.max_fixpoint_rounds = kOracleRounds;
  config.tolerances = tol;
  const PropagationOutcome out = propagate_block_fixpoint(model.rows, box, config);
  return !out.cutoff && !box.empty;
}

class Enumerator {
 public:
  Enumerator(const MipModel& model, const DomainBox& box, std::span<const VarId> scope,
             std::int64_t cap, const Tolerances& tol)
      : model_(model), box_(box), scope_(scope), cap_(cap), tol_(tol),
        point_(scope.size()) {}

  EnumerationResult run() {
    if (!box_.empty) visit(0);
    return std::move(result_);
  }

 private:
  void visit(std::size_t depth) {
    if (result_.truncated) return;
    if (++result_.nodes_visited > cap_) {
      result_.truncated = true;
      return;
    }
    for (const LinearRow& row : model_.rows) {
      if (row_cut_off(row, box_, tol_.feasibility)) return;
    }
    if (depth == scope_.size()) {
      if (leaf_feasible()) result_.feasible_points.push_back(point_);
      return;
    }
    const VarId var = scope_[depth];
    const double lo = box_.lower[var];
    const double hi = box_.upper[var];
    for (double value = std::ceil(lo - tol_.integrality);
         value <= hi + tol_.integrality; value += 1.0) {
      box_.lower[var] = value;
      box_.upper[var] = value;
      point_[depth] = value;
      visit(depth + 1);
      if (result_.truncated) break;
    }
    box_.lower[var] = lo;
    box_.upper[var] = hi;
  }

  bool leaf_feasible() const {
    bool all_fixed = true;
    for (VarId v = 0; v < box_.size(); ++v) all_fixed = all_fixed && box_.is_fixed(v);
    if (all_fixed) {
      for (const LinearRow& row : model_.rows) {
        const double value = row_value(row, box_.lower);
        if (value < row.lhs - tol_.feasibility || value > row.rhs + tol_.feasibility) {
          return false;
        }
      }
      return true;
    }
    DomainBox copy = box_;
    return rows_consistent(model_, copy, tol_);
  }

  const MipModel& model_;
  DomainBox box_;
  std::span<const VarId> scope_;
  std::int64_t cap_;
  Tolerances tol_;
  std::vector<double> point_;
  EnumerationResult result_;
};

VerifyResult make(Verdict verdict, std::string detail) {
  return {verdict, std::move(detail)};
}

VerifyResult check_propagation(const MipModel& model, const SemanticRecord& record,
                               const DomainBox& box, const Propagator& propagate,
                               const Tolerances& tol, std::int64_t cap) {
  const std::vector<VarId> scope = integer_scope(model);
  const EnumerationResult points = enumerate_feasible(model, box, scope, cap, tol);
  if (points.truncated) {
    return make(Verdict::kInconclusive, "enumeration truncated after " +
                                            std::to_string(points.nodes_visited) +
                                            " nodes");
  }
  DomainBox reduced = box;
  const PropagationOutcome out = propagate(model, record, reduced);
  const std::size_t count = points.feasible_points.size();
  if (out.cutoff || reduced.empty) {
    if (count == 0) return make(Verdict::kPass, "cutoff on an infeasible box");
    return make(Verdict::kFail, "cutoff although " + std::to_string(count) +
                                    " feasible points exist");
  }
  if (!is_valid_reduction(box, reduced, points.feasible_points, scope,
                          tol.feasibility)) {
    for (VarId v = 0; v < box.size(); ++v) {
      if (reduced.lower[v] < box.lower[v] - tol.feasibility ||
          reduced.upper[v] > box.upper[v] + tol.feasibility) {
        return make(Verdict::kFail, "bounds of " + variable_label(model, v) + " widened");
      }
    }
    for (const auto& point : points.feasible_points) {
      for (std::size_t k = 0; k < scope.size(); ++k) {
        const VarId v = scope[k];
        if (point[k] < reduced.lower[v] - tol.feasibility ||
            point[k] > reduced.upper[v] + tol.feasibility) {
          std::ostringstream msg;
          msg << "feasible value " << point[k] << " of " << variable_label(model, v)
              << " removed";
          return make(Verdict::kFail, msg.str());
        }
      }
    }
    return make(Verdict::kFail, "invalid reduction");
  }
  // Continuous variables: every feasible integer point's tightened ranges
  // must survive.
  std::vector<VarId> continuous;
  for (VarId v = 0; v < model.num_variables(); ++v) {
    if (!model.variables[v].is_integral()) continuous.push_back(v);
  }
  if (!continuous.empty()) {
    for (const auto& point : points.feasible_points) {
      DomainBox fixed = box;
      for (std::size_t k = 0; k < scope.size(); ++k) {
        fixed.lower[scope[k]] = point[k];
        fixed.upper[scope[k]] = point[k];
      }
      if (!rows_consistent(model, fixed, tol)) continue;
      for (VarId v : continuous) {
        if (reduced.lower[v] > fixed.lower[v] + tol.feasibility ||
            reduced.upper[v] < fixed.upper[v] - tol.feasibility) {
          return make(Verdict::kFail, "range of continuous " + variable_label(model, v) +
                                          " cut at a feasible point");
        }
      }
    }
  }
  return make(Verdict::kPass, std::to_string(count) + " feasible points kept");
}

std::uint64_t gate_seed(const GateConfig& config, Gate gate, int index) {
  return config.suite_seed * 1000003ULL + static_cast<std::uint64_t>(gate) * 100000ULL +
         static_cast<std::uint64_t>(index);
}

PlantedInstance sample_obfuscated(const FamilyDescriptor& family, const GateConfig& config,
                                  std::uint64_t seed, const SynthSize& size = {}) {
  ObfuscationConfig obf = config.obfuscation;
  obf.seed = seed;
  return obfuscate(family.sampler(size, seed), obf);
}

// k out of n, with the first failure's reason.
struct Tally {
  int passed = 0;
  int total = 0;
  std::string first_failure;

  void add(bool ok, const std::string& why) {
    ++total;
    if (ok) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = why;
    }
  }
  bool all() const { return passed == total; }
  std::string detail() const {
    std::string s = std::to_string(passed) + "/" + std::to_string(total) + " passed";
    if (!first_failure.empty()) s += "; first failure: " + first_failure;
    return s;
  }
};

GateResult gate_artifacts(const FamilyDescriptor& family) {
  GateResult r;
  std::vector<std::string> missing;
  if (!family.detector) missing.push_back("detector");
  if (!family.record_schema) missing.push_back("record_schema");
  if (!family.propagator) missing.push_back("propagator");
  if (!family.serializer) missing.push_back("serializer");
  if (!family.sampler) missing.push_back("sampler");
  if (family.name != family_name(family.family)) missing.push_back("name");
  r.passed = missing.empty();
  if (r.passed) {
    r.detail = "detector, record schema, propagator and serializer present";
  } else {
    r.detail = "missing:";
    for (const auto& m : missing) r.detail += " " + m;
  }
  return r;
}

GateResult gate_load(const FamilyDescriptor& family, const GateConfig& config) {
  GateResult r;
  const MipModel empty;
  if (!family.detector(empty).empty()) {
    r.detail = "detector reported records on an empty model";
    return r;
  }
  const PlantedInstance inst =
      sample_obfuscated(family, config, gate_seed(config, Gate::kLoad, 0));
  DomainBox box = DomainBox::from_model(inst.model);
  family.propagator(inst.model, inst.ground_truth, box);
  const MipModel parsed = parse_mps(write_mps(inst.model));
  if (!(parsed == inst.model)) {
    r.detail = "MPS round trip changed the model";
    return r;
  }
  const nlohmann::json doc =
      nlohmann::json::parse(family.serializer(inst.ground_truth, inst.model).dump());
  if (!(family.record_schema(doc, parsed) == inst.ground_truth)) {
    r.detail = "record serialization round trip changed the record";
    return r;
  }
  r.passed = true;
  r.detail = "empty model accepted; MPS and record round trips exact";
  return r;
}

GateResult gate_detector(const FamilyDescriptor& family, const GateConfig& config) {
  Tally tally;
  for (int i = 0; i < config.detector_instances; ++i) {
    const std::uint64_t seed = gate_seed(config, Gate::kDetectorVerification, i);
    const PlantedInstance inst = sample_obfuscated(family, config, seed);
    const VerifyResult v = verify_detector(inst, family.detector(inst.model));
    tally.add(v.passed(), "seed " + std::to_string(seed) + ": " + v.detail);
  }
  return {Gate::kDetectorVerification, tally.all(), true, tally.detail(), {}};
}

GateResult gate_soundness(const FamilyDescriptor& family, const GateConfig& config) {
  Tally tally;
  for (int i = 0; i < config.soundness_instances; ++i) {
    const std::uint64_t seed = gate_seed(config, Gate::kPropagatorSoundness, i);
    const PlantedInstance inst = sample_obfuscated(family, config, seed);
    if (config.strict_integer && integer_scope(inst.model).size() !=
                                     static_cast<std::size_t>(inst.model.num_variables())) {
      tally.add(false, "seed " + std::to_string(seed) +
                           ": continuous variables refused in strict mode");
      continue;
    }
    // Half the boxes start from a few random fixings inside the record's
    // scope, so propagation is checked away from the root as well.
    DomainBox box = DomainBox::from_model(inst.model);
    detail::Rng rng(seed);
    std::vector<VarId> ints;
    for (VarId v : inst.ground_truth.scope) {
      if (box.is_integral(v) && !box.is_fixed(v)) ints.push_back(v);
    }
    if (!ints.empty() && rng.chance(0.5)) {
      rng.shuffle(ints);
      const int fixings = std::min<int>(rng.uniform(1, 2), static_cast<int>(ints.size()));
      for (int k = 0; k < fixings; ++k) {
        const VarId v = ints[k];
        const double value = rng.uniform(static_cast<int>(box.lower[v]),
                                         static_cast<int>(box.upper[v]));
        box.lower[v] = value;
        box.upper[v] = value;
      }
    }
    const VerifyResult v =
        check_propagation(inst.model, inst.ground_truth, box, family.propagator, {},
                          config.enumeration_cap);
    tally.add(v.passed(), "seed " + std::to_string(seed) + ": " + v.detail);
  }
  return {Gate::kPropagatorSoundness, tally.all(), true, tally.detail(), {}};
}

GateResult gate_smoke(const FamilyDescriptor& family, const GateConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  // The smallest instance of the smoke suite.
  std::optional<PlantedInstance> smallest;
  for (int i = 0; i < std::max(config.smoke_candidates, 1); ++i) {
    PlantedInstance inst =
        sample_obfuscated(family, config, gate_seed(config, Gate::kSmoke, i));
    if (!smallest || inst.model.num_variables() < smallest->model.num_variables()) {
      smallest = std::move(inst);
    }
  }
  const std::vector<SemanticRecord> records = family.detector(smallest->model);
  DomainBox box = DomainBox::from_model(smallest->model);
  PropagatorConfig prop;
  prop.include_rows = true;
  const PropagationOutcome out = run_fixpoint(smallest->model, records, box, prop);
  const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start;

  GateResult r{Gate::kSmoke, false, true, {}, {}};
  std::ostringstream msg;
  msg << records.size() << " records, " << out.calls << " calls, "
      << out.domain_reductions << " reductions on " << smallest->model.num_variables()
      << " variables";
  if (spent.count() > config.smoke_time_limit) {
    msg << "; timeout: " << spent.count() << " s exceeds the " << config.smoke_time_limit
        << " s cap";
  } else if (records.empty()) {
    msg << "; no records detected";
  } else if (out.cutoff) {
    msg << "; cutoff on a feasible instance";
  } else {
    r.passed = true;
  }
  r.detail = msg.str();
  return r;
}

}  // namespace

std::vector<VarId> integer_scope(const MipModel& model) {
  std::vector<VarId> out;
  for (VarId v = 0; v < model.num_variables(); ++v) {
    if (model.variables[v].is_integral()) out.push_back(v);
  }
  return out;
}

EnumerationResult enumerate_feasible(const MipModel& model, const DomainBox& box,
                                     std::span<const VarId> scope, std::int64_t cap,
                                     const Tolerances& tol, bool strict) {
  if (box.size() != model.num_variables()) {
    throw std::invalid_argument("enumerate_feasible: box does not match the model");
  }
  if (strict && integer_scope(model).size() !=
                    static_cast<std::size_t>(model.num_variables())) {
    throw std::invalid_argument("enumerate_feasible: continuous variables in strict mode");
  }
  for (VarId v : scope) {
    if (v < 0 || v >= box.size()) {
      throw std::invalid_argument("enumerate_feasible: scope out of range");
    }
    if (!model.variables[v].is_integral()) {
      throw std::invalid_argument("enumerate_feasible: " + model.variables[v].name +
                                  " is continuous");
    }
    if (!std::isfinite(box.lower[v]) || !std::isfinite(box.upper[v])) {
      throw std::invalid_argument("enumerate_feasible: " + model.variables[v].name +
                                  " is unbounded");
    }
  }
  return Enumerator(model, box, scope, cap, tol).run();
}

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "fail";
}

VerifyResult verify_detector(const PlantedInstance& instance,
                             std::span<const SemanticRecord> records) {
  if (records.empty()) return make(Verdict::kFail, "no records");
  const SemanticRecord& truth = instance.ground_truth;
  int same_family = 0;
  int matches = 0;
  for (const SemanticRecord& rec : records) {
    if (rec.family != instance.family) continue;
    ++same_family;
    matches += rec.scope == truth.scope && rec.params == truth.params;
  }
  if (matches == 1) return make(Verdict::kPass, "planted record recovered");
  if (matches > 1) {
    return make(Verdict::kFail, std::to_string(matches) + " records match the planted one");
  }
  return make(Verdict::kFail, "none of " + std::to_string(same_family) + " " +
                                  std::string(family_name(instance.family)) +
                                  " records matches the planted one");
}

VerifyResult verify_propagation(const MipModel& model, const SemanticRecord& record,
                                const DomainBox& box, const PropagatorConfig& config,
                                std::int64_t cap) {
  const Propagator propagate = [&config](const MipModel& m, const SemanticRecord& r,
                                         DomainBox& b) {
    return propagate_record(m, r, b, config);
  };
  return check_propagation(model, record, box, propagate, config.tolerances, cap);
}

std::string_view gate_name(Gate gate) {
  switch (gate) {
    case Gate::kArtifactCompleteness:
      return "artifact_completeness";
    case Gate::kLoad:
      return "load";
    case Gate::kDetectorVerification:
      return "detector_verification";
    case Gate::kPropagatorSoundness:
      return "propagator_soundness";
    case Gate::kSmoke:
      return "smoke";
    case Gate::kBenchmarkReady:
      return "benchmark_ready";
  }
  return "unknown";
}

FamilyDescriptor family_descriptor(Family family) {
  FamilyDescriptor d;
  d.family = family;
  d.name = std::string(family_name(family));
  d.detector = [family](const MipModel& model) { return detect_family(model, family); };
  d.record_schema = [family](const nlohmann::json& doc, const MipModel& model) {
    SemanticRecord record = record_from_json(doc, model);
    if (record.family != family) {
      throw std::invalid_argument("record of family " +
                                  std::string(family_name(record.family)));
    }
    return record;
  };
  d.propagator = [](const MipModel& model, const SemanticRecord& record, DomainBox& box) {
    return propagate_record(model, record, box);
  };
  d.serializer = [](const SemanticRecord& record, const MipModel& model) {
    return record_to_json(record, model);
  };
  d.sampler = [family](const SynthSize& size, std::uint64_t seed) {
    return reverse_sample(family, size, seed);
  };
  return d;
}

std::vector<FamilyDescriptor> family_registry() {
  std::vector<FamilyDescriptor> out;
  for (Family f : all_families()) out.push_back(family_descriptor(f));
  return out;
}

std::vector<GateResult> run_gate_ladder(const FamilyDescriptor& family,
                                        const GateConfig& config) {
  std::vector<GateResult> results;
  bool blocked = false;
  for (int g = 0; g < kNumGates; ++g) {
    const Gate gate = static_cast<Gate>(g);
    GateResult r;
    if (blocked) {
      r.gate = gate;
      r.detail = "not run";
      results.push_back(std::move(r));
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (gate) {
        case Gate::kArtifactCompleteness:
          r = gate_artifacts(family);
          break;
        case Gate::kLoad:
          r = gate_load(family, config);
          break;
        case Gate::kDetectorVerification:
          r = gate_detector(family, config);
          break;
        case Gate::kPropagatorSoundness:
          r = gate_soundness(family, config);
          break;
        case Gate::kSmoke:
          r = gate_smoke(family, config);
          break;
        case Gate::kBenchmarkReady:
          // Reached only when every earlier gate passed.
          r.passed = true;
          r.detail = "all gates passed";
          break;
      }
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.gate = gate;
    r.ran = true;
    r.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - start);
    blocked = !r.passed;
    results.push_back(std::move(r));
  }
  return results;
}

bool ladder_passed(std::span<const GateResult> results) {
  if (results.size() != static_cast<std::size_t>(kNumGates)) return false;
  for (const GateResult& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

nlohmann::json gate_report_json(std::string_view family,
                                std::span<const GateResult> results,
                                const GateConfig& config, bool include_timing) {
  nlohmann::json gates = nlohmann::json::array();
  for (const GateResult& r : results) {
    nlohmann::json g = {{"gate", std::string(gate_name(r.gate))},
                        {"status", !r.ran ? "not_run" : (r.passed ? "pass" : "fail")},
                        {"detail", r.detail}};
    if (include_timing) {
      g["elapsed_ms"] = std::chrono::duration<double, std::milli>(r.elapsed).count();
    }
    gates.push_back(std::move(g));
  }
  return {{"family", std::string(family)},
          {"benchmark_ready", ladder_passed(results)},
          {"limits",
           {{"suite_seed", config.suite_seed},
            {"detector_instances", config.detector_instances},
            {"soundness_instances", config.soundness_instances},
            {"smoke_time_limit_s", config.smoke_time_limit},
            {"enumeration_cap", config.enumeration_cap}}},
          {"gates", std::move(gates)}};
}

}  // namespace structprop
