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

#include "structprop/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "structprop/record_json.hpp"
#include "synth/builder.hpp"

namespace structprop {
namespace {

using detail::Rng;

constexpr int kMaxAttempts = 10000;

detail::Generator generator_for(Family family) {
  switch (family) {
    case Family::kAllDifferent:
      return detail::sample_all_different;
    case Family::kCardinality:
      return detail::sample_cardinality;
    case Family::kChannel:
      return detail::sample_channel;
    case Family::kCumulative:
      return detail::sample_cumulative;
    case Family::kNValue:
      return detail::sample_nvalue;
    case Family::kStretch:
      return detail::sample_stretch;
    case Family::kOneHotResource:
      return detail::sample_one_hot_resource;
    case Family::kBottleneckExactOne:
      return detail::sample_bottleneck;
    case Family::kRosteringWindow:
      return detail::sample_rostering;
    case Family::kUnitCommitmentRamp:
      return detail::sample_unit_commitment;
    case Family::kDisjPolyhedral:
      return detail::sample_disjunction;
  }
  throw std::invalid_argument("unknown family");
}

// Spreads seeds of different families apart (splitmix64 finalizer).
std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<VarId> integer_vars(const MipModel& model) {
  std::vector<VarId> out;
  for (VarId v = 0; v < model.num_variables(); ++v) {
    if (model.variables[v].is_integral()) out.push_back(v);
  }
  return out;
}

}  // namespace

double integer_scope_bits(const MipModel& model) {
  double bits = 0.0;
  for (const Variable& var : model.variables) {
    if (!var.is_integral()) continue;
    if (!std::isfinite(var.lower) || !std::isfinite(var.upper)) return kInfinity;
    const double count = std::floor(var.upper + 1e-9) - std::ceil(var.lower - 1e-9) + 1;
    if (count > 1) bits += std::log2(count);
  }
  return bits;
}

PlantedInstance reverse_sample(Family family, const SynthSize& size,
                               std::uint64_t seed) {
  if (size.n < 0 || size.m < 0) throw std::invalid_argument("sizes must be >= 0");
  const detail::Generator generate = generator_for(family);
  Rng rng(mix(seed, static_cast<std::uint64_t>(family)));
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::optional<detail::Draft> draft = generate(rng, size);
    if (!draft || !draft->builder.witness_ok() || !draft->builder.all_rows_bind()) {
      continue;
    }
    if (integer_scope_bits(draft->builder.model) > kMaxScopeBits + 1e-9) {
      throw std::invalid_argument("instance exceeds the enumeration budget");
    }
    PlantedInstance inst;
    inst.family = family;
    inst.seed = seed;
    inst.model = std::move(draft->builder.model);
    inst.model.name = std::string(family_name(family)) + "_" + std::to_string(seed);
    inst.witness = std::move(draft->builder.witness);
    inst.ground_truth = make_record(std::move(draft->params), std::move(draft->evidence));

    const std::vector<VarId> ints = integer_vars(inst.model);
    std::vector<Term> objective;
    for (VarId v : ints) {
      const int cost = rng.uniform(-5, 5);
      if (cost != 0) objective.push_back({v, static_cast<double>(cost)});
    }
    inst.model.set_objective(std::move(objective), ObjectiveSense::kMinimize);

    inst.var_map.resize(inst.model.num_variables());
    std::iota(inst.var_map.begin(), inst.var_map.end(), 0);
    inst.row_map.resize(inst.model.num_rows());
    std::iota(inst.row_map.begin(), inst.row_map.end(), 0);

    if (size.allow_infeasible && !ints.empty()) {
      const int fixings = std::min<int>(rng.uniform(1, 3), static_cast<int>(ints.size()));
      std::vector<VarId> pool = ints;
      rng.shuffle(pool);
      for (int k = 0; k < fixings; ++k) {
        Variable& var = inst.model.variables[pool[k]];
        const double value = rng.uniform(static_cast<int>(var.lower),
                                         static_cast<int>(var.upper));
        var.lower = value;
        var.upper = value;
        var.integrality = normalize_integrality(var.integrality, value, value);
      }
      inst.witness_feasible = inst.model.is_feasible(inst.witness);
    }
    return inst;
  }
  throw std::runtime_error("could not sample a " + std::string(family_name(family)) +
                           " instance");
}

PlantedInstance obfuscate(const PlantedInstance& instance,
                          const ObfuscationConfig& config) {
  if (!(config.sign_flip_prob >= 0.0 && config.sign_flip_prob <= 1.0)) {
    throw std::invalid_argument("sign_flip_prob must lie in [0, 1]");
  }
  if (config.noise_rows < 0) throw std::invalid_argument("noise_rows must be >= 0");
  Rng rng(mix(config.seed, 0x0bf5ULL));
  const MipModel& src = instance.model;
  const DomainBox box = DomainBox::from_model(src);

  std::vector<LinearRow> rows = src.rows;
  // Noise rows: random combinations whose sides lie beyond the activity
  // range, so no point is cut off.
  std::vector<VarId> bounded;
  for (VarId v = 0; v < src.num_variables(); ++v) {
    if (std::isfinite(src.variables[v].lower) && std::isfinite(src.variables[v].upper)) {
      bounded.push_back(v);
    }
  }
  for (int k = 0; k < config.noise_rows && !bounded.empty(); ++k) {
    std::vector<VarId> pool = bounded;
    rng.shuffle(pool);
    const int width = std::min<int>(rng.uniform(2, 4), static_cast<int>(pool.size()));
    LinearRow row;
    for (int j = 0; j < width; ++j) {
      row.terms.push_back({pool[j], static_cast<double>(rng.nonzero(5))});
    }
    canonicalize_terms(row.terms);
    const RowActivity act = compute_activity(std::span<const Term>(row.terms), box);
    const int kind = rng.uniform(0, 2);
    row.lhs = kind == 0 ? -kInfinity : std::floor(act.min_activity) - rng.uniform(0, 3);
    row.rhs = kind == 1 ? kInfinity : std::ceil(act.max_activity) + rng.uniform(0, 3);
    rows.push_back(std::move(row));
  }
  for (LinearRow& row : rows) {
    if (config.sign_flip_prob > 0.0 && rng.chance(config.sign_flip_prob)) {
      row = negated(row);
    }
  }

  std::vector<VarId> var_perm(src.num_variables());
  std::iota(var_perm.begin(), var_perm.end(), 0);
  if (config.permute_vars) rng.shuffle(var_perm);
  std::vector<RowId> row_perm(rows.size());
  std::iota(row_perm.begin(), row_perm.end(), 0);
  if (config.permute_rows) rng.shuffle(row_perm);

  PlantedInstance out;
  out.family = instance.family;
  out.seed = instance.seed;
  out.witness_feasible = instance.witness_feasible;
  MipModel& m = out.model;
  m.name = src.name;
  m.sense = src.sense;
  m.objective_name = src.objective_name;
  m.objective_offset = src.objective_offset;
  m.variables.resize(src.num_variables());
  out.witness.resize(src.num_variables());
  for (VarId v = 0; v < src.num_variables(); ++v) {
    m.variables[var_perm[v]] = src.variables[v];
    out.witness[var_perm[v]] = instance.witness[v];
  }
  for (VarId v = 0; v < m.num_variables(); ++v) {
    m.variables[v].name = "x" + std::to_string(v + 1);
  }
  m.rows.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    LinearRow row = std::move(rows[r]);
    for (Term& t : row.terms) t.var = var_perm[t.var];
    canonicalize_terms(row.terms);
    m.rows[row_perm[r]] = std::move(row);
  }
  for (RowId r = 0; r < m.num_rows(); ++r) m.rows[r].name = "c" + std::to_string(r + 1);
  m.objective = src.objective;
  for (Term& t : m.objective) t.var = var_perm[t.var];
  canonicalize_terms(m.objective);

  out.ground_truth = remap(instance.ground_truth, var_perm, row_perm);
  out.var_map.reserve(instance.var_map.size());
  for (VarId v : instance.var_map) out.var_map.push_back(var_perm[v]);
  out.row_map.reserve(instance.row_map.size());
  for (RowId r : instance.row_map) out.row_map.push_back(row_perm[r]);
  return out;
}

nlohmann::json sidecar_json(const PlantedInstance& instance) {
  nlohmann::json doc;
  doc["family"] = std::string(family_name(instance.family));
  doc["seed"] = instance.seed;
  doc["record"] = record_to_json(instance.ground_truth, instance.model);
  doc["permutation"] = {{"variables", instance.var_map}, {"rows", instance.row_map}};
  doc["witness"] = instance.witness;
  doc["witness_feasible"] = instance.witness_feasible;
  return doc;
}

}  // namespace structprop
