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

#include "structprop/detect.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "detect/context.hpp"

namespace structprop {
namespace {

using detail::DetectContext;

std::vector<SemanticRecord> run_detector(const DetectContext& ctx,
                                         Family family) {
  switch (family) {
    case Family::kAllDifferent:
      return detail::detect_all_different(ctx);
    case Family::kCardinality:
      return detail::detect_cardinality(ctx);
    case Family::kChannel:
      return detail::detect_channel(ctx);
    case Family::kCumulative:
      return detail::detect_cumulative(ctx);
    case Family::kNValue:
      return detail::detect_nvalue(ctx);
    case Family::kStretch:
      return detail::detect_stretch(ctx);
    case Family::kOneHotResource:
      return detail::detect_one_hot_resource(ctx);
    case Family::kBottleneckExactOne:
      return detail::detect_bottleneck(ctx);
    case Family::kRosteringWindow:
      return detail::detect_rostering(ctx);
    case Family::kUnitCommitmentRamp:
      return detail::detect_unit_commitment(ctx);
    case Family::kDisjPolyhedral:
      return detail::detect_disjunction(ctx);
  }
  return {};
}

// Keeps records whose evidence is not shared with another record of the
// same family; sharing records are all dropped, since picking one would
// depend on row order.
void drop_overlapping(std::vector<SemanticRecord>& records) {
  std::vector<int> uses;
  for (const SemanticRecord& r : records) {
    for (RowId e : r.evidence) {
      if (e >= static_cast<RowId>(uses.size())) uses.resize(e + 1, 0);
      ++uses[e];
    }
  }
  std::erase_if(records, [&](const SemanticRecord& r) {
    return std::any_of(r.evidence.begin(), r.evidence.end(),
                       [&](RowId e) { return uses[e] > 1; });
  });
}

}  // namespace

std::vector<SemanticRecord> detect_family(const MipModel& model, Family family,
                                          const DetectConfig& config) {
  return detect_family(model, family, config, {}, nullptr);
}

std::vector<SemanticRecord> detect_family(
    const MipModel& model, Family family, const DetectConfig& config,
    std::span<const std::uint8_t> available,
    std::vector<std::string>* warnings) {
  const DetectContext ctx(model, config, available);
  if (warnings != nullptr) {
    for (const std::string& w : ctx.warnings()) {
      warnings->push_back(std::string(family_name(family)) + ": " + w);
    }
  }
  std::vector<SemanticRecord> records = run_detector(ctx, family);
  drop_overlapping(records);
  detail::sort_records(records);
  return records;
}

DetectionReport detect_all(const MipModel& model, const DetectConfig& config) {
  DetectionReport report;
  std::vector<std::uint8_t> available(model.num_rows(), 1);
  for (Family family : priority_order()) {
    std::vector<SemanticRecord> found =
        detect_family(model, family, config, available, &report.warnings);
    for (const SemanticRecord& r : found) {
      if (r.confidence != Confidence::kExact) continue;
      for (RowId e : r.evidence) available[e] = 0;
    }
    report.counts[static_cast<std::size_t>(family)] =
        static_cast<int>(found.size());
    report.records.insert(report.records.end(), found.begin(), found.end());
  }
  // The cap warning repeats per family; keep one copy of each message.
  std::vector<std::string> unique;
  for (const std::string& w : report.warnings) {
    const std::string tail = w.substr(w.find(": ") + 2);
    const bool seen = std::any_of(unique.begin(), unique.end(), [&](const std::string& u) {
      return u == tail;
    });
    if (!seen) unique.push_back(tail);
  }
  report.warnings = std::move(unique);
  return report;
}

std::string_view row_shape_name(RowShape shape) {
  static constexpr std::string_view kNames[] = {
      "exact_one",     "set_packing",    "cardinality",
      "knapsack",      "implication",    "variable_bound",
      "linking_equality", "mixed_knapsack", "general",
  };
  return kNames[static_cast<int>(shape)];
}

RowShape classify_row(const MipModel& model, RowId row) {
  const LinearRow& r = model.rows.at(row);
  int binaries = 0;
  for (const Term& t : r.terms) binaries += model.variables[t.var].is_binary();
  const int n = static_cast<int>(r.terms.size());
  const bool one_sided = std::isfinite(r.lhs) != std::isfinite(r.rhs);
  // Orientation with a finite upper side.
  const double sign = std::isfinite(r.rhs) ? 1.0 : -1.0;
  const double side = std::isfinite(r.rhs) ? r.rhs : -r.lhs;
  bool unit = n > 0;
  bool positive = true;
  for (const Term& t : r.terms) {
    unit = unit && std::abs(t.coef) == std::abs(r.terms.front().coef) &&
           (t.coef > 0) == (r.terms.front().coef > 0);
    positive = positive && sign * t.coef > 0;
  }
  if (binaries == n && n > 0) {
    if (unit) {
      const double c = std::abs(r.terms.front().coef);
      const bool pos = r.terms.front().coef > 0;
      const double lo = pos ? r.lhs / c : -r.rhs / c;
      const double hi = pos ? r.rhs / c : -r.lhs / c;
      if (lo == 1.0 && hi == 1.0) return RowShape::kExactOne;
      if (hi == 1.0 && !(lo > 0)) return RowShape::kSetPacking;
      return RowShape::kCardinality;
    }
    if (n == 2 && one_sided && side == 0.0 &&
        r.terms[0].coef == -r.terms[1].coef) {
      return RowShape::kImplication;
    }
    if (one_sided && positive) return RowShape::kKnapsack;
    return RowShape::kGeneral;
  }
  if (n == 2 && binaries == 1 && one_sided) return RowShape::kVariableBound;
  if (r.is_equality() && binaries >= 1 && binaries == n - 1) {
    return RowShape::kLinkingEquality;
  }
  if (one_sided && binaries >= 1) return RowShape::kMixedKnapsack;
  return RowShape::kGeneral;
}

std::vector<FamilyFingerprint> baseline_registry() {
  return {
      {"set_partitioning", {RowShape::kExactOne}, true},
      {"set_packing", {RowShape::kSetPacking}, true},
      {"single_row_activity",
       {RowShape::kCardinality, RowShape::kKnapsack, RowShape::kMixedKnapsack},
       true},
      {"implication", {RowShape::kImplication}, true},
      {"variable_bound", {RowShape::kVariableBound}, true},
  };
}

FamilyFingerprint fingerprint_of(const MipModel& model,
                                 const SemanticRecord& record) {
  FamilyFingerprint fp;
  fp.name = std::string(family_name(record.family));
  std::set<RowShape> shapes;
  for (RowId r : record.evidence) shapes.insert(classify_row(model, r));
  fp.shapes.assign(shapes.begin(), shapes.end());
  fp.single_row = record.evidence.size() == 1;
  return fp;
}

std::string_view novelty_name(Novelty novelty) {
  switch (novelty) {
    case Novelty::kDuplicate:
      return "duplicate";
    case Novelty::kExtension:
      return "extension";
    case Novelty::kNovel:
      return "novel";
  }
  return "novel";
}

Novelty novelty_gate(const MipModel& model, const SemanticRecord& candidate,
                     std::span<const FamilyFingerprint> registry) {
  const FamilyFingerprint fp = fingerprint_of(model, candidate);
  for (const FamilyFingerprint& entry : registry) {
    if (entry.single_row) {
      // One rule must explain every evidence row on its own.
      if (std::includes(entry.shapes.begin(), entry.shapes.end(),
                        fp.shapes.begin(), fp.shapes.end())) {
        return Novelty::kDuplicate;
      }
    } else if (entry.shapes == fp.shapes) {
      return Novelty::kDuplicate;
    }
  }
  for (const FamilyFingerprint& entry : registry) {
    if (entry.single_row) continue;
    if (entry.shapes.size() < fp.shapes.size() &&
        std::includes(fp.shapes.begin(), fp.shapes.end(),
                      entry.shapes.begin(), entry.shapes.end())) {
      return Novelty::kExtension;
    }
  }
  return Novelty::kNovel;
}

}  // namespace structprop
