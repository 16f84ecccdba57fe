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

// Structure detection: lifts groups of linear rows into semantic records.
//
// Every detector works on a sign-normalized view of the rows, so multiplying
// a row and its sides by -1 never changes what is found, and it orders its
// output canonically, so permuting rows or variables only renames ids in the
// result. Rows that cannot bind under the original bounds are ignored.

#ifndef STRUCTPROP_DETECT_HPP_
#define STRUCTPROP_DETECT_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "structprop/model.hpp"
#include "structprop/record.hpp"

namespace structprop {

struct DetectConfig {
  // Fraction of (group, option) pairs that must carry a z >= w x row before
  // a bottleneck structure is accepted.
  double bottleneck_link_coverage = 0.8;
  // Rows beyond this index are not scanned; a warning is recorded.
  int max_rows = 200000;
  // Upper limit on branches of a detected disjunction.
  int max_disjunction_branches = 6;
  Tolerances tolerances;
};

struct DetectionReport {
  std::vector<SemanticRecord> records;
  std::array<int, kNumFamilies> counts{};
  std::vector<std::string> warnings;

  int count(Family family) const {
    return counts[static_cast<std::size_t>(family)];
  }
};

std::vector<SemanticRecord> detect_family(const MipModel& model, Family family,
                                          const DetectConfig& config = {});

// As above, restricted to rows with available[r] != 0 (all rows when
// `available` is empty). Warnings are appended to `warnings` if non-null.
std::vector<SemanticRecord> detect_family(
    const MipModel& model, Family family, const DetectConfig& config,
    std::span<const std::uint8_t> available, std::vector<std::string>* warnings);

// Runs every detector in priority order; rows claimed by an exact record are
// withheld from lower-priority detectors.
DetectionReport detect_all(const MipModel& model,
                           const DetectConfig& config = {});

// Coarse row classes used to fingerprint a structure.
enum class RowShape : std::uint8_t {
  kExactOne,
  kSetPacking,
  kCardinality,
  kKnapsack,
  kImplication,
  kVariableBound,
  kLinkingEquality,
  kMixedKnapsack,
  kGeneral,
};

std::string_view row_shape_name(RowShape shape);
RowShape classify_row(const MipModel& model, RowId row);

struct FamilyFingerprint {
  std::string name;
  // Sorted, unique.
  std::vector<RowShape> shapes;
  // The rule reasons about one row at a time.
  bool single_row = false;
};

// Fingerprints of the row-level reasoning a MIP solver already performs:
// exact-one and set-packing rows, and single-row residual-activity
// tightening on knapsack-like rows.
std::vector<FamilyFingerprint> baseline_registry();

FamilyFingerprint fingerprint_of(const MipModel& model,
                                 const SemanticRecord& record);

enum class Novelty : std::uint8_t { kDuplicate, kExtension, kNovel };

std::string_view novelty_name(Novelty novelty);

// kDuplicate: every evidence row is explained by one single-row rule, or the
// fingerprint equals a registered one. kExtension: a registered multi-row
// fingerprint is a strict subset. kNovel otherwise.
Novelty novelty_gate(const MipModel& model, const SemanticRecord& candidate,
                     std::span<const FamilyFingerprint> registry);

}  // namespace structprop

#endif  // STRUCTPROP_DETECT_HPP_
