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

// Shared row views for the detectors.

#ifndef STRUCTPROP_DETECT_CONTEXT_HPP_
#define STRUCTPROP_DETECT_CONTEXT_HPP_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "structprop/detect.hpp"
#include "structprop/domain.hpp"

namespace structprop::detail {

// lower <= sum(vars) <= upper with unit coefficients over binaries, sides
// clamped to [0, |vars|].
struct UnitSum {
  std::vector<VarId> vars;
  double lower = 0.0;
  double upper = 0.0;
};

// terms . x <= rhs.
struct LeqRow {
  std::vector<Term> terms;
  double rhs = 0.0;
};

class DetectContext {
 public:
  DetectContext(const MipModel& model, const DetectConfig& config,
                std::span<const std::uint8_t> available);

  const MipModel& model() const { return model_; }
  const DetectConfig& config() const { return config_; }
  const DomainBox& box() const { return box_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Available, scanned and able to bind under the original bounds.
  bool usable(RowId row) const { return usable_[row] != 0; }
  const std::vector<RowId>& rows() const { return rows_; }
  // Usable rows containing `var`, ascending.
  const std::vector<RowId>& rows_of(VarId var) const { return var_rows_[var]; }

  bool is_binary(VarId var) const;
  // Integer, not binary.
  bool is_general_integer(VarId var) const;

  const std::optional<UnitSum>& unit_sum(RowId row) const {
    return unit_sums_[row];
  }
  bool is_exact_one(RowId row) const;
  bool is_set_packing(RowId row) const;

  // The row as terms <= rhs when exactly one side is finite.
  std::optional<LeqRow> leq_form(RowId row) const;

  // from - to <= 0 over two binaries with opposite unit coefficients.
  std::optional<std::pair<VarId, VarId>> implication(RowId row) const;

 private:
  const MipModel& model_;
  const DetectConfig& config_;
  DomainBox box_;
  std::vector<std::uint8_t> usable_;
  std::vector<RowId> rows_;
  std::vector<std::vector<RowId>> var_rows_;
  std::vector<std::optional<UnitSum>> unit_sums_;
  std::vector<std::string> warnings_;
};

// Whether two sorted id lists share an element.
bool intersects(std::span<const int> a, std::span<const int> b);

// Union-find over dense ids.
class DisjointSets {
 public:
  explicit DisjointSets(int n);
  int find(int x);
  void unite(int a, int b);

 private:
  std::vector<int> parent_;
};

// Detector entry points. Each returns records in canonical form.
std::vector<SemanticRecord> detect_all_different(const DetectContext& ctx);
std::vector<SemanticRecord> detect_cardinality(const DetectContext& ctx);
std::vector<SemanticRecord> detect_channel(const DetectContext& ctx);
std::vector<SemanticRecord> detect_cumulative(const DetectContext& ctx);
std::vector<SemanticRecord> detect_nvalue(const DetectContext& ctx);
std::vector<SemanticRecord> detect_stretch(const DetectContext& ctx);
std::vector<SemanticRecord> detect_one_hot_resource(const DetectContext& ctx);
std::vector<SemanticRecord> detect_bottleneck(const DetectContext& ctx);
std::vector<SemanticRecord> detect_rostering(const DetectContext& ctx);
std::vector<SemanticRecord> detect_unit_commitment(const DetectContext& ctx);
std::vector<SemanticRecord> detect_disjunction(const DetectContext& ctx);

// Sorts records by their smallest evidence row so output order does not
// depend on the scan order.
void sort_records(std::vector<SemanticRecord>& records);

}  // namespace structprop::detail

#endif  // STRUCTPROP_DETECT_CONTEXT_HPP_
