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

// Semantic records: the decoded global-constraint view of a group of linear
// rows. Every parameter payload refers to model variables and rows by dense
// index; `canonicalize` puts a payload into a form that does not depend on
// the order in which rows and variables were stored, so two records describe
// the same structure iff their canonical forms compare equal.

#ifndef STRUCTPROP_RECORD_HPP_
#define STRUCTPROP_RECORD_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "structprop/model.hpp"

namespace structprop {

enum class Family : std::uint8_t {
  kAllDifferent,
  kCardinality,
  kChannel,
  kCumulative,
  kNValue,
  kStretch,
  kOneHotResource,
  kBottleneckExactOne,
  kRosteringWindow,
  kUnitCommitmentRamp,
  kDisjPolyhedral,
};

inline constexpr int kNumFamilies = 11;

std::string_view family_name(Family family);
std::optional<Family> family_from_name(std::string_view name);
// Table order: the six CP families, then the five multi-row patterns.
const std::array<Family, kNumFamilies>& all_families();
// Arbitration order used by detect_all, most specific first.
const std::array<Family, kNumFamilies>& priority_order();
bool is_cp_family(Family family);

// Assignment-matrix encoding: cells[i][v] assigns item i to value v. Item
// rows sum to exactly one; value columns sum to at most one (exactly one
// when values_exact).
struct AllDifferentParams {
  std::vector<std::vector<VarId>> cells;
  bool values_exact = false;

  friend bool operator==(const AllDifferentParams&,
                         const AllDifferentParams&) = default;
};

// lower <= sum(vars) <= upper over binaries.
struct CardinalityParams {
  std::vector<VarId> vars;
  double lower = 0.0;
  double upper = 0.0;

  friend bool operator==(const CardinalityParams&,
                         const CardinalityParams&) = default;
};

struct ChannelIndicator {
  VarId var = 0;
  double value = 0.0;

  friend bool operator==(const ChannelIndicator&,
                         const ChannelIndicator&) = default;
};

// var = sum(value * indicator), sum(indicator) = 1.
struct ChannelLink {
  VarId var = 0;
  std::vector<ChannelIndicator> indicators;
  RowId link_row = -1;
  RowId choice_row = -1;

  friend bool operator==(const ChannelLink&, const ChannelLink&) = default;
};

struct ChannelParams {
  std::vector<ChannelLink> links;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

// A start indicator and the capacity rows (periods) it occupies.
struct CumulativeStart {
  VarId var = 0;
  std::vector<RowId> periods;

  friend bool operator==(const CumulativeStart&,
                         const CumulativeStart&) = default;
};

struct CumulativeTask {
  double demand = 0.0;
  int duration = 0;
  RowId choice_row = -1;
  std::vector<CumulativeStart> starts;

  friend bool operator==(const CumulativeTask&,
                         const CumulativeTask&) = default;
};

struct CumulativeCapacity {
  RowId row = -1;
  double capacity = 0.0;

  friend bool operator==(const CumulativeCapacity&,
                         const CumulativeCapacity&) = default;
};

struct CumulativeParams {
  std::vector<CumulativeTask> tasks;
  std::vector<CumulativeCapacity> capacities;

  friend bool operator==(const CumulativeParams&,
                         const CumulativeParams&) = default;
};

// Value indicator z with z >= y for every item indicator y of that value.
struct NValueValue {
  VarId indicator = 0;
  std::vector<VarId> uses;

  friend bool operator==(const NValueValue&, const NValueValue&) = default;
};

struct NValueParams {
  VarId count = 0;
  std::vector<std::vector<VarId>> items;
  std::vector<NValueValue> values;
  // z <= sum(uses) rows are present, so z = 1 means the value is used.
  bool upper_links = false;

  friend bool operator==(const NValueParams&, const NValueParams&) = default;
};

// Binary state sequence with run-start indicators. A run starting at t keeps
// the state on for min_run periods (truncated at the horizon); no run is
// longer than max_run (0: unbounded).
struct StretchParams {
  std::vector<VarId> states;
  std::vector<VarId> starts;
  int min_run = 1;
  int max_run = 0;

  friend bool operator==(const StretchParams&, const StretchParams&) = default;
};

struct OneHotOption {
  VarId var = 0;
  double cost = 0.0;

  friend bool operator==(const OneHotOption&, const OneHotOption&) = default;
};

// Exact-one groups sharing the capacity row
// external_min + sum(cost * y) <= budget.
struct OneHotResourceParams {
  std::vector<std::vector<OneHotOption>> groups;
  double budget = 0.0;
  double external_min = 0.0;

  friend bool operator==(const OneHotResourceParams&,
                         const OneHotResourceParams&) = default;
};

struct BottleneckOption {
  VarId selector = 0;
  // Absent when the pair has no z >= w x link row.
  std::optional<double> weight;
  std::optional<VarId> activator;

  friend bool operator==(const BottleneckOption&,
                         const BottleneckOption&) = default;
};

struct BottleneckExactOneParams {
  VarId bottleneck = 0;
  std::vector<std::vector<BottleneckOption>> groups;
  std::vector<VarId> activators;
  std::optional<int> open_count;

  friend bool operator==(const BottleneckExactOneParams&,
                         const BottleneckExactOneParams&) = default;
};

enum class RosterRole : std::uint8_t {
  kWorkWindow,
  kRestWindow,
  kFlow,
  kDemand,
  kShiftChoice,
  kHoursLower,
  kHoursUpper,
  kLowerAssign,
  kOther,
};

std::string_view roster_role_tag(RosterRole role);
std::optional<RosterRole> roster_role_from_tag(std::string_view tag);

struct RosterCoverage {
  std::vector<VarId> vars;
  double lower = 0.0;
  double upper = 0.0;

  friend bool operator==(const RosterCoverage&,
                         const RosterCoverage&) = default;
};

struct RoleRow {
  RowId row = -1;
  std::uint8_t role = 0;

  friend bool operator==(const RoleRow&, const RoleRow&) = default;
};

// Shift choices per (nurse, day), coverage per (day, shift) and the full
// row block that the localized fixpoint runs over.
struct RosteringWindowParams {
  std::vector<std::vector<VarId>> shift_choices;
  std::vector<RosterCoverage> coverage;
  std::vector<RoleRow> block;

  friend bool operator==(const RosteringWindowParams&,
                         const RosteringWindowParams&) = default;
};

enum class UcRole : std::uint8_t {
  kDemand,
  kReserve,
  kLink,
  kRamp,
  kMinUp,
  kLogic,
};

std::string_view uc_role_tag(UcRole role);
std::optional<UcRole> uc_role_from_tag(std::string_view tag);

// Per-period variables of one generator. startup/shutdown of the first
// period are -1.
struct UnitSchedule {
  std::vector<VarId> status;
  std::vector<VarId> startup;
  std::vector<VarId> shutdown;
  std::vector<VarId> power;
  std::vector<VarId> reserve;
  double p_min = 0.0;
  double p_max = 0.0;
  double ramp_up = 0.0;
  double startup_ramp = 0.0;

  friend bool operator==(const UnitSchedule&, const UnitSchedule&) = default;
};

struct UnitCommitmentRampParams {
  std::vector<UnitSchedule> units;
  std::vector<double> demand;
  std::vector<double> reserve;
  std::vector<RoleRow> rows;

  friend bool operator==(const UnitCommitmentRampParams&,
                         const UnitCommitmentRampParams&) = default;
};

enum class DisjVariant : std::uint8_t { kBinarySelector, kExactOneMode };

// A guarded row with the big-M term removed: terms <= rhs while active.
struct BranchRow {
  RowId row = -1;
  std::vector<Term> terms;
  double rhs = 0.0;

  friend bool operator==(const BranchRow&, const BranchRow&) = default;
};

struct DisjBranch {
  VarId selector = 0;
  int selector_value = 1;
  std::vector<BranchRow> rows;

  friend bool operator==(const DisjBranch&, const DisjBranch&) = default;
};

struct DisjPolyhedralParams {
  DisjVariant variant = DisjVariant::kBinarySelector;
  std::vector<DisjBranch> branches;
  std::vector<VarId> touched;
  RowId mode_row = -1;

  friend bool operator==(const DisjPolyhedralParams&,
                         const DisjPolyhedralParams&) = default;
};

// Alternatives are in Family order.
using RecordParams =
    std::variant<AllDifferentParams, CardinalityParams, ChannelParams,
                 CumulativeParams, NValueParams, StretchParams,
                 OneHotResourceParams, BottleneckExactOneParams,
                 RosteringWindowParams, UnitCommitmentRampParams,
                 DisjPolyhedralParams>;

enum class Confidence : std::uint8_t { kExact, kHeuristic };

struct SemanticRecord {
  Family family = Family::kCardinality;
  std::vector<VarId> scope;
  RecordParams params;
  std::vector<RowId> evidence;
  Confidence confidence = Confidence::kExact;

  friend bool operator==(const SemanticRecord&,
                         const SemanticRecord&) = default;
};

Family family_of(const RecordParams& params);

// Builds a record whose scope is every variable mentioned by the params.
SemanticRecord make_record(RecordParams params, std::vector<RowId> evidence,
                           Confidence confidence = Confidence::kExact);

std::vector<VarId> params_variables(const RecordParams& params);

// Sorts scope, evidence and all order-free parts of the params.
void canonicalize(SemanticRecord& record);

// Rewrites every variable id v as var_map[v] and row id r as row_map[r],
// then canonicalizes.
SemanticRecord remap(const SemanticRecord& record,
                     std::span<const VarId> var_map,
                     std::span<const RowId> row_map);

// Same family, scope and params once both are canonical.
bool same_structure(const SemanticRecord& a, const SemanticRecord& b);

}  // namespace structprop

#endif  // STRUCTPROP_RECORD_HPP_
