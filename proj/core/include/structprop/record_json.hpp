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

// JSON form of semantic records. Variables and rows are referred to by name
// so a record file stays meaningful next to the MPS file it was mined from.

#ifndef STRUCTPROP_RECORD_JSON_HPP_
#define STRUCTPROP_RECORD_JSON_HPP_

#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "structprop/domain.hpp"
#include "structprop/record.hpp"

namespace structprop {

inline constexpr int kRecordSchemaVersion = 1;

// Name used for a variable or row in JSON: its model name, or the same
// C0001 / R0001 fallback the MPS writer uses.
std::string variable_label(const MipModel& model, VarId var);
std::string row_label(const MipModel& model, RowId row);

nlohmann::json record_to_json(const SemanticRecord& record,
                              const MipModel& model);
// Throws std::invalid_argument on unknown names or a malformed document.
SemanticRecord record_from_json(const nlohmann::json& doc,
                                const MipModel& model);

// {"schema": 1, "records": [...]}
nlohmann::json records_to_json(std::span<const SemanticRecord> records,
                               const MipModel& model);
std::vector<SemanticRecord> records_from_json(const nlohmann::json& doc,
                                              const MipModel& model);

// {calls, domain_reductions, cutoffs, prop_time_ms, cutoff, bound_changes}
nlohmann::json outcome_to_json(const PropagationOutcome& outcome,
                               const MipModel& model);

}  // namespace structprop

#endif  // STRUCTPROP_RECORD_JSON_HPP_
