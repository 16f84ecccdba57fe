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

// Free-format MPS reader and writer.
//
// Supported sections: NAME, OBJSENSE, ROWS, COLUMNS (with INTORG/INTEND
// markers), RHS, RANGES, BOUNDS, ENDATA. SOS sections and semi-continuous
// bounds are rejected. Values with magnitude >= 1e30 are read as infinite.

#ifndef STRUCTPROP_MPS_HPP_
#define STRUCTPROP_MPS_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "structprop/model.hpp"

namespace structprop {

class MpsError : public std::runtime_error {
 public:
  MpsError(int line, const std::string& message);
  // 1-based line number, 0 when the error is not tied to a line.
  int line() const { return line_; }

 private:
  int line_;
};

struct MpsOptions {
  // Integer columns without BOUNDS entries default to [0, 1] (classic MPS).
  // When set they default to [0, +inf) instead.
  bool int_default_unbounded = false;
};

MipModel parse_mps(std::string_view text, const MpsOptions& options = {});
MipModel read_mps_file(const std::filesystem::path& path,
                       const MpsOptions& options = {});

// Throws std::invalid_argument for names longer than 255 characters or
// containing whitespace. Empty names are replaced by C0001... / R0001...
std::string write_mps(const MipModel& model);
void write_mps_file(const MipModel& model, const std::filesystem::path& path);

}  // namespace structprop

#endif  // STRUCTPROP_MPS_HPP_
