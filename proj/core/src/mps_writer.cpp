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

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "structprop/mps.hpp"

namespace structprop {
namespace {

constexpr std::size_t kMaxNameLength = 255;

// Shortest representation that reads back to the same double.
std::string format_number(double value) {
  if (value == kInfinity) return "1e+30";
  if (value == -kInfinity) return "-1e+30";
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string checked_name(const std::string& name, char prefix, int index) {
  if (name.empty()) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%c%04d", prefix, index + 1);
    return buf;
  }
  if (name.size() > kMaxNameLength) {
    throw std::invalid_argument("name longer than 255 characters: '" +
                                name.substr(0, 32) + "...'");
  }
  for (char c : name) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      throw std::invalid_argument("name contains whitespace: '" + name + "'");
    }
  }
  return name;
}

void write_bounds(std::string& out, const std::string& name,
                  const Variable& v) {
  auto line = [&](const char* type, const std::string* value) {
    out += ' ';
    out += type;
    out += " BND ";
    out += name;
    if (value != nullptr) {
      out += ' ';
      out += *value;
    }
    out += '\n';
  };
  if (v.lower == v.upper && std::isfinite(v.lower)) {
    const std::string value = format_number(v.lower);
    line("FX", &value);
    return;
  }
  if (!v.is_integral()) {
    if (v.lower == -kInfinity && v.upper == kInfinity) {
      line("FR", nullptr);
      return;
    }
    if (v.lower == -kInfinity) {
      line("MI", nullptr);
    } else if (v.lower != 0.0 || v.upper < 0.0) {
      const std::string value = format_number(v.lower);
      line("LO", &value);
    }
    if (v.upper != kInfinity) {
      const std::string value = format_number(v.upper);
      line("UP", &value);
    }
    return;
  }
  // Integer defaults differ between readers; spell out both sides.
  if (v.lower == -kInfinity) {
    line("MI", nullptr);
  } else {
    const std::string value = format_number(v.lower);
    line("LO", &value);
  }
  if (v.upper == kInfinity) {
    line("PL", nullptr);
  } else {
    const std::string value = format_number(v.upper);
    line("UP", &value);
  }
}

}  // namespace

std::string write_mps(const MipModel& model) {
  const int n = model.num_variables();
  const int m = model.num_rows();
  std::vector<std::string> col_names(n);
  std::vector<std::string> row_names(m);
  for (int j = 0; j < n; ++j) {
    col_names[j] = checked_name(model.variables[j].name, 'C', j);
  }
  for (int i = 0; i < m; ++i) {
    row_names[i] = checked_name(model.rows[i].name, 'R', i);
  }
  const std::string obj_name =
      checked_name(model.objective_name.empty() ? "OBJ" : model.objective_name,
                   'N', 0);

  std::string out;
  out += "NAME ";
  out += model.name.empty() ? "UNNAMED" : checked_name(model.name, 'M', 0);
  out += '\n';
  if (model.sense == ObjectiveSense::kMaximize) out += "OBJSENSE\n    MAX\n";

  out += "ROWS\n";
  out += " N  " + obj_name + '\n';
  for (int i = 0; i < m; ++i) {
    const LinearRow& row = model.rows[i];
    char type = 'L';
    if (row.lhs == row.rhs) {
      type = 'E';
    } else if (row.lhs != -kInfinity && row.rhs == kInfinity) {
      type = 'G';
    }
    out += ' ';
    out += type;
    out += "  " + row_names[i] + '\n';
  }

  // Column-major view of the rows.
  std::vector<std::vector<std::pair<int, double>>> columns(n);
  for (int i = 0; i < m; ++i) {
    for (const Term& t : model.rows[i].terms) {
      columns[t.var].emplace_back(i, t.coef);
    }
  }
  std::vector<double> obj(n, 0.0);
  for (const Term& t : model.stated_objective()) obj[t.var] = t.coef;

  out += "COLUMNS\n";
  bool in_marker = false;
  int marker_count = 0;
  for (int j = 0; j < n; ++j) {
    const bool integral = model.variables[j].is_integral();
    if (integral && !in_marker) {
      out += "    MARKER" + std::to_string(marker_count++) +
             " 'MARKER' 'INTORG'\n";
      in_marker = true;
    } else if (!integral && in_marker) {
      out += "    MARKER" + std::to_string(marker_count++) +
             " 'MARKER' 'INTEND'\n";
      in_marker = false;
    }
    bool wrote = false;
    if (obj[j] != 0.0) {
      out += "    " + col_names[j] + ' ' + obj_name + ' ' +
             format_number(obj[j]) + '\n';
      wrote = true;
    }
    for (const auto& [row, coef] : columns[j]) {
      out += "    " + col_names[j] + ' ' + row_names[row] + ' ' +
             format_number(coef) + '\n';
      wrote = true;
    }
    if (!wrote) {
      out += "    " + col_names[j] + ' ' + obj_name + " 0\n";
    }
  }
  if (in_marker) {
    out += "    MARKER" + std::to_string(marker_count++) +
           " 'MARKER' 'INTEND'\n";
  }

  out += "RHS\n";
  const double stated_offset = model.sense == ObjectiveSense::kMaximize
                                   ? -model.objective_offset
                                   : model.objective_offset;
  if (stated_offset != 0.0) {
    out += "    RHS " + obj_name + ' ' + format_number(-stated_offset) + '\n';
  }
  std::vector<int> ranged;
  for (int i = 0; i < m; ++i) {
    const LinearRow& row = model.rows[i];
    double value = 0.0;
    if (row.lhs == row.rhs) {
      value = row.rhs;
    } else if (row.lhs != -kInfinity && row.rhs == kInfinity) {
      value = row.lhs;
    } else {
      value = row.rhs;  // free rows get rhs +inf
      if (row.lhs != -kInfinity) ranged.push_back(i);
    }
    if (value != 0.0) {
      out += "    RHS " + row_names[i] + ' ' + format_number(value) + '\n';
    }
  }
  if (!ranged.empty()) {
    out += "RANGES\n";
    for (int i : ranged) {
      const LinearRow& row = model.rows[i];
      out += "    RNG " + row_names[i] + ' ' +
             format_number(row.rhs - row.lhs) + '\n';
    }
  }

  std::string bounds;
  for (int j = 0; j < n; ++j) {
    const Variable& v = model.variables[j];
    if (!v.is_integral() && v.lower == 0.0 && v.upper == kInfinity) continue;
    write_bounds(bounds, col_names[j], v);
  }
  if (!bounds.empty()) {
    out += "BOUNDS\n";
    out += bounds;
  }
  out += "ENDATA\n";
  return out;
}

void write_mps_file(const MipModel& model, const std::filesystem::path& path) {
  const std::string text = write_mps(model);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << text;
}

}  // namespace structprop
