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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "structprop/mps.hpp"

namespace structprop {

MpsError::MpsError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                        message
                                  : message),
      line_(line) {}

namespace {

constexpr double kMpsInfinity = 1e30;

enum class Section {
  kNone,
  kName,
  kObjSense,
  kRows,
  kColumns,
  kRhs,
  kRanges,
  kBounds,
  kEnd
};

struct RowEntry {
  std::string name;
  char sense = 'N';
  double rhs = 0.0;
  std::optional<double> range;
  bool objective = false;
};

struct ColumnEntry {
  std::string name;
  bool integer = false;
  std::vector<Term> entries;  // var field holds the row index
  std::vector<std::pair<int, double>> objective;
  double lower = 0.0;
  double upper = kInfinity;
  bool lower_set = false;
  bool upper_set = false;
  bool any_bound = false;
};

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::string upper_case(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

double parse_number(std::string_view token, int line) {
  const std::string upper = upper_case(token);
  if (upper == "INF" || upper == "INFINITY" || upper == "+INF" ||
      upper == "+INFINITY") {
    return kInfinity;
  }
  if (upper == "-INF" || upper == "-INFINITY") return -kInfinity;
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || std::isnan(value)) {
    throw MpsError(line, "malformed number '" + std::string(token) + "'");
  }
  if (value >= kMpsInfinity) return kInfinity;
  if (value <= -kMpsInfinity) return -kInfinity;
  return value;
}

bool looks_numeric(std::string_view token) {
  if (token.empty()) return false;
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

class MpsReader {
 public:
  explicit MpsReader(const MpsOptions& options) : options_(options) {}

  MipModel read(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size() && section_ != Section::kEnd) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      std::string_view line = text.substr(pos, nl - pos);
      pos = nl + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      handle_line(line, line_no);
      if (nl == text.size()) break;
    }
    if (section_ != Section::kEnd) {
      throw MpsError(line_no, "missing ENDATA (truncated input?)");
    }
    return build();
  }

 private:
  void handle_line(std::string_view line, int line_no) {
    if (line.empty() || line.front() == '*') return;
    const auto tokens = tokenize(line);
    if (tokens.empty()) return;
    const bool header = line.front() != ' ' && line.front() != '\t';
    if (header) {
      start_section(tokens, line_no);
      return;
    }
    switch (section_) {
      case Section::kNone:
      case Section::kName:
        throw MpsError(line_no, "data line outside of a section");
      case Section::kObjSense:
        set_sense(tokens[0], line_no);
        break;
      case Section::kRows:
        read_row(tokens, line_no);
        break;
      case Section::kColumns:
        read_column(tokens, line_no);
        break;
      case Section::kRhs:
        read_rhs_or_range(tokens, line_no, /*range=*/false);
        break;
      case Section::kRanges:
        read_rhs_or_range(tokens, line_no, /*range=*/true);
        break;
      case Section::kBounds:
        read_bound(tokens, line_no);
        break;
      case Section::kEnd:
        break;
    }
  }

  void start_section(const std::vector<std::string_view>& tokens,
                     int line_no) {
    const std::string key = upper_case(tokens[0]);
    if (key == "NAME") {
      section_ = Section::kName;
      if (tokens.size() > 1) name_ = std::string(tokens[1]);
    } else if (key == "OBJSENSE" || key == "OBJSENCE") {
      section_ = Section::kObjSense;
      if (tokens.size() > 1) set_sense(tokens[1], line_no);
    } else if (key == "ROWS") {
      section_ = Section::kRows;
    } else if (key == "COLUMNS") {
      section_ = Section::kColumns;
    } else if (key == "RHS") {
      section_ = Section::kRhs;
    } else if (key == "RANGES") {
      section_ = Section::kRanges;
    } else if (key == "BOUNDS") {
      section_ = Section::kBounds;
    } else if (key == "ENDATA") {
      section_ = Section::kEnd;
    } else if (key == "SOS") {
      throw MpsError(line_no, "SOS sections are not supported");
    } else {
      throw MpsError(line_no, "unknown section '" + std::string(tokens[0]) +
                                  "'");
    }
  }

  void set_sense(std::string_view token, int line_no) {
    const std::string s = upper_case(token);
    if (s == "MAX" || s == "MAXIMIZE") {
      maximize_ = true;
    } else if (s == "MIN" || s == "MINIMIZE") {
      maximize_ = false;
    } else {
      throw MpsError(line_no, "unknown objective sense '" + std::string(token) +
                                  "'");
    }
  }

  void read_row(const std::vector<std::string_view>& tokens, int line_no) {
    if (tokens.size() < 2) throw MpsError(line_no, "malformed ROWS entry");
    const std::string type = upper_case(tokens[0]);
    if (type.size() != 1 || std::string_view("NLGE").find(type[0]) ==
                                std::string_view::npos) {
      throw MpsError(line_no, "unknown row type '" + std::string(tokens[0]) +
                                  "'");
    }
    std::string row_name(tokens[1]);
    if (row_index_.count(row_name) != 0) {
      throw MpsError(line_no, "row '" + row_name + "' declared twice");
    }
    RowEntry entry;
    entry.name = row_name;
    entry.sense = type[0];
    if (entry.sense == 'N') {
      if (objective_row_ < 0) {
        objective_row_ = static_cast<int>(rows_.size());
        entry.objective = true;
      }
    }
    row_index_.emplace(row_name, static_cast<int>(rows_.size()));
    rows_.push_back(std::move(entry));
  }

  int find_row(std::string_view name, int line_no) const {
    auto it = row_index_.find(std::string(name));
    if (it == row_index_.end()) {
      throw MpsError(line_no, "reference to undeclared row '" +
                                  std::string(name) + "'");
    }
    return it->second;
  }

  int find_column(std::string_view name) const {
    auto it = column_index_.find(std::string(name));
    return it == column_index_.end() ? -1 : it->second;
  }

  void read_column(const std::vector<std::string_view>& tokens, int line_no) {
    if (tokens.size() >= 3 && tokens[1] == "'MARKER'") {
      const std::string marker = upper_case(tokens[2]);
      if (marker == "'INTORG'") {
        in_integer_block_ = true;
      } else if (marker == "'INTEND'") {
        in_integer_block_ = false;
      } else {
        throw MpsError(line_no, "unknown marker " + std::string(tokens[2]));
      }
      return;
    }
    if (tokens.size() != 3 && tokens.size() != 5) {
      throw MpsError(line_no, "malformed COLUMNS entry");
    }
    std::string col_name(tokens[0]);
    int col = find_column(col_name);
    if (col < 0) {
      col = static_cast<int>(columns_.size());
      column_index_.emplace(col_name, col);
      ColumnEntry entry;
      entry.name = col_name;
      entry.integer = in_integer_block_;
      columns_.push_back(std::move(entry));
    }
    for (std::size_t k = 1; k + 1 < tokens.size(); k += 2) {
      const int row = find_row(tokens[k], line_no);
      const double value = parse_number(tokens[k + 1], line_no);
      if (!std::isfinite(value)) {
        throw MpsError(line_no, "infinite coefficient");
      }
      ColumnEntry& c = columns_[col];
      if (rows_[row].sense == 'N') {
        if (rows_[row].objective) c.objective.emplace_back(row, value);
        continue;
      }
      const bool duplicate =
          std::any_of(c.entries.begin(), c.entries.end(),
                      [row](const Term& t) { return t.var == row; });
      if (duplicate) {
        throw MpsError(line_no, "duplicate entry for column '" + c.name +
                                    "' in row '" + rows_[row].name + "'");
      }
      c.entries.push_back({row, value});
    }
  }

  void read_rhs_or_range(const std::vector<std::string_view>& tokens,
                         int line_no, bool range) {
    std::size_t first = 0;
    if (tokens.size() == 3 || tokens.size() == 5) {
      first = 1;  // leading set name
    } else if (tokens.size() != 2 && tokens.size() != 4) {
      throw MpsError(line_no, range ? "malformed RANGES entry"
                                    : "malformed RHS entry");
    }
    for (std::size_t k = first; k + 1 < tokens.size(); k += 2) {
      const int row = find_row(tokens[k], line_no);
      const double value = parse_number(tokens[k + 1], line_no);
      RowEntry& r = rows_[row];
      if (range) {
        if (r.sense == 'N') continue;
        r.range = value;
      } else if (r.objective) {
        objective_offset_ = -value;
      } else if (r.sense != 'N') {
        r.rhs = value;
      }
    }
  }

  void read_bound(const std::vector<std::string_view>& tokens, int line_no) {
    if (tokens.size() < 2) throw MpsError(line_no, "malformed BOUNDS entry");
    const std::string type = upper_case(tokens[0]);
    static const std::vector<std::string> kNoValue = {"FR", "MI", "PL", "BV"};
    static const std::vector<std::string> kWithValue = {"UP", "LO", "FX",
                                                        "LI", "UI"};
    if (type == "SC") {
      throw MpsError(line_no, "semi-continuous bounds are not supported");
    }
    const bool no_value =
        std::find(kNoValue.begin(), kNoValue.end(), type) != kNoValue.end();
    const bool with_value = std::find(kWithValue.begin(), kWithValue.end(),
                                      type) != kWithValue.end();
    if (!no_value && !with_value) {
      throw MpsError(line_no, "unknown bound type '" + std::string(tokens[0]) +
                                  "'");
    }
    std::string_view col_name;
    std::optional<double> value;
    if (with_value) {
      if (tokens.size() == 3) {
        col_name = tokens[1];
        value = parse_number(tokens[2], line_no);
      } else if (tokens.size() == 4) {
        col_name = tokens[2];
        value = parse_number(tokens[3], line_no);
      } else {
        throw MpsError(line_no, "malformed BOUNDS entry");
      }
    } else {
      if (tokens.size() == 2) {
        col_name = tokens[1];
      } else if (tokens.size() == 3) {
        // Either "TYPE set col" or "TYPE col value".
        if (find_column(tokens[2]) >= 0) {
          col_name = tokens[2];
        } else if (find_column(tokens[1]) >= 0 && looks_numeric(tokens[2])) {
          col_name = tokens[1];
        } else {
          col_name = tokens[2];
        }
      } else if (tokens.size() == 4) {
        col_name = tokens[2];
      } else {
        throw MpsError(line_no, "malformed BOUNDS entry");
      }
    }
    const int col = find_column(col_name);
    if (col < 0) {
      throw MpsError(line_no, "bound on undeclared column '" +
                                  std::string(col_name) + "'");
    }
    ColumnEntry& c = columns_[col];
    c.any_bound = true;
    if (type == "UP" || type == "UI") {
      c.upper = *value;
      c.upper_set = true;
      if (type == "UI") c.integer = true;
      if (*value < 0.0 && !c.lower_set && c.lower == 0.0) {
        c.lower = -kInfinity;
      }
    } else if (type == "LO" || type == "LI") {
      c.lower = *value;
      c.lower_set = true;
      if (type == "LI") c.integer = true;
    } else if (type == "FX") {
      c.lower = c.upper = *value;
      c.lower_set = c.upper_set = true;
    } else if (type == "FR") {
      c.lower = -kInfinity;
      c.upper = kInfinity;
      c.lower_set = c.upper_set = true;
    } else if (type == "MI") {
      c.lower = -kInfinity;
      c.lower_set = true;
    } else if (type == "PL") {
      c.upper = kInfinity;
      c.upper_set = true;
    } else if (type == "BV") {
      c.integer = true;
      c.lower = 0.0;
      c.upper = 1.0;
      c.lower_set = c.upper_set = true;
    }
  }

  MipModel build() {
    MipModel model;
    model.name = name_;
    if (objective_row_ >= 0) model.objective_name = rows_[objective_row_].name;

    for (ColumnEntry& c : columns_) {
      double upper = c.upper;
      if (c.integer && !c.any_bound) {
        upper = options_.int_default_unbounded ? kInfinity : 1.0;
      }
      model.add_variable(c.name, c.lower, upper,
                         c.integer ? Integrality::kInteger
                                   : Integrality::kContinuous);
    }

    std::vector<int> model_row(rows_.size(), -1);
    std::vector<std::vector<Term>> row_terms;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].sense == 'N') continue;
      model_row[r] = static_cast<int>(row_terms.size());
      row_terms.emplace_back();
    }
    std::vector<Term> objective;
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      for (const Term& e : columns_[j].entries) {
        row_terms[model_row[e.var]].push_back(
            {static_cast<VarId>(j), e.coef});
      }
      for (const auto& [row, value] : columns_[j].objective) {
        objective.push_back({static_cast<VarId>(j), value});
      }
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const RowEntry& e = rows_[r];
      if (e.sense == 'N') continue;
      double lhs = -kInfinity;
      double rhs = kInfinity;
      switch (e.sense) {
        case 'L':
          rhs = e.rhs;
          if (e.range) lhs = e.rhs - std::abs(*e.range);
          break;
        case 'G':
          lhs = e.rhs;
          if (e.range) rhs = e.rhs + std::abs(*e.range);
          break;
        case 'E':
          lhs = rhs = e.rhs;
          if (e.range) {
            if (*e.range >= 0) {
              rhs = e.rhs + *e.range;
            } else {
              lhs = e.rhs + *e.range;
            }
          }
          break;
        default:
          break;
      }
      if (std::isinf(lhs) && std::isinf(rhs) && lhs > 0) lhs = -kInfinity;
      if (lhs > rhs) {
        throw MpsError(0, "row '" + e.name + "' has empty side interval");
      }
      model.add_row(e.name, std::move(row_terms[model_row[r]]), lhs, rhs);
    }
    // The objective is read as stated and normalized to minimization.
    model.set_objective(std::move(objective),
                        maximize_ ? ObjectiveSense::kMaximize
                                  : ObjectiveSense::kMinimize,
                        objective_offset_);
    return model;
  }

  MpsOptions options_;
  Section section_ = Section::kNone;
  std::string name_;
  bool maximize_ = false;
  bool in_integer_block_ = false;
  int objective_row_ = -1;
  double objective_offset_ = 0.0;
  std::vector<RowEntry> rows_;
  std::unordered_map<std::string, int> row_index_;
  std::vector<ColumnEntry> columns_;
  std::unordered_map<std::string, int> column_index_;
};

}  // namespace

MipModel parse_mps(std::string_view text, const MpsOptions& options) {
  MpsReader reader(options);
  return reader.read(text);
}

MipModel read_mps_file(const std::filesystem::path& path,
                       const MpsOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MpsError(0, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_mps(buffer.str(), options);
}

}  // namespace structprop
