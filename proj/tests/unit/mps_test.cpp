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

#include <gtest/gtest.h>

#include <string>

#include "structprop/mps.hpp"
#include "structprop/synth.hpp"

namespace structprop {
namespace {

constexpr char kMinimal[] = R"(NAME          TINY
ROWS
 N  COST
 L  LIM1
COLUMNS
    X1        COST         1.0   LIM1         1.0
RHS
    RHS       LIM1         4.0
ENDATA
)";

TEST(MpsTest, MinimalDocument) {
  const MipModel m = parse_mps(kMinimal);
  EXPECT_EQ(m.name, "TINY");
  ASSERT_EQ(m.num_variables(), 1);
  ASSERT_EQ(m.num_rows(), 1);
  EXPECT_EQ(m.rows[0].rhs, 4);
  EXPECT_EQ(m.rows[0].lhs, -kInfinity);
  EXPECT_EQ(m.variables[0].lower, 0);
  EXPECT_EQ(m.variables[0].upper, kInfinity);
}

TEST(MpsTest, EqualityRow) {
  const MipModel m = parse_mps(R"(NAME E
ROWS
 N  OBJ
 E  R1
COLUMNS
    X  R1  1
RHS
    RHS  R1  5
ENDATA
)");
  EXPECT_EQ(m.rows[0].lhs, 5);
  EXPECT_EQ(m.rows[0].rhs, 5);
}

TEST(MpsTest, IntegerMarkersAndDefaults) {
  constexpr char kText[] = R"(NAME INTS
ROWS
 N  OBJ
 G  R1
COLUMNS
    M1  'MARKER'  'INTORG'
    Y   R1  1
    Z   R1  1
    M2  'MARKER'  'INTEND'
RHS
    RHS  R1  1
BOUNDS
 UP BND  Z  5
ENDATA
)";
  const MipModel classic = parse_mps(kText);
  EXPECT_TRUE(classic.variables[0].is_binary());
  EXPECT_EQ(classic.variables[1].upper, 5);
  EXPECT_TRUE(classic.variables[1].is_integral());

  MpsOptions options;
  options.int_default_unbounded = true;
  const MipModel open = parse_mps(kText, options);
  EXPECT_EQ(open.variables[0].upper, kInfinity);
  EXPECT_FALSE(open.variables[0].is_binary());
}

TEST(MpsTest, ErrorsCarryLineNumbers) {
  try {
    parse_mps("NAME X\nROWS\n N OBJ\nCOLUMNS\n    X  NOPE  1\nRHS\nENDATA\n");
    FAIL() << "expected MpsError";
  } catch (const MpsError& e) {
    EXPECT_EQ(e.line(), 5);
  }
  EXPECT_THROW(parse_mps("NAME X\nROWS\n N OBJ\n"), MpsError);
  EXPECT_THROW(parse_mps("NAME X\nBOGUS\nENDATA\n"), MpsError);
}

TEST(MpsTest, EmptyModelSkeleton) {
  const std::string text = write_mps(MipModel{});
  for (const char* section : {"NAME", "ROWS", "COLUMNS", "RHS", "ENDATA"}) {
    EXPECT_NE(text.find(section), std::string::npos) << section;
  }
  EXPECT_EQ(parse_mps(text), parse_mps(write_mps(parse_mps(text))));
}

TEST(MpsTest, RangeRowWritesRanges) {
  MipModel m;
  m.name = "RANGED";
  m.add_variable("x", 0, 10, Integrality::kInteger);
  m.add_row("r", {{0, 1}}, 2, 7);
  const std::string text = write_mps(m);
  EXPECT_NE(text.find("RANGES"), std::string::npos);
  EXPECT_EQ(parse_mps(text), m);
}

TEST(MpsTest, MaximizeRoundTrip) {
  MipModel m;
  m.name = "MAXI";
  m.add_variable("x", -3, 4, Integrality::kInteger);
  m.add_variable("y", -kInfinity, kInfinity);
  m.add_row("r", {{0, 1.5}, {1, -2}}, -kInfinity, 3.25);
  m.set_objective({{0, 2}, {1, 1}}, ObjectiveSense::kMaximize, 0.5);
  EXPECT_EQ(parse_mps(write_mps(m)), m);
}

TEST(MpsTest, SynthOneHotRoundTrip) {
  const PlantedInstance inst = reverse_sample(Family::kOneHotResource, {}, 3);
  EXPECT_EQ(parse_mps(write_mps(inst.model)), inst.model);
}

// parse(write(parse(f))) == parse(f) over a 20-file corpus of obfuscated
// instances of every family.
TEST(MpsTest, CorpusReparseIsStable) {
  int files = 0;
  for (int i = 0; i < 20; ++i) {
    const Family family = all_families()[i % kNumFamilies];
    ObfuscationConfig config;
    config.seed = 100 + i;
    const std::string text =
        write_mps(obfuscate(reverse_sample(family, {}, 100 + i), config).model);
    const MipModel first = parse_mps(text);
    EXPECT_EQ(parse_mps(write_mps(first)), first) << family_name(family);
    ++files;
  }
  EXPECT_EQ(files, 20);
}

TEST(MpsTest, WriterRejectsBadNames) {
  MipModel m;
  m.add_variable("has space", 0, 1);
  EXPECT_THROW(write_mps(m), std::invalid_argument);
}

}  // namespace
}  // namespace structprop
