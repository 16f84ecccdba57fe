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

#include <cmath>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "structprop/domain.hpp"
#include "structprop/model.hpp"

namespace structprop {
namespace {

using testing::oracle_feasible;

MipModel two_var_model(double xl, double xu, double yl, double yu) {
  MipModel m;
  m.add_variable("x", xl, xu, Integrality::kInteger);
  m.add_variable("y", yl, yu, Integrality::kInteger);
  return m;
}

// Activity bounds by evaluating every corner of the box.
RowActivity corner_activity(const LinearRow& row, const DomainBox& box) {
  RowActivity act{kInfinity, -kInfinity};
  const std::size_t n = row.terms.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Term& t = row.terms[i];
      value += t.coef * ((mask >> i & 1) ? box.upper[t.var] : box.lower[t.var]);
    }
    act.min_activity = std::min(act.min_activity, value);
    act.max_activity = std::max(act.max_activity, value);
  }
  if (n == 0) act = {0.0, 0.0};
  return act;
}

TEST(ModelTest, AddRowCanonicalizesTerms) {
  MipModel m = two_var_model(0, 1, 0, 1);
  m.add_row("r", {{1, 2.0}, {0, 0.0}}, -kInfinity, 3);
  ASSERT_EQ(m.rows[0].terms.size(), 1u);
  EXPECT_EQ(m.rows[0].terms[0].var, 1);
}

TEST(ModelTest, AddRowRejectsBadInput) {
  MipModel m = two_var_model(0, 1, 0, 1);
  EXPECT_THROW(m.add_row("dup", {{0, 1}, {0, 2}}, 0, 1), std::invalid_argument);
  EXPECT_THROW(m.add_row("unknown", {{5, 1}}, 0, 1), std::invalid_argument);
  EXPECT_THROW(m.add_row("crossed", {{0, 1}}, 2, 1), std::invalid_argument);
  EXPECT_THROW(m.add_row("nan", {{0, std::nan("")}}, 0, 1), std::invalid_argument);
}

TEST(ModelTest, IntegerUnitBoundsBecomeBinary) {
  MipModel m;
  m.add_variable("b", 0, 1, Integrality::kInteger);
  m.add_variable("i", 0, 2, Integrality::kInteger);
  EXPECT_TRUE(m.variables[0].is_binary());
  EXPECT_FALSE(m.variables[1].is_binary());
}

TEST(ModelTest, FeasibilityAndObjective) {
  MipModel m = two_var_model(0, 5, 0, 5);
  m.add_row("r", {{0, 1}, {1, 1}}, 2, 4);
  m.set_objective({{0, 1}, {1, -2}}, ObjectiveSense::kMaximize, 1.0);
  const std::vector<double> ok = {1, 2};
  const std::vector<double> too_big = {3, 2};
  const std::vector<double> fractional = {1.5, 1};
  EXPECT_TRUE(m.is_feasible(ok));
  EXPECT_FALSE(m.is_feasible(too_big));
  EXPECT_FALSE(m.is_feasible(fractional));
  // Stored in minimization form.
  EXPECT_DOUBLE_EQ(m.objective_value(ok), -((1 - 4) + 1.0));
  EXPECT_EQ(m.stated_objective()[0].coef, 1);
}

TEST(ModelTest, NegatedSwapsSides) {
  LinearRow row{"r", {{0, 2}, {1, -1}}, 1, 4};
  const LinearRow neg = negated(row);
  EXPECT_EQ(neg.lhs, -4);
  EXPECT_EQ(neg.rhs, -1);
  EXPECT_EQ(neg.terms[0].coef, -2);
  EXPECT_EQ(negated(neg), row);
}

TEST(ActivityTest, WorkedExamples) {
  {
    MipModel m = two_var_model(0, 10, 2, 4);
    const LinearRow row{"r", {{0, 1}, {1, 1}}, -kInfinity, kInfinity};
    const RowActivity act = compute_activity(row, DomainBox::from_model(m));
    EXPECT_EQ(act.min_activity, 2);
    EXPECT_EQ(act.max_activity, 14);
  }
  {
    MipModel m = two_var_model(0, 3, 1, 5);
    const LinearRow row{"r", {{0, 2}, {1, -1}}, -kInfinity, kInfinity};
    const RowActivity act = compute_activity(row, DomainBox::from_model(m));
    EXPECT_EQ(act.min_activity, -5);
    EXPECT_EQ(act.max_activity, 5);
  }
  {
    const LinearRow empty;
    const RowActivity act = compute_activity(empty, DomainBox{});
    EXPECT_EQ(act.min_activity, 0);
    EXPECT_EQ(act.max_activity, 0);
  }
}

TEST(ActivityTest, MatchesCornerEnumeration) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-6, 6);
  std::uniform_int_distribution<int> bound(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    MipModel m;
    LinearRow row;
    for (VarId v = 0; v < 4; ++v) {
      const int a = bound(rng);
      const int b = bound(rng);
      m.add_variable("v" + std::to_string(v), std::min(a, b), std::max(a, b));
      if (const int c = coef(rng); c != 0) row.terms.push_back({v, static_cast<double>(c)});
    }
    const DomainBox box = DomainBox::from_model(m);
    const RowActivity got = compute_activity(row, box);
    const RowActivity want = corner_activity(row, box);
    EXPECT_EQ(got.min_activity, want.min_activity);
    EXPECT_EQ(got.max_activity, want.max_activity);
  }
}

TEST(TightenRowTest, ResidualActivityBound) {
  MipModel m = two_var_model(0, 10, 2, 4);
  m.add_row("r", {{0, 1}, {1, 1}}, 0, 5);
  DomainBox box = DomainBox::from_model(m);
  const PropagationOutcome out = tighten_row(m.rows[0], box);
  EXPECT_EQ(box.upper[0], 3);
  EXPECT_FALSE(out.cutoff);
  // No feasible grid point has x > 3, and x = 3 is feasible.
  const auto oracle = oracle_feasible(m, DomainBox::from_model(m));
  EXPECT_EQ(oracle.hull_upper[0], 3);
}

TEST(TightenRowTest, SlackRowIsNoOp) {
  MipModel m = two_var_model(0, 2, 0, 2);
  m.add_row("r", {{0, 1}, {1, 1}}, -1, 10);
  DomainBox box = DomainBox::from_model(m);
  const PropagationOutcome out = tighten_row(m.rows[0], box);
  EXPECT_FALSE(out.changed());
  EXPECT_EQ(box, DomainBox::from_model(m));
}

TEST(TightenRowTest, EmptyIntersectionIsCutoff) {
  MipModel m;
  m.add_variable("x", 0, 3, Integrality::kInteger);
  m.add_row("r", {{0, 1}}, 4, kInfinity);
  DomainBox box = DomainBox::from_model(m);
  EXPECT_TRUE(tighten_row(m.rows[0], box).cutoff);
  EXPECT_TRUE(box.empty);
}

// Random small integer rows: tightening never widens a bound and keeps every
// feasible grid point.
TEST(TightenRowTest, SoundAndMonotoneOnRandomRows) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> bound(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    MipModel m;
    std::vector<Term> terms;
    for (VarId v = 0; v < 3; ++v) {
      const int a = bound(rng);
      const int b = bound(rng);
      m.add_variable("v" + std::to_string(v), std::min(a, b), std::max(a, b),
                     Integrality::kInteger);
      if (const int c = coef(rng); c != 0) terms.push_back({v, static_cast<double>(c)});
    }
    const int lhs = bound(rng) * 2;
    m.add_row("r", terms, lhs, lhs + std::abs(bound(rng)));
    const DomainBox original = DomainBox::from_model(m);
    DomainBox box = original;
    const PropagationOutcome out = tighten_row(m.rows[0], box);
    const auto oracle = oracle_feasible(m, original);
    if (out.cutoff) {
      EXPECT_FALSE(oracle.feasible());
      continue;
    }
    for (VarId v = 0; v < 3; ++v) {
      EXPECT_GE(box.lower[v], original.lower[v]);
      EXPECT_LE(box.upper[v], original.upper[v]);
      if (oracle.feasible()) {
        EXPECT_LE(box.lower[v], oracle.hull_lower[v]);
        EXPECT_GE(box.upper[v], oracle.hull_upper[v]);
      }
    }
  }
}

TEST(ValidReductionTest, Examples) {
  MipModel m = two_var_model(0, 3, 0, 3);
  const DomainBox original = DomainBox::from_model(m);
  const std::vector<std::vector<double>> points = {{1, 2}, {3, 0}};
  EXPECT_TRUE(is_valid_reduction(original, original, points));

  DomainBox cut = original;
  cut.upper[0] = 2;
  EXPECT_FALSE(is_valid_reduction(original, cut, points));

  DomainBox empty = original;
  empty.empty = true;
  EXPECT_TRUE(is_valid_reduction(original, empty, {}));
  EXPECT_FALSE(is_valid_reduction(original, empty, points));

  DomainBox wider = original;
  wider.upper[1] = 4;
  EXPECT_FALSE(is_valid_reduction(original, wider, points));
}

TEST(BoundTightenerTest, RoundsIntegersInward) {
  MipModel m = two_var_model(0, 10, 0, 10);
  DomainBox box = DomainBox::from_model(m);
  PropagationOutcome out;
  BoundTightener tightener(box, out);
  EXPECT_TRUE(tightener.set_upper(0, 3.7));
  EXPECT_TRUE(tightener.set_lower(1, 2.2));
  EXPECT_EQ(box.upper[0], 3);
  EXPECT_EQ(box.lower[1], 3);
  EXPECT_FALSE(tightener.set_upper(0, 5));  // not an improvement
  EXPECT_EQ(out.bound_changes.size(), 2u);
}

}  // namespace
}  // namespace structprop
