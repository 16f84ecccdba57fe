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

// Shared pieces of the instance generators.

#ifndef STRUCTPROP_SYNTH_BUILDER_HPP_
#define STRUCTPROP_SYNTH_BUILDER_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "structprop/domain.hpp"
#include "structprop/synth.hpp"

namespace structprop::detail {

// Seeded generator with draws defined here rather than by the standard
// library distributions, whose output differs between implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  int uniform(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return lo + static_cast<int>(draw % span);
  }

  // Uniform real in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
      std::swap(items[i], items[uniform(0, i)]);
    }
  }

  // Non-zero integer in [-bound, bound].
  int nonzero(int bound) {
    const int v = uniform(1, bound);
    return chance(0.5) ? v : -v;
  }

 private:
  std::mt19937_64 engine_;
};

// A model under construction together with its witness point.
class Builder {
 public:
  VarId binary(double value) {
    return add(0.0, 1.0, Integrality::kBinary, value);
  }
  VarId integer(double lower, double upper, double value) {
    return add(lower, upper, Integrality::kInteger, value);
  }
  VarId continuous(double lower, double upper, double value) {
    return add(lower, upper, Integrality::kContinuous, value);
  }

  RowId row(std::vector<Term> terms, double lhs, double rhs) {
    return model.add_row("c" + std::to_string(model.num_rows() + 1),
                         std::move(terms), lhs, rhs);
  }
  RowId leq(std::vector<Term> terms, double rhs) {
    return row(std::move(terms), -kInfinity, rhs);
  }
  RowId geq(std::vector<Term> terms, double lhs) {
    return row(std::move(terms), lhs, kInfinity);
  }
  RowId eq(std::vector<Term> terms, double value) {
    return row(std::move(terms), value, value);
  }

  double value(std::span<const Term> terms) const {
    double v = 0.0;
    for (const Term& t : terms) v += t.coef * witness[t.var];
    return v;
  }
  RowActivity activity(std::span<const Term> terms) const {
    return compute_activity(terms, DomainBox::from_model(model));
  }

  // The witness satisfies every row and bound exactly.
  bool witness_ok() const { return model.is_feasible(witness, {0, 0, 0}); }

  // No row is implied by the variable bounds alone.
  bool all_rows_bind() const {
    const DomainBox box = DomainBox::from_model(model);
    for (const LinearRow& r : model.rows) {
      if (is_redundant(r, box)) return false;
    }
    return true;
  }

  MipModel model;
  std::vector<double> witness;

 private:
  VarId add(double lower, double upper, Integrality integrality, double value) {
    witness.push_back(value);
    return model.add_variable("x" + std::to_string(model.num_variables() + 1),
                              lower, upper, integrality);
  }
};

// What a family generator hands back: the built model and the planted
// record in its ids.
struct Draft {
  Builder builder;
  RecordParams params;
  std::vector<RowId> evidence;
};

// Generators return nullopt when a draw has to be redone.
using Generator = std::optional<Draft> (*)(Rng&, const SynthSize&);

std::optional<Draft> sample_all_different(Rng& rng, const SynthSize& size);
std::optional<Draft> sample_cardinality(Rng& rng, const SynthSize& size);
std::optional<Draft> sample_channel(Rng& rng, const SynthSize& size);
std::optional<Draft> sample_cumulative(Rng& rng, const SynthSize& size);
std::optional<Draft> sample_nvalue(Rng& rng, const SynthSize& size);
std::optional<Draft> sample_stretch(Rng& rng, const SynthSize& size);
std::optional<Draft> sample_one_hot_resource(Rng& rng, const SynthSize& size);
std::optional<Draft> sample_bottleneck(Rng& rng, const SynthSize& size);
std::optional<Draft> sample_rostering(Rng& rng, const SynthSize& size);
std::optional<Draft> sample_unit_commitment(Rng& rng, const SynthSize& size);
std::optional<Draft> sample_disjunction(Rng& rng, const SynthSize& size);

// Throws std::invalid_argument unless lo <= value <= hi (value 0 means
// "draw one").
int pick_size(Rng& rng, int value, int lo, int hi, const char* what);

}  // namespace structprop::detail

#endif  // STRUCTPROP_SYNTH_BUILDER_HPP_
