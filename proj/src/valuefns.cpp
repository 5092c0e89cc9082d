// Copyright 2026 The ocf-games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ocf/valuefns.hpp"

#include <stdexcept>

namespace ocf {

ValueFn SoftwareCompanyValue() {
  return [](const Coalition& c, const StructureContext&) -> double {
    const int hours = c.resources.Total();
    if (hours >= 12) return 2400.0;
    if (hours >= 8) return 1000.0;
    return 0.0;
  };
}

GameSpec SoftwareCompanySpec(DivisionRule division,
                             ArbitrationKind arbitration) {
  GameSpec spec;
  spec.n_players = 3;
  spec.budgets = {8, 8, 8};
  spec.max_coalitions_per_player = 2;
  spec.max_deviation_size = 3;
  spec.mode = GameMode::kCoalitionGame;
  spec.division = division;
  spec.arbitration = arbitration;
  spec.value_fn = SoftwareCompanyValue();
  return spec;
}

ValueFn ZeroValue() {
  return [](const Coalition&, const StructureContext&) { return 0.0; };
}

ValueFn QuadraticValue() {
  return [](const Coalition& c, const StructureContext&) {
    const double t = c.resources.Total();
    return t * t;
  };
}

ValueFn LinearValue() {
  return [](const Coalition& c, const StructureContext&) {
    return static_cast<double>(c.resources.Total());
  };
}

TableValue::TableValue(std::vector<int> budgets, std::vector<double> values)
    : budgets_(std::move(budgets)), values_(std::move(values)) {
  strides_.resize(budgets_.size());
  std::int64_t size = 1;
  for (int k = static_cast<int>(budgets_.size()) - 1; k >= 0; --k) {
    strides_[k] = size;
    size *= budgets_[k] + 1;
  }
  if (static_cast<std::int64_t>(values_.size()) != size)
    throw std::invalid_argument("table size does not match budget lattice");
}

TableValue TableValue::Random(Rng& rng, const std::vector<int>& budgets,
                              int lo, int hi) {
  std::int64_t size = 1;
  for (int b : budgets) size *= b + 1;
  std::vector<double> values(size);
  for (std::int64_t i = 1; i < size; ++i)
    values[i] = static_cast<double>(rng.NextInt(lo, hi));
  values[0] = 0.0;
  return TableValue(budgets, std::move(values));
}

double TableValue::At(const ResourceVector& r) const {
  std::int64_t code = 0;
  for (int i = 0; i < static_cast<int>(budgets_.size()); ++i) {
    if (r[i] < 0 || r[i] > budgets_[i])
      throw std::invalid_argument("vector outside table lattice");
    code += r[i] * strides_[i];
  }
  return values_[code];
}

ValueFn MakeTableValueFn(std::shared_ptr<const TableValue> table) {
  return [table](const Coalition& c, const StructureContext&) {
    return table->At(c.resources);
  };
}

}  // namespace ocf
