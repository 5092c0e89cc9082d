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

#ifndef OCF_VALUEFNS_HPP
#define OCF_VALUEFNS_HPP

#include <memory>

#include "ocf/core.hpp"
#include "ocf/rng.hpp"

namespace ocf {

// Software-company fixture: three developers with 8 hours each; a coalition
// completes the best single project its pooled hours allow. 12+ man-hours
// finish a big project worth 2400, 8..11 a small one worth 1000.
ValueFn SoftwareCompanyValue();
GameSpec SoftwareCompanySpec(
    DivisionRule division = DivisionRule::kProportional,
    ArbitrationKind arbitration = ArbitrationKind::kOptimistic);

ValueFn ZeroValue();

// (sum of contributions)^2; simple superadditive toy.
ValueFn QuadraticValue();

// Sum of contributions; every split of a vector is worth the same.
ValueFn LinearValue();

// Dense value table over the full budget lattice. Deterministic stand-in
// for arbitrary v in tests and in serialized game instances.
class TableValue {
 public:
  TableValue(std::vector<int> budgets, std::vector<double> values);

  // Integer values uniform in [lo, hi]; the zero vector is always worth 0.
  static TableValue Random(Rng& rng, const std::vector<int>& budgets, int lo,
                           int hi);

  double At(const ResourceVector& r) const;
  const std::vector<int>& budgets() const { return budgets_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<int> budgets_;
  std::vector<std::int64_t> strides_;
  std::vector<double> values_;
};

ValueFn MakeTableValueFn(std::shared_ptr<const TableValue> table);

}  // namespace ocf

#endif  // OCF_VALUEFNS_HPP
