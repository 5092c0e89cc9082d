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

#ifndef OCF_COVER_HPP
#define OCF_COVER_HPP

#include <cstdint>
#include <vector>

#include "ocf/core.hpp"

namespace ocf {

// Dense table over the lattice of sub-vectors of a query vector W,
// restricted to W's support. Holds the superadditive cover value and the
// first coalition of an optimal structure for every sub-vector.
class CoverTable {
 public:
  double Value(const ResourceVector& sub) const;
  // Best first coalition at `sub`, or nullopt when the optimum is the
  // empty structure.
  std::optional<ResourceVector> BestFirst(const ResourceVector& sub) const;
  std::int64_t v_evaluations() const { return v_evaluations_; }
  std::int64_t lattice_size() const { return static_cast<std::int64_t>(values_.size()); }

 private:
  friend struct CoverBuilder;
  int n_players_ = 0;
  std::vector<int> support_;
  std::vector<int> dims_;
  std::vector<std::int64_t> strides_;
  std::vector<double> values_;
  std::vector<std::int64_t> best_first_;  // -1 = empty structure
  std::int64_t v_evaluations_ = 0;

  std::int64_t Code(const ResourceVector& sub) const;
  ResourceVector Decode(std::int64_t code) const;
};

struct CoverResult {
  double value = 0.0;
  CoverTable table;
};

// v*(W): the maximum total value attainable by any multiset of admissible
// non-zero coalitions whose resources sum to at most W. Exact dynamic
// program over the sub-vector lattice of W.
CoverResult SuperadditiveCover(const GameSpec& spec, const ResourceVector& w,
                               const StructureContext& ctx = {});

// Backtracks one optimal structure out of a cover table built for W.
CoalitionStructure OptimalStructure(const GameSpec& spec,
                                    const ResourceVector& w,
                                    const CoverTable& table);

// Exhaustive multiset enumeration; validation oracle for the DP. Refuses
// instances whose sub-vector lattice exceeds `lattice_cap` states.
double BruteForceCover(const GameSpec& spec, const ResourceVector& w,
                       const StructureContext& ctx = {},
                       std::int64_t lattice_cap = 1'000'000);

// Cover restricted by per-player coalition-count slots: player i may join
// at most caps[i] of the coalitions in the structure. Used to build
// deviation replacements that respect the game's K-bound.
class CappedCoverTable {
 public:
  double Value(const ResourceVector& sub, const std::vector<int>& caps) const;
  CoalitionStructure Structure(const ResourceVector& sub,
                               const std::vector<int>& caps) const;
  std::int64_t v_evaluations() const { return v_evaluations_; }

 private:
  friend struct CappedBuilder;
  int n_players_ = 0;
  std::vector<int> support_;
  std::vector<int> dims_;        // resource dims then cap dims
  std::vector<std::int64_t> strides_;
  std::vector<std::int64_t> r_strides_;   // decoding space for best_first_
  std::vector<double> values_;
  std::vector<std::int64_t> best_first_;  // code of first coalition, -1 = stop
  std::int64_t v_evaluations_ = 0;

  std::int64_t Code(const ResourceVector& sub, const std::vector<int>& caps) const;
};

CappedCoverTable BuildCappedCover(const GameSpec& spec, const ResourceVector& w,
                                  const std::vector<int>& caps,
                                  const StructureContext& ctx = {});

}  // namespace ocf

#endif  // OCF_COVER_HPP
