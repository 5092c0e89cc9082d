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

#ifndef OCF_BASELINES_HPP
#define OCF_BASELINES_HPP

#include <functional>
#include <vector>

#include "ocf/core.hpp"

namespace ocf {

// The internal coalitions a block of players forms (supports within the
// block only). The default maps a block to one coalition pooling the
// members' full budgets; scenarios substitute their own cooperation rule.
using BlockStructureFn =
    std::function<CoalitionStructure(const std::vector<int>& block)>;

struct BaselineConfig {
  // Largest block the greedy merge may form; 0 = unbounded.
  int block_cap = 0;
  BlockStructureFn block_structure;  // empty = pooled-full-budget default
};

struct PartitionOutcome {
  std::vector<std::vector<int>> blocks;  // disjoint, covering, sorted
  Outcome outcome;                       // induced game outcome
  double welfare = 0.0;
};

// No-cooperation baseline: every player alone. K-coalition mode forms one
// full-budget singleton per player (dropped when worthless); K-task mode
// forms nothing (players keep their local/base performance only).
Outcome SolveLocal(const GameSpec& spec);

// Greedy merge from singletons: repeatedly merge the pair of blocks with
// the largest strict welfare gain, evaluated on the full induced structure,
// until no merge improves welfare or the block cap binds. Ties break toward
// the lexicographically first block pair.
PartitionOutcome SolveNonOverlapping(const GameSpec& spec,
                                     const BaselineConfig& cfg = {});

}  // namespace ocf

#endif  // OCF_BASELINES_HPP
