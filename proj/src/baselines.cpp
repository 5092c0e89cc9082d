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

#include "ocf/baselines.hpp"

#include <algorithm>
#include <stdexcept>

namespace ocf {
namespace {

CoalitionStructure PooledBlock(const GameSpec& spec,
                               const std::vector<int>& block) {
  ResourceVector r(spec.n_players);
  for (int i : block) r[i] = spec.budgets[i];
  CoalitionStructure s;
  s.coalitions.emplace_back(r);
  return s;
}

CoalitionStructure BuildPartitionStructure(const GameSpec& spec,
                                           const BaselineConfig& cfg,
                                           const std::vector<std::vector<int>>& blocks) {
  CoalitionStructure full;
  for (const auto& block : blocks) {
    CoalitionStructure part = cfg.block_structure
                                  ? cfg.block_structure(block)
                                  : PooledBlock(spec, block);
    for (auto& c : part.coalitions)
      full.coalitions.push_back(std::move(c));
  }
  return full;
}

bool StructureAdmissible(const GameSpec& spec, const CoalitionStructure& s) {
  for (const auto& c : s.coalitions)
    if (!spec.IsAdmissible(c)) return false;
  return true;
}

}  // namespace

Outcome SolveLocal(const GameSpec& spec) {
  spec.Validate();
  CoalitionStructure structure;
  if (spec.mode == GameMode::kCoalitionGame) {
    for (int i = 0; i < spec.n_players; ++i) {
      ResourceVector r(spec.n_players);
      r[i] = spec.budgets[i];
      structure.coalitions.emplace_back(r);
    }
    // Worthless singletons are left idle rather than stored.
    const StructureContext ctx{&structure};
    CoalitionStructure kept;
    for (const auto& c : structure.coalitions)
      if (CoalitionValue(spec, c, ctx) > 0.0) kept.coalitions.push_back(c);
    structure = std::move(kept);
  }
  // K-task mode: no cooperation means no reports anywhere; the structure
  // stays empty and every task keeps its baseline value.
  return MakeOutcome(spec, std::move(structure));
}

PartitionOutcome SolveNonOverlapping(const GameSpec& spec,
                                     const BaselineConfig& cfg) {
  spec.Validate();
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < spec.n_players; ++i) blocks.push_back({i});

  auto evaluate = [&](const std::vector<std::vector<int>>& candidate) {
    CoalitionStructure s = BuildPartitionStructure(spec, cfg, candidate);
    if (!StructureAdmissible(spec, s)) return std::pair(false, 0.0);
    const StructureContext ctx{&s};
    return std::pair(true, SocialWelfare(spec, s, ctx));
  };

  double welfare = evaluate(blocks).second;

  while (true) {
    double best_welfare = welfare;
    int best_a = -1, best_b = -1;
    for (int a = 0; a < static_cast<int>(blocks.size()); ++a) {
      for (int b = a + 1; b < static_cast<int>(blocks.size()); ++b) {
        const int merged_size =
            static_cast<int>(blocks[a].size() + blocks[b].size());
        if (cfg.block_cap > 0 && merged_size > cfg.block_cap) continue;
        std::vector<std::vector<int>> candidate;
        candidate.reserve(blocks.size() - 1);
        std::vector<int> merged = blocks[a];
        merged.insert(merged.end(), blocks[b].begin(), blocks[b].end());
        std::sort(merged.begin(), merged.end());
        for (int k = 0; k < static_cast<int>(blocks.size()); ++k) {
          if (k == a) candidate.push_back(merged);
          else if (k != b) candidate.push_back(blocks[k]);
        }
        const auto [ok, w] = evaluate(candidate);
        if (!ok) continue;
        if (StrictlyImproves(w, best_welfare)) {
          best_welfare = w;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best_a < 0) break;
    std::vector<int> merged = blocks[best_a];
    merged.insert(merged.end(), blocks[best_b].begin(), blocks[best_b].end());
    std::sort(merged.begin(), merged.end());
    blocks.erase(blocks.begin() + best_b);
    blocks[best_a] = std::move(merged);
    welfare = best_welfare;
  }

  // Canonical order: blocks sorted by smallest member.
  std::sort(blocks.begin(), blocks.end());

  PartitionOutcome result;
  result.blocks = blocks;
  CoalitionStructure s = BuildPartitionStructure(spec, cfg, blocks);
  {
    const StructureContext ctx{&s};
    result.welfare = SocialWelfare(spec, s, ctx);
  }
  result.outcome = MakeOutcome(spec, std::move(s));
  return result;
}

}  // namespace ocf
