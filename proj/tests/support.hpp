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

#ifndef OCF_TESTS_SUPPORT_HPP
#define OCF_TESTS_SUPPORT_HPP

#include <algorithm>
#include <memory>
#include <utility>
#include <vector>

#include "ocf/core.hpp"
#include "ocf/rng.hpp"
#include "ocf/sensing.hpp"
#include "ocf/valuefns.hpp"

namespace ocf::testing {

struct RandomGame {
  GameSpec spec;
  std::shared_ptr<const TableValue> table;
};

inline RandomGame MakeRandomKCoalitionGame(Rng& rng, int max_n, int max_r,
                                           int k, int s_max, int v_lo = 0,
                                           int v_hi = 20) {
  RandomGame game;
  game.spec.n_players = rng.NextInt(2, max_n);
  game.spec.budgets.resize(game.spec.n_players);
  for (int& b : game.spec.budgets) b = rng.NextInt(1, max_r);
  game.spec.max_coalitions_per_player = k;
  game.spec.max_deviation_size = std::min(s_max, game.spec.n_players);
  game.spec.mode = GameMode::kCoalitionGame;
  game.table = std::make_shared<TableValue>(
      TableValue::Random(rng, game.spec.budgets, v_lo, v_hi));
  game.spec.value_fn = MakeTableValueFn(game.table);
  return game;
}

struct RandomTaskGame {
  GameSpec spec;
  std::vector<std::shared_ptr<const TableValue>> tables;  // per task
};

inline RandomTaskGame MakeRandomKTaskGame(Rng& rng, int max_n, int max_t,
                                          int max_r, int k, int s_max) {
  RandomTaskGame game;
  game.spec.n_players = rng.NextInt(2, max_n);
  game.spec.budgets.resize(game.spec.n_players);
  for (int& b : game.spec.budgets) b = rng.NextInt(1, max_r);
  game.spec.max_coalitions_per_player = k;
  game.spec.max_deviation_size = std::min(s_max, game.spec.n_players);
  game.spec.mode = GameMode::kTaskGame;
  game.spec.task_count = rng.NextInt(1, max_t);
  for (int t = 0; t < game.spec.task_count; ++t)
    game.tables.push_back(std::make_shared<TableValue>(
        TableValue::Random(rng, game.spec.budgets, 0, 20)));
  auto tables = game.tables;
  game.spec.value_fn = [tables](const Coalition& c, const StructureContext&) {
    return tables[*c.task_id]->At(c.resources);
  };
  return game;
}

inline CoalitionStructure RandomStructure(Rng& rng, const GameSpec& spec) {
  CoalitionStructure s;
  std::vector<int> remaining = spec.budgets;
  std::vector<int> counts(spec.n_players, 0);
  const int attempts = rng.NextInt(0, 3);
  for (int a = 0; a < attempts; ++a) {
    ResourceVector r(spec.n_players);
    for (int i = 0; i < spec.n_players; ++i) {
      if (counts[i] >= spec.max_coalitions_per_player || remaining[i] == 0)
        continue;
      if (rng.NextBool(0.6)) r[i] = rng.NextInt(1, remaining[i]);
    }
    if (r.IsZero()) continue;
    for (int i = 0; i < spec.n_players; ++i) {
      remaining[i] -= r[i];
      if (r[i] > 0) ++counts[i];
    }
    s.coalitions.emplace_back(std::move(r));
  }
  return s;
}

inline CoalitionStructure RandomTaskStructure(Rng& rng, const GameSpec& spec) {
  CoalitionStructure s;
  std::vector<int> remaining = spec.budgets;
  std::vector<int> counts(spec.n_players, 0);
  for (int t = 0; t < spec.task_count; ++t) {
    if (!rng.NextBool(0.6)) continue;
    ResourceVector r(spec.n_players);
    for (int i = 0; i < spec.n_players; ++i) {
      if (counts[i] >= spec.max_coalitions_per_player || remaining[i] == 0)
        continue;
      if (rng.NextBool(0.5)) r[i] = rng.NextInt(1, remaining[i]);
    }
    if (r.IsZero()) continue;
    for (int i = 0; i < spec.n_players; ++i) {
      remaining[i] -= r[i];
      if (r[i] > 0) ++counts[i];
    }
    s.coalitions.push_back(Coalition{std::move(r), t});
  }
  return s;
}

// Canonical multiset form for structure comparisons.
inline std::vector<std::pair<int, std::vector<int>>> Canonical(
    const CoalitionStructure& s) {
  std::vector<std::pair<int, std::vector<int>>> out;
  for (const auto& c : s.coalitions)
    out.emplace_back(c.task_id ? *c.task_id : -1, c.resources.units);
  std::sort(out.begin(), out.end());
  return out;
}

// Exact best partition welfare with pooled-full-budget blocks, by
// enumerating every set partition. Oracle for the greedy baseline.
inline double OptimalPartitionWelfare(const GameSpec& spec) {
  std::vector<std::vector<int>> blocks;
  double best = 0.0;
  auto evaluate = [&]() {
    CoalitionStructure s;
    for (const auto& block : blocks) {
      ResourceVector r(spec.n_players);
      for (int i : block) r[i] = spec.budgets[i];
      s.coalitions.emplace_back(std::move(r));
    }
    const StructureContext ctx{&s};
    best = std::max(best, SocialWelfare(spec, s, ctx));
  };
  std::function<void(int)> place = [&](int player) {
    if (player == spec.n_players) {
      evaluate();
      return;
    }
    const std::size_t existing = blocks.size();
    for (std::size_t b = 0; b < existing; ++b) {
      blocks[b].push_back(player);
      place(player + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({player});
    place(player + 1);
    blocks.pop_back();
  };
  place(0);
  return best;
}

// Exhaustive 2^m joint-outcome evaluation of the majority-vote error.
inline double BruteFusionError(const sensing::SuNode& head,
                               const std::vector<sensing::SuNode>& reporters,
                               double prior_h1) {
  std::vector<sensing::SuNode> panel{head};
  panel.insert(panel.end(), reporters.begin(), reporters.end());
  const int m = static_cast<int>(panel.size());
  const int threshold = (m + 1) / 2;
  double miss = 0.0, alarm = 0.0;
  for (int mask = 0; mask < (1 << m); ++mask) {
    double p_h1 = 1.0, p_h0 = 1.0;
    int votes = 0;
    for (int j = 0; j < m; ++j) {
      if (mask & (1 << j)) {
        ++votes;
        p_h1 *= panel[j].p_d;
        p_h0 *= panel[j].p_f;
      } else {
        p_h1 *= 1.0 - panel[j].p_d;
        p_h0 *= 1.0 - panel[j].p_f;
      }
    }
    if (votes < threshold) miss += p_h1;
    else alarm += p_h0;
  }
  return prior_h1 * miss + (1.0 - prior_h1) * alarm;
}

inline double Welfare(const GameSpec& spec, const Outcome& outcome) {
  const StructureContext ctx{&outcome.structure};
  return SocialWelfare(spec, outcome.structure, ctx);
}

}  // namespace ocf::testing

#endif  // OCF_TESTS_SUPPORT_HPP
