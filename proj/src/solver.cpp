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

#include "ocf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ocf {
namespace {

// Advances a lexicographic (size, combination) iterator over deviator sets.
// Sizes ascend from 1 to s_max, combinations in lex order within a size.
bool NextDeviatorSet(int n, int s_max, std::vector<int>& comb) {
  if (comb.empty()) {
    if (n < 1 || s_max < 1) return false;
    comb = {0};
    return true;
  }
  const int s = static_cast<int>(comb.size());
  for (int k = s - 1; k >= 0; --k) {
    if (comb[k] < n - (s - k)) {
      ++comb[k];
      for (int j = k + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  if (s < std::min(s_max, n)) {
    comb.resize(s + 1);
    for (int j = 0; j <= s; ++j) comb[j] = j;
    return true;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// K-coalition deviation enumeration.
// ---------------------------------------------------------------------------

struct DeviationEnumerator::Impl {
  const GameSpec& spec;
  const Outcome& outcome;
  StructureContext ctx;

  std::vector<int> comb;  // current deviator set; empty = before first
  bool set_active = false;

  // Per-set state.
  StructureSplit split;
  struct Slot {
    int coalition_idx;
    int player;
    int max;
  };
  std::vector<Slot> slots;
  std::vector<int> pattern;
  bool pattern_valid = false;
  std::optional<CappedCoverTable> table;
  std::vector<int> dissolved_amount;  // per player
  std::vector<int> idle_amount;

  Impl(const GameSpec& s, const Outcome& o, const StructureContext& c)
      : spec(s), outcome(o), ctx(c) {}

  bool AdvanceSet() {
    while (NextDeviatorSet(spec.n_players, spec.max_deviation_size, comb)) {
      split = SplitByDeviators(outcome, comb);
      slots.clear();
      for (int idx : split.touched) {
        const auto& r = outcome.structure.coalitions[idx].resources;
        for (int i : comb)
          if (r[i] > 0) slots.push_back({idx, i, r[i]});
      }
      std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
        return a.coalition_idx != b.coalition_idx
                   ? a.coalition_idx < b.coalition_idx
                   : a.player < b.player;
      });
      pattern.assign(slots.size(), 0);
      pattern_valid = true;
      table.reset();
      dissolved_amount.assign(spec.n_players, 0);
      for (int idx : split.dissolved)
        for (int i : comb)
          dissolved_amount[i] += outcome.structure.coalitions[idx].resources[i];
      idle_amount.assign(spec.n_players, 0);
      for (int i : comb) idle_amount[i] = IdleBudget(spec, outcome.structure, i);
      set_active = true;
      return true;
    }
    set_active = false;
    return false;
  }

  void AdvancePattern() {
    for (int k = static_cast<int>(pattern.size()) - 1; k >= 0; --k) {
      if (pattern[k] < slots[k].max) {
        ++pattern[k];
        for (int j = k + 1; j < static_cast<int>(pattern.size()); ++j)
          pattern[j] = 0;
        return;
      }
    }
    pattern_valid = false;
  }

  bool Next(Deviation& out) {
    while (true) {
      if (!set_active || !pattern_valid) {
        if (!AdvanceSet()) return false;
      }
      // Resources each deviator can redeploy under this pattern, and the
      // coalition slots they still occupy.
      ResourceVector w(spec.n_players);
      std::vector<int> caps(spec.n_players, 0);
      for (int i : comb) {
        w[i] = dissolved_amount[i] + idle_amount[i];
        caps[i] = spec.max_coalitions_per_player;
      }
      for (int k = 0; k < static_cast<int>(slots.size()); ++k) {
        w[slots[k].player] += pattern[k];
        if (pattern[k] < slots[k].max) --caps[slots[k].player];
      }

      if (!table) {
        ResourceVector w_max(spec.n_players);
        std::vector<int> caps_max(spec.n_players, 0);
        for (int i : comb) {
          w_max[i] = spec.budgets[i];
          caps_max[i] = spec.max_coalitions_per_player;
        }
        table = BuildCappedCover(spec, w_max, caps_max, ctx);
      }

      out.deviators = comb;
      out.withdrawals.clear();
      for (int k = 0; k < static_cast<int>(slots.size()); ++k) {
        if (pattern[k] == 0) continue;
        auto [it, inserted] = out.withdrawals.try_emplace(
            slots[k].coalition_idx, ResourceVector(spec.n_players));
        it->second[slots[k].player] += pattern[k];
      }
      out.replacement = table->Structure(w, caps);

      AdvancePattern();
      return true;
    }
  }
};

DeviationEnumerator::DeviationEnumerator(const GameSpec& spec,
                                         const Outcome& outcome,
                                         const StructureContext& ctx)
    : impl_(std::make_unique<Impl>(spec, outcome, ctx)) {
  spec.Validate();
  if (spec.mode != GameMode::kCoalitionGame)
    throw std::invalid_argument("deviation enumeration requires K-coalition mode");
}

DeviationEnumerator::~DeviationEnumerator() = default;
DeviationEnumerator::DeviationEnumerator(DeviationEnumerator&&) noexcept = default;

bool DeviationEnumerator::Next(Deviation& out) { return impl_->Next(out); }

// ---------------------------------------------------------------------------
// K-task transfer enumeration.
// ---------------------------------------------------------------------------

namespace {

// All single moves a player can make, in deterministic order: sources are
// the player's occupied tasks ascending then the idle pool, destinations
// the other tasks ascending then idle, amounts ascending. Moves that would
// break the K-bound or form an inadmissible coalition are dropped.
std::vector<TransferMove> MovesForPlayer(const GameSpec& spec,
                                         const CoalitionStructure& structure,
                                         int player) {
  std::vector<TransferMove> moves;
  std::vector<int> task_vec(spec.task_count, 0);
  for (const auto& c : structure.coalitions) task_vec[*c.task_id] = c.resources[player];
  const int support = structure.SupportCount(player);
  const int idle = IdleBudget(spec, structure, player);

  std::vector<int> sources;
  for (int t = 0; t < spec.task_count; ++t)
    if (task_vec[t] > 0) sources.push_back(t);
  if (idle > 0) sources.push_back(kIdlePool);

  for (int source : sources) {
    const int avail = source == kIdlePool ? idle : task_vec[source];
    for (int dest = 0; dest <= spec.task_count; ++dest) {
      const int dest_id = dest == spec.task_count ? kIdlePool : dest;
      if (dest_id == source) continue;
      if (dest_id == kIdlePool && source == kIdlePool) continue;
      for (int amount = 1; amount <= avail; ++amount) {
        int new_support = support;
        if (source != kIdlePool && amount == task_vec[source]) --new_support;
        if (dest_id != kIdlePool && task_vec[dest_id] == 0) ++new_support;
        if (new_support > spec.max_coalitions_per_player) continue;
        if (dest_id != kIdlePool) {
          ResourceVector v(spec.n_players);
          const Coalition* existing = structure.ForTask(dest_id);
          if (existing != nullptr) v = existing->resources;
          v[player] += amount;
          if (!spec.IsAdmissible(Coalition{v, dest_id})) continue;
        }
        moves.push_back({player, source, dest_id, amount});
      }
    }
  }
  return moves;
}

bool CombinedMovesValid(const GameSpec& spec, const CoalitionStructure& structure,
                        const Transfer& transfer) {
  std::vector<ResourceVector> vecs;
  try {
    vecs = TaskVectorsAfter(spec, structure, transfer);
  } catch (const std::invalid_argument&) {
    return false;
  }
  for (int t = 0; t < spec.task_count; ++t) {
    if (vecs[t].IsZero()) continue;
    if (!spec.IsAdmissible(Coalition{vecs[t], t})) return false;
  }
  return true;
}

}  // namespace

struct TransferEnumerator::Impl {
  const GameSpec& spec;
  const Outcome& outcome;

  std::vector<int> comb;
  bool set_active = false;

  std::vector<std::vector<TransferMove>> move_lists;  // per deviator
  std::vector<int> cursor;
  bool cursor_valid = false;

  Impl(const GameSpec& s, const Outcome& o) : spec(s), outcome(o) {}

  bool AdvanceSet() {
    while (NextDeviatorSet(spec.n_players, spec.max_deviation_size, comb)) {
      move_lists.clear();
      bool all_have_moves = true;
      for (int i : comb) {
        move_lists.push_back(MovesForPlayer(spec, outcome.structure, i));
        if (move_lists.back().empty()) all_have_moves = false;
      }
      if (!all_have_moves) continue;
      cursor.assign(comb.size(), 0);
      cursor_valid = true;
      set_active = true;
      return true;
    }
    set_active = false;
    return false;
  }

  void AdvanceCursor() {
    for (int k = static_cast<int>(cursor.size()) - 1; k >= 0; --k) {
      if (cursor[k] + 1 < static_cast<int>(move_lists[k].size())) {
        ++cursor[k];
        for (int j = k + 1; j < static_cast<int>(cursor.size()); ++j)
          cursor[j] = 0;
        return;
      }
    }
    cursor_valid = false;
  }

  bool Next(Transfer& out) {
    while (true) {
      if (!set_active || !cursor_valid) {
        if (!AdvanceSet()) return false;
      }
      out.deviators = comb;
      out.moves.clear();
      for (int k = 0; k < static_cast<int>(comb.size()); ++k)
        out.moves.push_back(move_lists[k][cursor[k]]);
      AdvanceCursor();
      if (comb.size() > 1 &&
          !CombinedMovesValid(spec, outcome.structure, out))
        continue;
      return true;
    }
  }
};

TransferEnumerator::TransferEnumerator(const GameSpec& spec,
                                       const Outcome& outcome)
    : impl_(std::make_unique<Impl>(spec, outcome)) {
  spec.Validate();
  if (spec.mode != GameMode::kTaskGame)
    throw std::invalid_argument("transfer enumeration requires K-task mode");
}

TransferEnumerator::~TransferEnumerator() = default;
TransferEnumerator::TransferEnumerator(TransferEnumerator&&) noexcept = default;

bool TransferEnumerator::Next(Transfer& out) { return impl_->Next(out); }

// ---------------------------------------------------------------------------
// Search and solve loops.
// ---------------------------------------------------------------------------

std::optional<std::pair<Deviation, double>> FindProfitableDeviation(
    const GameSpec& spec, const Outcome& outcome, const SolverConfig& cfg,
    const StructureContext& ctx) {
  DeviationEnumerator en(spec, outcome, ctx);
  Deviation dev;
  std::optional<std::pair<Deviation, double>> best;
  while (en.Next(dev)) {
    const auto pr = IsProfitable(spec, outcome, dev, ctx);
    if (!pr.profitable) continue;
    const double gain = pr.rhs - pr.lhs;
    if (cfg.improvement == ImprovementRule::kFirstImprovement)
      return std::make_pair(dev, gain);
    if (!best || gain > best->second) best = std::make_pair(dev, gain);
  }
  return best;
}

std::optional<std::pair<Transfer, double>> FindProfitableTransfer(
    const GameSpec& spec, const Outcome& outcome, const SolverConfig& cfg,
    const StructureContext& ctx) {
  TransferEnumerator en(spec, outcome);
  Transfer tr;
  std::optional<std::pair<Transfer, double>> best;
  while (en.Next(tr)) {
    const auto pr = IsProfitable(spec, outcome, tr, ctx);
    if (!pr.profitable) continue;
    const double gain = pr.rhs - pr.lhs;
    if (cfg.improvement == ImprovementRule::kFirstImprovement)
      return std::make_pair(tr, gain);
    if (!best || gain > best->second) best = std::make_pair(tr, gain);
  }
  return best;
}

void RebalanceAllocations(const GameSpec& spec, Outcome& outcome,
                          const StructureContext& ctx) {
  for (int idx = 0; idx < outcome.structure.size(); ++idx) {
    const auto& c = outcome.structure.coalitions[idx];
    auto& row = outcome.allocation.payoffs[idx];
    const double v = CoalitionValue(spec, c, ctx);
    double sum = 0.0;
    for (double x : row) sum += x;
    const double scale = std::max({1.0, std::fabs(v), std::fabs(sum)});
    if (std::fabs(v - sum) <= 1e-9 * scale) continue;
    if (std::fabs(sum) > 1e-12) {
      const double factor = v / sum;
      for (double& x : row) x *= factor;
    } else {
      row = DividePayoff(spec, c, v);
    }
  }
}

namespace {

template <typename Enumerator, typename CandidateT>
bool SolveStep(const GameSpec& spec, Outcome& cur, ConvergenceReport& rep,
               const SolverConfig& cfg,
               Outcome (*apply)(const GameSpec&, const Outcome&,
                                const CandidateT&, const StructureContext&)) {
  const StructureContext ctx{&cur.structure};
  std::vector<std::pair<CandidateT, double>> ranked;

  Enumerator en(spec, cur, ctx);
  CandidateT cand;
  while (en.Next(cand)) {
    ++rep.candidates_examined;
    const auto pr = IsProfitable(spec, cur, cand, ctx);
    if (!pr.profitable) continue;
    const double gain = pr.rhs - pr.lhs;
    if (cfg.improvement == ImprovementRule::kFirstImprovement) {
      Outcome next = apply(spec, cur, cand, ctx);
      const StructureContext post{&next.structure};
      RebalanceAllocations(spec, next, post);
      const double realized = SocialWelfare(spec, next.structure, post);
      if (StrictlyImproves(realized, rep.welfare_trace.back())) {
        cur = std::move(next);
        rep.welfare_trace.push_back(realized);
        ++rep.iterations;
        return true;
      }
      ++rep.rejected_unrealized;
    } else {
      ranked.emplace_back(cand, gain);
    }
  }

  if (cfg.improvement == ImprovementRule::kBestImprovement) {
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (auto& [dev, gain] : ranked) {
      Outcome next = apply(spec, cur, dev, ctx);
      const StructureContext post{&next.structure};
      RebalanceAllocations(spec, next, post);
      const double realized = SocialWelfare(spec, next.structure, post);
      if (StrictlyImproves(realized, rep.welfare_trace.back())) {
        cur = std::move(next);
        rep.welfare_trace.push_back(realized);
        ++rep.iterations;
        return true;
      }
      ++rep.rejected_unrealized;
    }
  }
  return false;
}

// TransferEnumerator does not take a context; adapt it to the SolveStep shape.
class TransferEnumeratorAdapter {
 public:
  TransferEnumeratorAdapter(const GameSpec& spec, const Outcome& outcome,
                            const StructureContext&)
      : en_(spec, outcome) {}
  bool Next(Transfer& out) { return en_.Next(out); }

 private:
  TransferEnumerator en_;
};

}  // namespace

std::pair<Outcome, ConvergenceReport> SolveKCoalition(const GameSpec& spec,
                                                      const Outcome& initial,
                                                      const SolverConfig& cfg) {
  spec.Validate();
  ValidateOutcome(spec, initial);
  if (spec.mode != GameMode::kCoalitionGame)
    throw std::invalid_argument("SolveKCoalition requires K-coalition mode");
  Outcome cur = initial;
  ConvergenceReport rep;
  {
    const StructureContext ctx{&cur.structure};
    rep.welfare_trace.push_back(SocialWelfare(spec, cur.structure, ctx));
  }
  while (rep.iterations < cfg.max_iterations) {
    if (!SolveStep<DeviationEnumerator, Deviation>(spec, cur, rep, cfg,
                                                   &ApplyDeviation)) {
      rep.terminated = TerminationStatus::kStable;
      return {std::move(cur), std::move(rep)};
    }
  }
  rep.terminated = TerminationStatus::kIterationCap;
  return {std::move(cur), std::move(rep)};
}

std::pair<Outcome, ConvergenceReport> SolveKTask(const GameSpec& spec,
                                                 const Outcome& initial,
                                                 const SolverConfig& cfg) {
  spec.Validate();
  ValidateOutcome(spec, initial);
  if (spec.mode != GameMode::kTaskGame)
    throw std::invalid_argument("SolveKTask requires K-task mode");
  Outcome cur = initial;
  ConvergenceReport rep;
  {
    const StructureContext ctx{&cur.structure};
    rep.welfare_trace.push_back(SocialWelfare(spec, cur.structure, ctx));
  }
  while (rep.iterations < cfg.max_iterations) {
    if (!SolveStep<TransferEnumeratorAdapter, Transfer>(spec, cur, rep, cfg,
                                                        &ApplyTransfer)) {
      rep.terminated = TerminationStatus::kStable;
      return {std::move(cur), std::move(rep)};
    }
  }
  rep.terminated = TerminationStatus::kIterationCap;
  return {std::move(cur), std::move(rep)};
}

// ---------------------------------------------------------------------------
// Exhaustive certifier.
// ---------------------------------------------------------------------------

namespace {

struct WorkGuard {
  std::int64_t used = 0;
  std::int64_t cap;
  explicit WorkGuard(std::int64_t c) : cap(c) {}
  void Charge(std::int64_t amount = 1) {
    used += amount;
    if (used > cap)
      throw std::invalid_argument("certifier cap exceeded; instance too large");
  }
};

// Brute-force best replacement structure: recursive multiset enumeration,
// independent of the capped cover DP.
void BruteBestStructure(const GameSpec& spec, const std::vector<int>& deviators,
                        ResourceVector& remaining, std::vector<int>& slots,
                        std::vector<Coalition>& stack, double value,
                        const ResourceVector& max_prev, double& best_value,
                        CoalitionStructure& best, WorkGuard& guard) {
  guard.Charge();
  if (value > best_value) {
    best_value = value;
    best.coalitions = stack;
  }
  // Candidates in descending lex order, skipping anything lex-greater than
  // the previous pick, so each multiset is visited exactly once.
  bool more = true;
  std::vector<int> cur(spec.n_players);
  for (int i = 0; i < spec.n_players; ++i) cur[i] = remaining[i];
  while (more) {
    guard.Charge();
    ResourceVector cand{std::vector<int>(cur.begin(), cur.end())};
    const bool lex_le_prev = !(max_prev < cand);
    if (!cand.IsZero() && lex_le_prev) {
      bool slots_ok = true;
      for (int i : deviators)
        if (cand[i] > 0 && slots[i] < 1) slots_ok = false;
      if (slots_ok && spec.IsAdmissible(Coalition{cand})) {
        const double v = CoalitionValue(spec, Coalition{cand}, {});
        if (v > 0.0) {
          for (int i = 0; i < spec.n_players; ++i) remaining[i] -= cand[i];
          for (int i : deviators)
            if (cand[i] > 0) --slots[i];
          stack.emplace_back(cand);
          BruteBestStructure(spec, deviators, remaining, slots, stack,
                             value + v, cand, best_value, best, guard);
          stack.pop_back();
          for (int i : deviators)
            if (cand[i] > 0) ++slots[i];
          for (int i = 0; i < spec.n_players; ++i) remaining[i] += cand[i];
        }
      }
    }
    // decrement mixed-radix counter bounded by `remaining`
    more = false;
    for (int k = spec.n_players - 1; k >= 0; --k) {
      if (cur[k] > 0) {
        --cur[k];
        for (int j = k + 1; j < spec.n_players; ++j) cur[j] = remaining[j];
        more = true;
        break;
      }
    }
  }
}

std::string DescribeDeviators(const std::vector<int>& devs) {
  std::ostringstream os;
  os << "S={";
  for (std::size_t k = 0; k < devs.size(); ++k) {
    if (k) os << ',';
    os << devs[k];
  }
  os << '}';
  return os.str();
}

CertifyResult CertifyKCoalition(const GameSpec& spec, const Outcome& outcome,
                                WorkGuard& guard) {
  std::vector<int> comb;
  while (NextDeviatorSet(spec.n_players, spec.max_deviation_size, comb)) {
    const StructureSplit split = SplitByDeviators(outcome, comb);
    struct Slot {
      int idx, player, max;
    };
    std::vector<Slot> slots;
    for (int idx : split.touched) {
      const auto& r = outcome.structure.coalitions[idx].resources;
      for (int i : comb)
        if (r[i] > 0) slots.push_back({idx, i, r[i]});
    }
    std::vector<int> pattern(slots.size(), 0);
    bool more = true;
    while (more) {
      guard.Charge();
      ResourceVector w(spec.n_players);
      std::vector<int> caps(spec.n_players, 0);
      for (int i : comb) {
        caps[i] = spec.max_coalitions_per_player;
        w[i] = IdleBudget(spec, outcome.structure, i);
      }
      for (int idx : split.dissolved)
        for (int i : comb) w[i] += outcome.structure.coalitions[idx].resources[i];
      for (std::size_t k = 0; k < slots.size(); ++k) {
        w[slots[k].player] += pattern[k];
        if (pattern[k] < slots[k].max) --caps[slots[k].player];
      }

      double best_value = 0.0;
      CoalitionStructure best;
      {
        ResourceVector remaining = w;
        std::vector<Coalition> stack;
        ResourceVector top = w;  // no previous pick: cap at w itself
        BruteBestStructure(spec, comb, remaining, caps, stack, 0.0, top,
                           best_value, best, guard);
      }

      Deviation dev;
      dev.deviators = comb;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        if (pattern[k] == 0) continue;
        auto [it, ins] = dev.withdrawals.try_emplace(
            slots[k].idx, ResourceVector(spec.n_players));
        it->second[slots[k].player] += pattern[k];
      }
      dev.replacement = best;
      const auto pr = IsProfitable(spec, outcome, dev, {});
      if (pr.profitable) {
        CertifyResult res;
        res.stable = false;
        res.lhs = pr.lhs;
        res.rhs = pr.rhs;
        std::ostringstream os;
        os << DescribeDeviators(comb) << " withdraws";
        for (const auto& [idx, d] : dev.withdrawals)
          os << ' ' << ToString(d) << " from coalition " << idx;
        if (dev.withdrawals.empty()) os << " nothing";
        os << ", reforms";
        for (const auto& c : dev.replacement.coalitions)
          os << ' ' << ToString(c.resources);
        if (dev.replacement.coalitions.empty()) os << " nothing";
        os << "; payoff " << pr.lhs << " -> " << pr.rhs;
        res.violation = os.str();
        return res;
      }

      more = false;
      for (int k = static_cast<int>(pattern.size()) - 1; k >= 0; --k) {
        if (pattern[k] < slots[k].max) {
          ++pattern[k];
          for (int j = k + 1; j < static_cast<int>(pattern.size()); ++j)
            pattern[j] = 0;
          more = true;
          break;
        }
      }
    }
  }
  CertifyResult res;
  res.stable = true;
  return res;
}

// Independent K-task move generation: naive loops over every
// (source, dest, amount) triple with validity filters.
std::vector<TransferMove> NaiveMoves(const GameSpec& spec,
                                     const CoalitionStructure& structure,
                                     int player) {
  std::vector<TransferMove> moves;
  for (int source = kIdlePool; source < spec.task_count; ++source) {
    for (int dest = kIdlePool; dest < spec.task_count; ++dest) {
      if (source == dest) continue;
      for (int amount = 1; amount <= spec.budgets[player]; ++amount) {
        TransferMove m{player, source, dest, amount};
        Transfer single;
        single.deviators = {player};
        single.moves = {m};
        try {
          auto vecs = TaskVectorsAfter(spec, structure, single);
          bool ok = true;
          int support = 0;
          for (int t = 0; t < spec.task_count; ++t) {
            if (vecs[t][player] > 0) ++support;
            if (!vecs[t].IsZero() && !spec.IsAdmissible(Coalition{vecs[t], t}))
              ok = false;
          }
          if (support > spec.max_coalitions_per_player) ok = false;
          if (ok) moves.push_back(m);
        } catch (const std::invalid_argument&) {
        }
      }
    }
  }
  return moves;
}

CertifyResult CertifyKTask(const GameSpec& spec, const Outcome& outcome,
                           WorkGuard& guard) {
  std::vector<int> comb;
  while (NextDeviatorSet(spec.n_players, spec.max_deviation_size, comb)) {
    std::vector<std::vector<TransferMove>> lists;
    bool all = true;
    for (int i : comb) {
      lists.push_back(NaiveMoves(spec, outcome.structure, i));
      if (lists.back().empty()) all = false;
    }
    if (!all) continue;
    std::vector<int> cursor(comb.size(), 0);
    bool more = true;
    while (more) {
      guard.Charge();
      Transfer tr;
      tr.deviators = comb;
      for (std::size_t k = 0; k < comb.size(); ++k)
        tr.moves.push_back(lists[k][cursor[k]]);
      bool valid = true;
      if (comb.size() > 1)
        valid = CombinedMovesValid(spec, outcome.structure, tr);
      if (valid) {
        const auto pr = IsProfitable(spec, outcome, tr, {});
        if (pr.profitable) {
          CertifyResult res;
          res.stable = false;
          res.lhs = pr.lhs;
          res.rhs = pr.rhs;
          std::ostringstream os;
          os << DescribeDeviators(comb) << " moves";
          for (const auto& m : tr.moves) {
            os << " [player " << m.player << ": " << m.amount << " from ";
            if (m.source == kIdlePool) os << "idle";
            else os << "task " << m.source;
            os << " to ";
            if (m.dest == kIdlePool) os << "idle";
            else os << "task " << m.dest;
            os << ']';
          }
          os << "; payoff " << pr.lhs << " -> " << pr.rhs;
          res.violation = os.str();
          return res;
        }
      }
      more = false;
      for (int k = static_cast<int>(cursor.size()) - 1; k >= 0; --k) {
        if (cursor[k] + 1 < static_cast<int>(lists[k].size())) {
          ++cursor[k];
          for (int j = k + 1; j < static_cast<int>(cursor.size()); ++j)
            cursor[j] = 0;
          more = true;
          break;
        }
      }
    }
  }
  CertifyResult res;
  res.stable = true;
  return res;
}

}  // namespace

CertifyResult CertifyOStable(const GameSpec& spec, const Outcome& outcome,
                             std::int64_t work_cap) {
  spec.Validate();
  ValidateOutcome(spec, outcome);
  WorkGuard guard(work_cap);
  if (spec.mode == GameMode::kCoalitionGame)
    return CertifyKCoalition(spec, outcome, guard);
  return CertifyKTask(spec, outcome, guard);
}

}  // namespace ocf
