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

#ifndef OCF_CORE_HPP
#define OCF_CORE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ocf {

// Comparison slack for strict-inequality decisions (profitability) and for
// efficiency checks. Ties never count as improvements, so the dynamics
// cannot cycle on floating-point noise.
inline constexpr double kEps = 1e-9;

inline bool StrictlyImproves(double next, double prev) {
  const double scale = std::max({1.0, std::fabs(next), std::fabs(prev)});
  return next > prev + kEps * scale;
}

// ---------------------------------------------------------------------------
// Resource vectors and coalitions.
// ---------------------------------------------------------------------------

// Per-player integer resource contributions. Entry i is what player i puts
// into one coalition.
struct ResourceVector {
  std::vector<int> units;

  ResourceVector() = default;
  explicit ResourceVector(int n_players) : units(n_players, 0) {}
  explicit ResourceVector(std::vector<int> u) : units(std::move(u)) {}

  int size() const { return static_cast<int>(units.size()); }
  int operator[](int i) const { return units[i]; }
  int& operator[](int i) { return units[i]; }

  bool IsZero() const {
    for (int u : units)
      if (u != 0) return false;
    return true;
  }

  int Total() const {
    int t = 0;
    for (int u : units) t += u;
    return t;
  }

  // Players with a positive contribution.
  std::vector<int> Support() const {
    std::vector<int> s;
    for (int i = 0; i < size(); ++i)
      if (units[i] > 0) s.push_back(i);
    return s;
  }

  // Lattice order: every entry <= the corresponding entry of other.
  bool DominatedBy(const ResourceVector& other) const {
    for (int i = 0; i < size(); ++i)
      if (units[i] > other.units[i]) return false;
    return true;
  }

  ResourceVector Plus(const ResourceVector& o) const {
    ResourceVector r = *this;
    for (int i = 0; i < size(); ++i) r.units[i] += o.units[i];
    return r;
  }

  ResourceVector Minus(const ResourceVector& o) const {
    ResourceVector r = *this;
    for (int i = 0; i < size(); ++i) r.units[i] -= o.units[i];
    return r;
  }

  friend bool operator==(const ResourceVector& a, const ResourceVector& b) {
    return a.units == b.units;
  }
  friend bool operator<(const ResourceVector& a, const ResourceVector& b) {
    return a.units < b.units;
  }
};

std::string ToString(const ResourceVector& r);

// One coalition: its resource vector, plus the task it serves in K-task
// games (absent in K-coalition games).
struct Coalition {
  ResourceVector resources;
  std::optional<int> task_id;

  Coalition() = default;
  explicit Coalition(ResourceVector r, std::optional<int> task = std::nullopt)
      : resources(std::move(r)), task_id(task) {}
};

struct CoalitionStructure {
  std::vector<Coalition> coalitions;

  int size() const { return static_cast<int>(coalitions.size()); }
  bool empty() const { return coalitions.empty(); }

  // Total committed resources of player i across all coalitions.
  int Committed(int player) const {
    int t = 0;
    for (const auto& c : coalitions) t += c.resources[player];
    return t;
  }

  // Number of coalitions player i contributes to.
  int SupportCount(int player) const {
    int t = 0;
    for (const auto& c : coalitions)
      if (c.resources[player] > 0) ++t;
    return t;
  }

  // Coalition for a given task, or nullptr when the task is empty.
  const Coalition* ForTask(int task) const {
    for (const auto& c : coalitions)
      if (c.task_id && *c.task_id == task) return &c;
    return nullptr;
  }
};

// Passed to value functions that need to see the rest of the world
// (externality-aware scenario values). Pure value functions ignore it.
struct StructureContext {
  const CoalitionStructure* structure = nullptr;
};

using ValueFn = std::function<double(const Coalition&, const StructureContext&)>;
using AdmissibleFn = std::function<bool(const Coalition&)>;

// ---------------------------------------------------------------------------
// Game specification.
// ---------------------------------------------------------------------------

enum class GameMode { kCoalitionGame, kTaskGame };
enum class DivisionRule { kProportional, kEqual };
enum class ArbitrationKind { kConservative, kRefined, kOptimistic };

struct GameSpec {
  int n_players = 0;
  std::vector<int> budgets;          // R_i, integer resource units
  int max_coalitions_per_player = 1; // K
  int max_deviation_size = 1;        // upper bound on |S|
  GameMode mode = GameMode::kCoalitionGame;
  int task_count = 0;                // T, K-task mode only
  DivisionRule division = DivisionRule::kProportional;
  ArbitrationKind arbitration = ArbitrationKind::kOptimistic;
  ValueFn value_fn;
  // Coalitions whose support fails this predicate cannot be formed.
  // Defaults to everything-admissible when empty.
  AdmissibleFn admissible;
  // K-task mode: optional owner per task. The owner permanently holds the
  // task's baseline value v(zero vector); used by scenarios whose tasks are
  // worth something even with no contributors.
  std::vector<int> task_owners;

  void Validate() const;  // throws std::invalid_argument on bad fields
  bool IsAdmissible(const Coalition& c) const {
    return !admissible || admissible(c);
  }
  // Baseline value of task t with no contributions.
  double TaskBase(int task) const;
};

// ---------------------------------------------------------------------------
// Outcomes.
// ---------------------------------------------------------------------------

// Per-coalition, per-player payoffs. Parallel to the coalitions of the
// structure it belongs to. Entries may be nonzero for a player with zero
// contribution only as the residue of a past deviation (deviator ghosts)
// or as a task owner's baseline claim.
struct PayoffAllocation {
  std::vector<std::vector<double>> payoffs;

  double Get(int coalition_idx, int player) const {
    return payoffs[coalition_idx][player];
  }
};

struct Outcome {
  CoalitionStructure structure;
  PayoffAllocation allocation;
};

// ---------------------------------------------------------------------------
// Deviations (K-coalition) and transfers (K-task).
// ---------------------------------------------------------------------------

struct Deviation {
  std::vector<int> deviators;  // sorted player indices, |S| <= S_max
  // Withdrawal per touched coalition: index into the current structure ->
  // full-length vector, nonzero only for deviators, d(r)_i <= r_i.
  std::map<int, ResourceVector> withdrawals;
  // The deviators' new sub-structure (supports within `deviators` only).
  CoalitionStructure replacement;
};

inline constexpr int kIdlePool = -1;

struct TransferMove {
  int player = 0;
  int source = kIdlePool;  // task id, or kIdlePool
  int dest = kIdlePool;    // task id, or kIdlePool
  int amount = 0;          // >= 1
};

struct Transfer {
  std::vector<int> deviators;       // sorted
  std::vector<TransferMove> moves;  // exactly one move per deviator
};

struct ProfitabilityResult {
  bool profitable = false;
  double lhs = 0.0;  // deviators' current total payoff
  double rhs = 0.0;  // replacement value plus arbitration terms
};

// How a deviator set splits the current structure: coalitions fully owned
// by the deviators (dissolved on deviation) versus coalitions shared with
// outsiders (withdrawn from). Ownership counts payoff claims as well as
// contributions, so a coalition where an outsider still holds a claim is
// never dissolved out from under them.
struct StructureSplit {
  std::vector<int> dissolved;  // indices into structure.coalitions
  std::vector<int> touched;    // the rest
};

// ---------------------------------------------------------------------------
// Core operations.
// ---------------------------------------------------------------------------

// v(c). Validates the vector against budgets, then defers to spec.value_fn.
double CoalitionValue(const GameSpec& spec, const Coalition& c,
                      const StructureContext& ctx = {});

// Splits `value` among the contributors of c per the division rule. The
// highest-index member absorbs the rounding residue so the shares sum to
// `value` exactly.
std::vector<double> DividePayoff(const GameSpec& spec, const Coalition& c,
                                 double value);

// p_i: player i's total payoff across the whole outcome. In K-task games
// this includes baseline claims on owned tasks that currently have no
// coalition in the structure.
double PlayerPayoff(const GameSpec& spec, const Outcome& outcome, int player);

// Sum of coalition values. In K-task mode the sum ranges over all T tasks,
// with empty tasks evaluated at their zero vector (the task set is fixed;
// an empty task still exists and may carry baseline value).
double SocialWelfare(const GameSpec& spec, const CoalitionStructure& structure,
                     const StructureContext& ctx = {});

// Total payoff the deviators receive from touched coalition
// `coalition_idx` under the configured arbitration kind.
double ArbitrationPayoff(const GameSpec& spec, const Outcome& outcome,
                         const Deviation& deviation, int coalition_idx,
                         const StructureContext& ctx = {});

StructureSplit SplitByDeviators(const Outcome& outcome,
                                const std::vector<int>& deviators);

// Eq.-style profitability test: deviators' current payoff strictly below
// what the replacement structure plus arbitration would give them.
ProfitabilityResult IsProfitable(const GameSpec& spec, const Outcome& outcome,
                                 const Deviation& deviation,
                                 const StructureContext& ctx = {});
ProfitabilityResult IsProfitable(const GameSpec& spec, const Outcome& outcome,
                                 const Transfer& transfer,
                                 const StructureContext& ctx = {});

// Applies a deviation / transfer and rebuilds payoffs: replacement
// coalitions are divided fresh; in touched coalitions non-deviators keep
// their prior payoffs and the deviators' side follows the arbitration kind.
// Throws std::invalid_argument if the result violates structure invariants.
Outcome ApplyDeviation(const GameSpec& spec, const Outcome& outcome,
                       const Deviation& deviation,
                       const StructureContext& ctx = {});
Outcome ApplyTransfer(const GameSpec& spec, const Outcome& outcome,
                      const Transfer& transfer,
                      const StructureContext& ctx = {});

// Post-transfer vector of every task, indexed 0..T-1.
std::vector<ResourceVector> TaskVectorsAfter(const GameSpec& spec,
                                             const CoalitionStructure& structure,
                                             const Transfer& transfer);

// Fresh outcome for a given structure: every coalition divided by the
// division rule (task owners keep their baseline in K-task mode).
// Values are evaluated against the structure itself.
Outcome MakeOutcome(const GameSpec& spec, CoalitionStructure structure);

// Validates structure invariants (budgets, K-bound, task uniqueness,
// admissibility, no all-zero coalitions). Throws on violation.
void ValidateStructure(const GameSpec& spec, const CoalitionStructure& structure);

// Structure invariants plus allocation shape.
void ValidateOutcome(const GameSpec& spec, const Outcome& outcome);

// Uncommitted budget of player i.
int IdleBudget(const GameSpec& spec, const CoalitionStructure& structure,
               int player);

}  // namespace ocf

#endif  // OCF_CORE_HPP
