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

#include "ocf/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ocf {
namespace {

// A payoff entry below this is treated as no claim at all. Keeps
// floating-point dust from counting as coalition involvement.
constexpr double kClaimEps = 1e-12;

bool Contains(const std::vector<int>& sorted, int v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

// Distributes `pool` over `weights` (nonnegative, not all zero), assigning
// the residue to the last positive-weight recipient so the shares sum to
// `pool` exactly.
void DistributeByWeight(double pool, const std::vector<double>& weights,
                        std::vector<double>& out) {
  double total = 0.0;
  int last = -1;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    if (weights[i] > 0.0) {
      total += weights[i];
      last = i;
    }
  }
  double assigned = 0.0;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    if (weights[i] <= 0.0 || i == last) continue;
    const double share = pool * weights[i] / total;
    out[i] += share;
    assigned += share;
  }
  if (last >= 0) out[last] += pool - assigned;
}

}  // namespace

std::string ToString(const ResourceVector& r) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < r.size(); ++i) {
    if (i) os << ',';
    os << r[i];
  }
  os << ')';
  return os.str();
}

void GameSpec::Validate() const {
  if (n_players < 1) throw std::invalid_argument("n_players must be >= 1");
  if (static_cast<int>(budgets.size()) != n_players)
    throw std::invalid_argument("budgets size mismatch");
  for (int b : budgets)
    if (b < 1) throw std::invalid_argument("budgets must be >= 1");
  if (max_coalitions_per_player < 1)
    throw std::invalid_argument("K must be >= 1");
  if (max_deviation_size < 1 || max_deviation_size > n_players)
    throw std::invalid_argument("S_max must be in [1, N]");
  if (mode == GameMode::kTaskGame) {
    if (task_count < 1) throw std::invalid_argument("task_count must be >= 1");
    if (!task_owners.empty() &&
        static_cast<int>(task_owners.size()) != task_count)
      throw std::invalid_argument("task_owners size mismatch");
  }
  if (!value_fn) throw std::invalid_argument("value_fn must be set");
}

double GameSpec::TaskBase(int task) const {
  Coalition zero{ResourceVector(n_players), task};
  return value_fn(zero, StructureContext{});
}

double CoalitionValue(const GameSpec& spec, const Coalition& c,
                      const StructureContext& ctx) {
  if (c.resources.size() != spec.n_players)
    throw std::invalid_argument("coalition vector length mismatch");
  for (int i = 0; i < spec.n_players; ++i) {
    if (c.resources[i] < 0 || c.resources[i] > spec.budgets[i])
      throw std::invalid_argument("coalition vector violates budget bounds");
  }
  return spec.value_fn(c, ctx);
}

std::vector<double> DividePayoff(const GameSpec& spec, const Coalition& c,
                                 double value) {
  if (c.resources.IsZero())
    throw std::invalid_argument("cannot divide payoff of an empty coalition");
  std::vector<double> out(spec.n_players, 0.0);
  const auto support = c.resources.Support();
  const int last = support.back();
  if (spec.division == DivisionRule::kProportional) {
    const double total = c.resources.Total();
    double assigned = 0.0;
    for (int i : support) {
      if (i == last) continue;
      out[i] = value * c.resources[i] / total;
      assigned += out[i];
    }
    out[last] = value - assigned;
  } else {
    const double share = value / static_cast<double>(support.size());
    double assigned = 0.0;
    for (int i : support) {
      if (i == last) continue;
      out[i] = share;
      assigned += share;
    }
    out[last] = value - assigned;
  }
  return out;
}

double PlayerPayoff(const GameSpec& spec, const Outcome& outcome, int player) {
  double p = 0.0;
  for (const auto& row : outcome.allocation.payoffs) p += row[player];
  if (spec.mode == GameMode::kTaskGame && !spec.task_owners.empty()) {
    for (int t = 0; t < spec.task_count; ++t) {
      if (spec.task_owners[t] != player) continue;
      if (outcome.structure.ForTask(t) == nullptr) p += spec.TaskBase(t);
    }
  }
  return p;
}

double SocialWelfare(const GameSpec& spec, const CoalitionStructure& structure,
                     const StructureContext& ctx) {
  double w = 0.0;
  if (spec.mode == GameMode::kTaskGame) {
    // The task set is fixed: empty tasks still exist and are valued at
    // their zero vector.
    for (int t = 0; t < spec.task_count; ++t) {
      const Coalition* c = structure.ForTask(t);
      if (c != nullptr) {
        w += CoalitionValue(spec, *c, ctx);
      } else {
        w += CoalitionValue(spec, Coalition{ResourceVector(spec.n_players), t},
                            ctx);
      }
    }
  } else {
    for (const auto& c : structure.coalitions) w += CoalitionValue(spec, c, ctx);
  }
  return w;
}

int IdleBudget(const GameSpec& spec, const CoalitionStructure& structure,
               int player) {
  return spec.budgets[player] - structure.Committed(player);
}

void ValidateStructure(const GameSpec& spec,
                       const CoalitionStructure& structure) {
  for (const auto& c : structure.coalitions) {
    if (c.resources.size() != spec.n_players)
      throw std::invalid_argument("coalition vector length mismatch");
    if (c.resources.IsZero())
      throw std::invalid_argument("all-zero coalition stored in structure");
    for (int i = 0; i < spec.n_players; ++i)
      if (c.resources[i] < 0)
        throw std::invalid_argument("negative contribution");
    if (!spec.IsAdmissible(c))
      throw std::invalid_argument("inadmissible coalition in structure");
    if (spec.mode == GameMode::kTaskGame) {
      if (!c.task_id || *c.task_id < 0 || *c.task_id >= spec.task_count)
        throw std::invalid_argument("task id missing or out of range");
    } else if (c.task_id) {
      throw std::invalid_argument("task id present in K-coalition mode");
    }
  }
  if (spec.mode == GameMode::kTaskGame) {
    std::vector<bool> seen(spec.task_count, false);
    for (const auto& c : structure.coalitions) {
      if (seen[*c.task_id])
        throw std::invalid_argument("duplicate task coalition");
      seen[*c.task_id] = true;
    }
  }
  for (int i = 0; i < spec.n_players; ++i) {
    if (structure.Committed(i) > spec.budgets[i])
      throw std::invalid_argument("player over budget");
    if (structure.SupportCount(i) > spec.max_coalitions_per_player)
      throw std::invalid_argument("player exceeds K coalitions");
  }
}

void ValidateOutcome(const GameSpec& spec, const Outcome& outcome) {
  ValidateStructure(spec, outcome.structure);
  if (static_cast<int>(outcome.allocation.payoffs.size()) !=
      outcome.structure.size())
    throw std::invalid_argument("allocation does not index the structure");
  for (const auto& row : outcome.allocation.payoffs)
    if (static_cast<int>(row.size()) != spec.n_players)
      throw std::invalid_argument("allocation row length mismatch");
}

Outcome MakeOutcome(const GameSpec& spec, CoalitionStructure structure) {
  ValidateStructure(spec, structure);
  Outcome out;
  out.structure = std::move(structure);
  const StructureContext ctx{&out.structure};
  for (const auto& c : out.structure.coalitions) {
    const double v = CoalitionValue(spec, c, ctx);
    if (spec.mode == GameMode::kTaskGame && !spec.task_owners.empty()) {
      const int owner = spec.task_owners[*c.task_id];
      const double base = spec.TaskBase(*c.task_id);
      auto row = DividePayoff(spec, c, v - base);
      row[owner] += base;
      out.allocation.payoffs.push_back(std::move(row));
    } else {
      out.allocation.payoffs.push_back(DividePayoff(spec, c, v));
    }
  }
  return out;
}

StructureSplit SplitByDeviators(const Outcome& outcome,
                                const std::vector<int>& deviators) {
  StructureSplit split;
  for (int idx = 0; idx < outcome.structure.size(); ++idx) {
    const auto& c = outcome.structure.coalitions[idx];
    const auto& row = outcome.allocation.payoffs[idx];
    bool outsider_involved = false;
    for (int i = 0; i < c.resources.size(); ++i) {
      const bool involved =
          c.resources[i] > 0 || std::fabs(row[i]) > kClaimEps;
      if (involved && !Contains(deviators, i)) {
        outsider_involved = true;
        break;
      }
    }
    if (outsider_involved) {
      split.touched.push_back(idx);
    } else {
      split.dissolved.push_back(idx);
    }
  }
  return split;
}

namespace {

void ValidateDeviation(const GameSpec& spec, const Outcome& outcome,
                       const Deviation& dev, const StructureSplit& split) {
  if (dev.deviators.empty() ||
      static_cast<int>(dev.deviators.size()) > spec.max_deviation_size)
    throw std::invalid_argument("deviator set size out of range");
  if (!std::is_sorted(dev.deviators.begin(), dev.deviators.end()))
    throw std::invalid_argument("deviators must be sorted");
  for (const auto& [idx, d] : dev.withdrawals) {
    if (std::find(split.touched.begin(), split.touched.end(), idx) ==
        split.touched.end())
      throw std::invalid_argument("withdrawal from a non-touched coalition");
    const auto& r = outcome.structure.coalitions[idx].resources;
    for (int i = 0; i < spec.n_players; ++i) {
      if (d[i] < 0 || d[i] > r[i])
        throw std::invalid_argument("withdrawal exceeds contribution");
      if (d[i] > 0 && !Contains(dev.deviators, i))
        throw std::invalid_argument("withdrawal by a non-deviator");
    }
  }
  for (const auto& c : dev.replacement.coalitions) {
    if (c.resources.IsZero())
      throw std::invalid_argument("all-zero replacement coalition");
    for (int i = 0; i < spec.n_players; ++i)
      if (c.resources[i] > 0 && !Contains(dev.deviators, i))
        throw std::invalid_argument("replacement involves a non-deviator");
  }
  // Resource conservation: no deviator may deploy more than what the
  // dissolved coalitions, the withdrawals, and their idle budget provide.
  for (int i : dev.deviators) {
    int available = IdleBudget(spec, outcome.structure, i);
    for (int idx : split.dissolved)
      available += outcome.structure.coalitions[idx].resources[i];
    for (const auto& [idx, d] : dev.withdrawals) available += d[i];
    int used = 0;
    for (const auto& c : dev.replacement.coalitions) used += c.resources[i];
    if (used > available)
      throw std::invalid_argument("replacement exceeds available resources");
  }
}

const ResourceVector* WithdrawalFor(const Deviation& dev, int idx) {
  auto it = dev.withdrawals.find(idx);
  return it == dev.withdrawals.end() ? nullptr : &it->second;
}

}  // namespace

double ArbitrationPayoff(const GameSpec& spec, const Outcome& outcome,
                         const Deviation& deviation, int coalition_idx,
                         const StructureContext& ctx) {
  const auto& c = outcome.structure.coalitions[coalition_idx];
  const auto& row = outcome.allocation.payoffs[coalition_idx];
  const ResourceVector* d = WithdrawalFor(deviation, coalition_idx);
  const bool untouched = d == nullptr || d->IsZero();
  switch (spec.arbitration) {
    case ArbitrationKind::kConservative:
      return 0.0;
    case ArbitrationKind::kRefined: {
      if (!untouched) return 0.0;
      double s = 0.0;
      for (int i : deviation.deviators) s += row[i];
      return s;
    }
    case ArbitrationKind::kOptimistic: {
      Coalition reduced = c;
      if (d != nullptr) reduced.resources = c.resources.Minus(*d);
      const double v_reduced =
          reduced.resources.IsZero() ? 0.0 : CoalitionValue(spec, reduced, ctx);
      double non_dev = 0.0;
      for (int i = 0; i < spec.n_players; ++i)
        if (!Contains(deviation.deviators, i)) non_dev += row[i];
      return v_reduced - non_dev;
    }
  }
  return 0.0;
}

ProfitabilityResult IsProfitable(const GameSpec& spec, const Outcome& outcome,
                                 const Deviation& deviation,
                                 const StructureContext& ctx) {
  const StructureSplit split = SplitByDeviators(outcome, deviation.deviators);
  ValidateDeviation(spec, outcome, deviation, split);
  ProfitabilityResult res;
  for (int i : deviation.deviators)
    res.lhs += PlayerPayoff(spec, outcome, i);
  for (const auto& c : deviation.replacement.coalitions)
    res.rhs += CoalitionValue(spec, c, ctx);
  for (int idx : split.touched)
    res.rhs += ArbitrationPayoff(spec, outcome, deviation, idx, ctx);
  res.profitable = StrictlyImproves(res.rhs, res.lhs);
  return res;
}

namespace {

// Rebuilds the payoff row of a touched coalition after a deviation.
// Non-deviators keep their prior payoffs; the deviators' side follows the
// arbitration kind. `pinned_base` holds a task owner's inviolable baseline
// when the owner is a deviator (K-task games only; -1 otherwise).
std::vector<double> TouchedRow(const GameSpec& spec,
                               const std::vector<double>& old_row,
                               const ResourceVector& old_vec,
                               const ResourceVector& new_vec,
                               const std::vector<int>& deviators,
                               bool influenced, double new_value,
                               int pinned_owner, double pinned_base) {
  const int n = spec.n_players;
  std::vector<double> row(n, 0.0);
  double non_dev_total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!Contains(deviators, i)) {
      row[i] = old_row[i];
      non_dev_total += row[i];
    }
  }
  if (pinned_owner >= 0) row[pinned_owner] = pinned_base;

  double pool = new_value - non_dev_total - (pinned_owner >= 0 ? pinned_base : 0.0);

  const bool keep_old_claims =
      spec.arbitration == ArbitrationKind::kOptimistic ||
      (spec.arbitration == ArbitrationKind::kRefined && !influenced);

  if (keep_old_claims && spec.arbitration == ArbitrationKind::kRefined) {
    // Refined on an untouched coalition: deviators keep exactly their old
    // claims; the values are unchanged so the pool matches.
    for (int i : deviators)
      if (i != pinned_owner) row[i] += old_row[i];
    return row;
  }

  if (spec.arbitration == ArbitrationKind::kOptimistic) {
    // Deviators share the leftover, preferring those still contributing,
    // then those who contributed before, then existing claim holders.
    std::vector<double> weights(n, 0.0);
    bool any = false;
    for (int i : deviators) {
      if (i == pinned_owner) continue;
      if (new_vec[i] > 0) {
        weights[i] = new_vec[i];
        any = true;
      }
    }
    if (!any) {
      for (int i : deviators) {
        if (i == pinned_owner) continue;
        if (old_vec[i] > 0) {
          weights[i] = old_vec[i];
          any = true;
        }
      }
    }
    if (!any) {
      // No deviator ever contributed here: the pool is exactly the
      // deviators' existing (ghost) claims; keep them as they are.
      for (int i : deviators)
        if (i != pinned_owner) row[i] += old_row[i];
      return row;
    }
    std::vector<double> shares(n, 0.0);
    DistributeByWeight(pool, weights, shares);
    for (int i = 0; i < n; ++i) row[i] += shares[i];
    return row;
  }

  // Conservative (or refined on an influenced coalition): deviators get
  // nothing; any residual goes to the non-deviators still contributing.
  std::vector<double> weights(n, 0.0);
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (!Contains(deviators, i) && new_vec[i] > 0) {
      weights[i] = new_vec[i];
      any = true;
    }
  }
  if (!any) {
    for (int i : deviators) {
      if (i == pinned_owner) continue;
      if (new_vec[i] > 0) {
        weights[i] = new_vec[i];
        any = true;
      }
    }
  }
  if (any) {
    std::vector<double> shares(n, 0.0);
    DistributeByWeight(pool, weights, shares);
    for (int i = 0; i < n; ++i) row[i] += shares[i];
  } else if (pinned_owner >= 0) {
    row[pinned_owner] += pool;
  }
  return row;
}

}  // namespace

Outcome ApplyDeviation(const GameSpec& spec, const Outcome& outcome,
                       const Deviation& deviation,
                       const StructureContext& ctx) {
  const StructureSplit split = SplitByDeviators(outcome, deviation.deviators);
  ValidateDeviation(spec, outcome, deviation, split);

  Outcome next;
  std::vector<bool> dissolved(outcome.structure.size(), false);
  for (int idx : split.dissolved) dissolved[idx] = true;

  for (int idx = 0; idx < outcome.structure.size(); ++idx) {
    if (dissolved[idx]) continue;
    const auto& c = outcome.structure.coalitions[idx];
    const ResourceVector* d = WithdrawalFor(deviation, idx);
    Coalition reduced = c;
    if (d != nullptr) reduced.resources = c.resources.Minus(*d);
    const bool influenced = d != nullptr && !d->IsZero();
    if (reduced.resources.IsZero()) continue;  // fully emptied: removed
    const double v_new = CoalitionValue(spec, reduced, ctx);
    auto row = TouchedRow(spec, outcome.allocation.payoffs[idx], c.resources,
                          reduced.resources, deviation.deviators, influenced,
                          v_new, /*pinned_owner=*/-1, 0.0);
    next.structure.coalitions.push_back(std::move(reduced));
    next.allocation.payoffs.push_back(std::move(row));
  }

  for (const auto& c : deviation.replacement.coalitions) {
    const double v = CoalitionValue(spec, c, ctx);
    next.structure.coalitions.push_back(c);
    next.allocation.payoffs.push_back(DividePayoff(spec, c, v));
  }

  ValidateStructure(spec, next.structure);
  return next;
}

std::vector<ResourceVector> TaskVectorsAfter(const GameSpec& spec,
                                             const CoalitionStructure& structure,
                                             const Transfer& transfer) {
  if (spec.mode != GameMode::kTaskGame)
    throw std::invalid_argument("transfers require K-task mode");
  std::vector<ResourceVector> vecs(spec.task_count,
                                   ResourceVector(spec.n_players));
  for (const auto& c : structure.coalitions) vecs[*c.task_id] = c.resources;

  if (transfer.moves.size() != transfer.deviators.size())
    throw std::invalid_argument("one move per deviator required");
  for (const auto& m : transfer.moves) {
    if (!Contains(transfer.deviators, m.player))
      throw std::invalid_argument("move by a non-deviator");
    if (m.amount < 1) throw std::invalid_argument("move amount must be >= 1");
    if (m.source == m.dest)
      throw std::invalid_argument("move source equals destination");
    if (m.source != kIdlePool) {
      if (m.source < 0 || m.source >= spec.task_count)
        throw std::invalid_argument("move source out of range");
      if (vecs[m.source][m.player] < m.amount)
        throw std::invalid_argument("move exceeds contribution at source");
      vecs[m.source][m.player] -= m.amount;
    } else {
      if (IdleBudget(spec, structure, m.player) < m.amount)
        throw std::invalid_argument("move exceeds idle budget");
    }
    if (m.dest != kIdlePool) {
      if (m.dest < 0 || m.dest >= spec.task_count)
        throw std::invalid_argument("move destination out of range");
      vecs[m.dest][m.player] += m.amount;
    }
  }
  return vecs;
}

namespace {

struct TaskView {
  ResourceVector old_vec;
  ResourceVector new_vec;
  const std::vector<double>* old_row;  // nullptr when the task was empty
};

std::vector<TaskView> BuildTaskViews(const GameSpec& spec,
                                     const Outcome& outcome,
                                     const Transfer& transfer) {
  auto new_vecs = TaskVectorsAfter(spec, outcome.structure, transfer);
  std::vector<TaskView> views(spec.task_count);
  for (int t = 0; t < spec.task_count; ++t) {
    views[t].old_vec = ResourceVector(spec.n_players);
    views[t].new_vec = new_vecs[t];
    views[t].old_row = nullptr;
  }
  for (int idx = 0; idx < outcome.structure.size(); ++idx) {
    const auto& c = outcome.structure.coalitions[idx];
    views[*c.task_id].old_vec = c.resources;
    views[*c.task_id].old_row = &outcome.allocation.payoffs[idx];
  }
  return views;
}

bool TaskInvolvesDeviators(const GameSpec& spec, const TaskView& view, int task,
                           const std::vector<int>& deviators) {
  if (!(view.old_vec == view.new_vec)) return true;
  for (int i : deviators) {
    if (view.old_vec[i] > 0) return true;
    if (view.old_row != nullptr && std::fabs((*view.old_row)[i]) > kClaimEps)
      return true;
  }
  if (!spec.task_owners.empty() && Contains(deviators, spec.task_owners[task]))
    return true;
  return false;
}

}  // namespace

ProfitabilityResult IsProfitable(const GameSpec& spec, const Outcome& outcome,
                                 const Transfer& transfer,
                                 const StructureContext& ctx) {
  const auto views = BuildTaskViews(spec, outcome, transfer);
  ProfitabilityResult res;
  for (int i : transfer.deviators) res.lhs += PlayerPayoff(spec, outcome, i);

  for (int t = 0; t < spec.task_count; ++t) {
    const auto& view = views[t];
    if (!TaskInvolvesDeviators(spec, view, t, transfer.deviators)) continue;
    const int owner = spec.task_owners.empty() ? -1 : spec.task_owners[t];
    const bool owner_deviates = owner >= 0 && Contains(transfer.deviators, owner);
    const bool influenced = !(view.old_vec == view.new_vec);
    // Prior claims of non-deviators on this task; an empty task's baseline
    // belongs to its owner.
    double non_dev_old = 0.0;
    double dev_old = 0.0;
    if (view.old_row != nullptr) {
      for (int i = 0; i < spec.n_players; ++i) {
        if (Contains(transfer.deviators, i))
          dev_old += (*view.old_row)[i];
        else
          non_dev_old += (*view.old_row)[i];
      }
    } else if (owner >= 0) {
      const double base = spec.TaskBase(t);
      if (owner_deviates)
        dev_old += base;
      else
        non_dev_old += base;
    }
    switch (spec.arbitration) {
      case ArbitrationKind::kOptimistic: {
        const double v_new = CoalitionValue(
            spec, Coalition{view.new_vec, t}, ctx);
        res.rhs += v_new - non_dev_old;
        break;
      }
      case ArbitrationKind::kRefined:
        if (!influenced) res.rhs += dev_old;
        else if (owner_deviates) res.rhs += spec.TaskBase(t);
        break;
      case ArbitrationKind::kConservative:
        if (owner_deviates) res.rhs += spec.TaskBase(t);
        break;
    }
  }
  res.profitable = StrictlyImproves(res.rhs, res.lhs);
  return res;
}

Outcome ApplyTransfer(const GameSpec& spec, const Outcome& outcome,
                      const Transfer& transfer, const StructureContext& ctx) {
  const auto views = BuildTaskViews(spec, outcome, transfer);
  Outcome next;
  for (int t = 0; t < spec.task_count; ++t) {
    const auto& view = views[t];
    if (view.new_vec.IsZero()) continue;
    Coalition c{view.new_vec, t};
    const int owner = spec.task_owners.empty() ? -1 : spec.task_owners[t];
    const double v_new = CoalitionValue(spec, c, ctx);

    std::vector<double> row;
    if (!TaskInvolvesDeviators(spec, view, t, transfer.deviators) &&
        view.old_row != nullptr) {
      row = *view.old_row;
    } else {
      std::vector<double> old_row(spec.n_players, 0.0);
      if (view.old_row != nullptr) {
        old_row = *view.old_row;
      } else if (owner >= 0 && !Contains(transfer.deviators, owner)) {
        // Empty task entering the structure: the owner's baseline claim
        // materializes as a non-deviator claim.
        old_row[owner] = spec.TaskBase(t);
      }
      const bool influenced = !(view.old_vec == view.new_vec);
      const bool owner_deviates =
          owner >= 0 && Contains(transfer.deviators, owner);
      row = TouchedRow(spec, old_row, view.old_vec, view.new_vec,
                       transfer.deviators, influenced, v_new,
                       owner_deviates ? owner : -1,
                       owner_deviates ? spec.TaskBase(t) : 0.0);
    }
    next.structure.coalitions.push_back(std::move(c));
    next.allocation.payoffs.push_back(std::move(row));
  }
  ValidateStructure(spec, next.structure);
  return next;
}

}  // namespace ocf
