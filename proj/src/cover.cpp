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

#include "ocf/cover.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ocf {
namespace {

void CheckQueryVector(const GameSpec& spec, const ResourceVector& w) {
  if (w.size() != spec.n_players)
    throw std::invalid_argument("query vector length mismatch");
  for (int i = 0; i < spec.n_players; ++i) {
    if (w[i] < 0) throw std::invalid_argument("negative entry in query vector");
    if (w[i] > spec.budgets[i])
      throw std::invalid_argument("query vector exceeds budgets");
  }
}

// Odometer over the sub-vectors of `bound` restricted to `support`, in
// lexicographic order (index 0 most significant). Returns false once the
// space is exhausted.
bool NextSub(const std::vector<int>& support, const std::vector<int>& bound,
             std::vector<int>& cur) {
  for (int k = static_cast<int>(support.size()) - 1; k >= 0; --k) {
    if (cur[k] < bound[k]) {
      ++cur[k];
      for (int j = k + 1; j < static_cast<int>(support.size()); ++j) cur[j] = 0;
      return true;
    }
  }
  return false;
}

ResourceVector Embed(int n_players, const std::vector<int>& support,
                     const std::vector<int>& packed) {
  ResourceVector r(n_players);
  for (int k = 0; k < static_cast<int>(support.size()); ++k)
    r[support[k]] = packed[k];
  return r;
}

// Lazily evaluated per-lattice-code caches of coalition value and
// admissibility, shared by the DP passes.
struct ValueCache {
  const GameSpec& spec;
  const StructureContext& ctx;
  const std::vector<int>& support;
  const std::vector<std::int64_t>& strides;
  int n_players;
  std::vector<double> values;   // NaN = not evaluated yet
  std::vector<signed char> admissible;  // -1 unknown, 0 no, 1 yes
  std::int64_t evals = 0;

  ValueCache(const GameSpec& s, const StructureContext& c,
             const std::vector<int>& sup,
             const std::vector<std::int64_t>& str, int n, std::int64_t size)
      : spec(s), ctx(c), support(sup), strides(str), n_players(n),
        values(size, std::numeric_limits<double>::quiet_NaN()),
        admissible(size, -1) {}

  std::int64_t CodeOf(const std::vector<int>& packed) const {
    std::int64_t code = 0;
    for (int k = 0; k < static_cast<int>(packed.size()); ++k)
      code += packed[k] * strides[k];
    return code;
  }

  bool Admissible(std::int64_t code, const std::vector<int>& packed) {
    if (admissible[code] < 0) {
      Coalition c{Embed(n_players, support, packed)};
      admissible[code] = spec.IsAdmissible(c) ? 1 : 0;
    }
    return admissible[code] == 1;
  }

  double Value(std::int64_t code, const std::vector<int>& packed) {
    if (std::isnan(values[code])) {
      Coalition c{Embed(n_players, support, packed)};
      values[code] = CoalitionValue(spec, c, ctx);
      ++evals;
    }
    return values[code];
  }
};

}  // namespace

std::int64_t CoverTable::Code(const ResourceVector& sub) const {
  std::int64_t code = 0;
  for (int i = 0; i < n_players_; ++i) {
    bool in_support = false;
    for (int k = 0; k < static_cast<int>(support_.size()); ++k) {
      if (support_[k] == i) {
        if (sub[i] < 0 || sub[i] >= dims_[k])
          throw std::invalid_argument("sub-vector outside table domain");
        code += sub[i] * strides_[k];
        in_support = true;
        break;
      }
    }
    if (!in_support && sub[i] != 0)
      throw std::invalid_argument("sub-vector outside table support");
  }
  return code;
}

ResourceVector CoverTable::Decode(std::int64_t code) const {
  ResourceVector r(n_players_);
  for (int k = 0; k < static_cast<int>(support_.size()); ++k)
    r[support_[k]] = static_cast<int>(code / strides_[k] % dims_[k]);
  return r;
}

double CoverTable::Value(const ResourceVector& sub) const {
  return values_[Code(sub)];
}

std::optional<ResourceVector> CoverTable::BestFirst(
    const ResourceVector& sub) const {
  const std::int64_t b = best_first_[Code(sub)];
  if (b < 0) return std::nullopt;
  return Decode(b);
}

struct CoverBuilder {
  static CoverResult Build(const GameSpec& spec, const ResourceVector& w,
                           const StructureContext& ctx) {
    CheckQueryVector(spec, w);
    CoverTable table;
    table.n_players_ = spec.n_players;
    table.support_ = w.Support();
    const int s = static_cast<int>(table.support_.size());
    table.dims_.resize(s);
    table.strides_.resize(s);
    std::int64_t size = 1;
    for (int k = s - 1; k >= 0; --k) {
      table.dims_[k] = w[table.support_[k]] + 1;
      table.strides_[k] = size;
      size *= table.dims_[k];
    }
    table.values_.assign(size, 0.0);
    table.best_first_.assign(size, -1);

    ValueCache cache(spec, ctx, table.support_, table.strides_,
                     spec.n_players, size);

    // Mixed-radix codes order the lattice so that every proper sub-vector
    // of a state has a smaller code; a single ascending pass suffices.
    std::vector<int> state(s, 0);
    for (std::int64_t code = 0; code < size; ++code) {
      double best = 0.0;
      std::int64_t best_r = -1;
      if (code > 0) {
        std::vector<int> r(s, 0);
        while (NextSub(table.support_, state, r)) {
          const std::int64_t r_code = cache.CodeOf(r);
          if (!cache.Admissible(r_code, r)) continue;
          const double vr = cache.Value(r_code, r);
          if (vr <= 0.0) continue;  // zero-value coalitions never help
          const double candidate = vr + table.values_[code - r_code];
          if (candidate > best) {
            best = candidate;
            best_r = r_code;
          }
        }
      }
      table.values_[code] = best;
      table.best_first_[code] = best_r;
      for (int k = s - 1; k >= 0; --k) {
        if (state[k] + 1 < table.dims_[k]) {
          ++state[k];
          for (int j = k + 1; j < s; ++j) state[j] = 0;
          break;
        }
      }
    }
    table.v_evaluations_ = cache.evals;
    CoverResult res;
    res.value = table.values_[size - 1];
    res.table = std::move(table);
    return res;
  }
};

CoverResult SuperadditiveCover(const GameSpec& spec, const ResourceVector& w,
                               const StructureContext& ctx) {
  return CoverBuilder::Build(spec, w, ctx);
}

CoalitionStructure OptimalStructure(const GameSpec& spec,
                                    const ResourceVector& w,
                                    const CoverTable& table) {
  CheckQueryVector(spec, w);
  CoalitionStructure out;
  ResourceVector remaining = w;
  while (true) {
    auto first = table.BestFirst(remaining);
    if (!first) break;
    out.coalitions.emplace_back(*first);
    remaining = remaining.Minus(*first);
  }
  return out;
}

namespace {

double BruteRecurse(ValueCache& cache, const std::vector<int>& support,
                    std::vector<int>& remaining, std::int64_t max_code) {
  double best = 0.0;
  std::vector<int> r(support.size(), 0);
  while (NextSub(support, remaining, r)) {
    const std::int64_t r_code = cache.CodeOf(r);
    if (r_code > max_code) continue;  // multisets enumerated in one order only
    if (!cache.Admissible(r_code, r)) continue;
    const double vr = cache.Value(r_code, r);
    if (vr <= 0.0) continue;
    for (int k = 0; k < static_cast<int>(support.size()); ++k)
      remaining[k] -= r[k];
    const double rest = BruteRecurse(cache, support, remaining, r_code);
    for (int k = 0; k < static_cast<int>(support.size()); ++k)
      remaining[k] += r[k];
    best = std::max(best, vr + rest);
  }
  return best;
}

}  // namespace

double BruteForceCover(const GameSpec& spec, const ResourceVector& w,
                       const StructureContext& ctx, std::int64_t lattice_cap) {
  CheckQueryVector(spec, w);
  const auto support = w.Support();
  std::int64_t size = 1;
  std::vector<std::int64_t> strides(support.size());
  for (int k = static_cast<int>(support.size()) - 1; k >= 0; --k) {
    strides[k] = size;
    size *= w[support[k]] + 1;
    if (size > lattice_cap)
      throw std::invalid_argument("brute-force cover instance above cap");
  }
  ValueCache cache(spec, ctx, support, strides, spec.n_players, size);
  std::vector<int> remaining(support.size());
  for (int k = 0; k < static_cast<int>(support.size()); ++k)
    remaining[k] = w[support[k]];
  return BruteRecurse(cache, support, remaining, size - 1);
}

// ---------------------------------------------------------------------------
// Capped cover.
// ---------------------------------------------------------------------------

std::int64_t CappedCoverTable::Code(const ResourceVector& sub,
                                    const std::vector<int>& caps) const {
  const int s = static_cast<int>(support_.size());
  std::int64_t code = 0;
  for (int k = 0; k < s; ++k) {
    const int player = support_[k];
    if (sub[player] < 0 || sub[player] >= dims_[k])
      throw std::invalid_argument("sub-vector outside capped table domain");
    if (caps[player] < 0 || caps[player] >= dims_[s + k])
      throw std::invalid_argument("caps outside capped table domain");
    code += sub[player] * strides_[k];
    code += caps[player] * strides_[s + k];
  }
  for (int i = 0; i < n_players_; ++i) {
    bool in_support = false;
    for (int k = 0; k < s; ++k)
      if (support_[k] == i) in_support = true;
    if (!in_support && sub[i] != 0)
      throw std::invalid_argument("sub-vector outside capped table support");
  }
  return code;
}

double CappedCoverTable::Value(const ResourceVector& sub,
                               const std::vector<int>& caps) const {
  return values_[Code(sub, caps)];
}

CoalitionStructure CappedCoverTable::Structure(
    const ResourceVector& sub, const std::vector<int>& caps) const {
  CoalitionStructure out;
  ResourceVector remaining = sub;
  std::vector<int> slots = caps;
  const int s = static_cast<int>(support_.size());
  while (true) {
    const std::int64_t b = best_first_[Code(remaining, slots)];
    if (b < 0) break;
    ResourceVector r(n_players_);
    for (int k = 0; k < s; ++k)
      r[support_[k]] = static_cast<int>(b / r_strides_[k] % dims_[k]);
    out.coalitions.emplace_back(r);
    remaining = remaining.Minus(r);
    for (int k = 0; k < s; ++k)
      if (r[support_[k]] > 0) --slots[support_[k]];
  }
  return out;
}

struct CappedBuilder {
  static CappedCoverTable Build(const GameSpec& spec, const ResourceVector& w,
                                const std::vector<int>& caps,
                                const StructureContext& ctx) {
    CheckQueryVector(spec, w);
    CappedCoverTable table;
    table.n_players_ = spec.n_players;
    table.support_ = w.Support();
    const int s = static_cast<int>(table.support_.size());
    table.dims_.resize(2 * s);
    table.strides_.resize(2 * s);
    std::int64_t size = 1;
    for (int k = s - 1; k >= 0; --k) {
      table.dims_[s + k] = caps[table.support_[k]] + 1;
      table.strides_[s + k] = size;
      size *= table.dims_[s + k];
    }
    std::int64_t resource_size = 1;
    for (int k = s - 1; k >= 0; --k) {
      table.dims_[k] = w[table.support_[k]] + 1;
      table.strides_[k] = size * resource_size;
      resource_size *= table.dims_[k];
    }
    size *= resource_size;
    table.values_.assign(size, 0.0);
    table.best_first_.assign(size, -1);

    table.r_strides_.resize(s);
    std::int64_t r_size = 1;
    for (int k = s - 1; k >= 0; --k) {
      table.r_strides_[k] = r_size;
      r_size *= table.dims_[k];
    }
    ValueCache cache(spec, ctx, table.support_, table.r_strides_,
                     spec.n_players, r_size);

    // Resource part strictly decreases along every transition, so an
    // ascending pass over resource codes is a valid evaluation order.
    std::vector<int> state(s, 0);
    std::vector<int> cap_state(s, 0);
    for (std::int64_t rc = 0; rc < resource_size; ++rc) {
      // enumerate all cap assignments for this resource sub-vector
      std::fill(cap_state.begin(), cap_state.end(), 0);
      bool more_caps = true;
      while (more_caps) {
        std::int64_t code = 0;
        for (int k = 0; k < s; ++k) {
          code += state[k] * table.strides_[k];
          code += cap_state[k] * table.strides_[s + k];
        }
        double best = 0.0;
        std::int64_t best_r = -1;
        if (rc > 0) {
          std::vector<int> r(s, 0);
          while (NextSub(table.support_, state, r)) {
            bool slots_ok = true;
            for (int k = 0; k < s; ++k)
              if (r[k] > 0 && cap_state[k] < 1) slots_ok = false;
            if (!slots_ok) continue;
            const std::int64_t r_code = cache.CodeOf(r);
            if (!cache.Admissible(r_code, r)) continue;
            const double vr = cache.Value(r_code, r);
            if (vr <= 0.0) continue;
            std::int64_t rest = 0;
            for (int k = 0; k < s; ++k) {
              rest += (state[k] - r[k]) * table.strides_[k];
              rest += (cap_state[k] - (r[k] > 0 ? 1 : 0)) * table.strides_[s + k];
            }
            const double candidate = vr + table.values_[rest];
            if (candidate > best) {
              best = candidate;
              best_r = r_code;
            }
          }
        }
        table.values_[code] = best;
        table.best_first_[code] = best_r;

        more_caps = false;
        for (int k = s - 1; k >= 0; --k) {
          if (cap_state[k] + 1 < table.dims_[s + k]) {
            ++cap_state[k];
            for (int j = k + 1; j < s; ++j) cap_state[j] = 0;
            more_caps = true;
            break;
          }
        }
      }
      // advance resource odometer
      for (int k = s - 1; k >= 0; --k) {
        if (state[k] + 1 < table.dims_[k]) {
          ++state[k];
          for (int j = k + 1; j < s; ++j) state[j] = 0;
          break;
        }
      }
    }
    table.v_evaluations_ = cache.evals;
    return table;
  }
};

CappedCoverTable BuildCappedCover(const GameSpec& spec, const ResourceVector& w,
                                  const std::vector<int>& caps,
                                  const StructureContext& ctx) {
  return CappedBuilder::Build(spec, w, caps, ctx);
}

}  // namespace ocf
