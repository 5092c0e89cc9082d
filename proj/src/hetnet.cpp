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

#include "ocf/hetnet.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ocf/baselines.hpp"
#include "ocf/rng.hpp"

namespace ocf::hetnet {

void HetNetConfig::Validate() const {
  if (area_m <= 0 || n_sbs < 1 || interference_radius_m <= 0 || rb_pool < 1 ||
      user_distance_m <= 0 || pathloss_exponent <= 0)
    throw std::invalid_argument("hetnet config fields must be positive");
  if (rb_availability_prob <= 0 || rb_availability_prob > 1)
    throw std::invalid_argument("rb_availability_prob must be in (0,1]");
  if (traffic_load <= 0 || traffic_load > 1)
    throw std::invalid_argument("traffic_load must be in (0,1]");
  if (k_coalitions < 1 || s_max < 1)
    throw std::invalid_argument("k_coalitions and s_max must be >= 1");
}

double HetNetTopology::Distance(int a, int b) const {
  const double dx = nodes[a].x - nodes[b].x;
  const double dy = nodes[a].y - nodes[b].y;
  return std::sqrt(dx * dx + dy * dy);
}

int HetNetTopology::EdgeCount() const {
  int count = 0;
  const int n = static_cast<int>(nodes.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (Adjacent(a, b)) ++count;
  return count;
}

HetNetTopology GenerateTopology(const HetNetConfig& cfg, std::uint64_t seed) {
  cfg.Validate();
  HetNetTopology topo;
  topo.cfg = cfg;
  Rng rng(seed);
  topo.nodes.resize(cfg.n_sbs);
  // Draw order (part of the golden-file contract): per node, position x
  // then y, then one Bernoulli draw per RB index.
  for (auto& node : topo.nodes) {
    node.x = rng.NextDouble() * cfg.area_m;
    node.y = rng.NextDouble() * cfg.area_m;
    for (int rb = 0; rb < cfg.rb_pool; ++rb)
      if (rng.NextBool(cfg.rb_availability_prob)) node.available_rbs.push_back(rb);
    if (node.available_rbs.empty()) node.available_rbs.push_back(0);
    const int avail = static_cast<int>(node.available_rbs.size());
    int demand = static_cast<int>(std::lround(cfg.traffic_load * avail));
    node.demand = std::min(std::max(demand, 1), avail);
  }
  topo.adjacent.assign(cfg.n_sbs, std::vector<char>(cfg.n_sbs, 0));
  for (int a = 0; a < cfg.n_sbs; ++a)
    for (int b = 0; b < cfg.n_sbs; ++b)
      topo.adjacent[a][b] =
          a != b && topo.Distance(a, b) < cfg.interference_radius_m ? 1 : 0;
  return topo;
}

std::vector<std::pair<int, int>> AssignRbs(const HetNetTopology& topo,
                                           const Coalition& c) {
  const auto members = c.resources.Support();
  // Pool the members' lowest-index grants; duplicates collapse, since an RB
  // may serve only one SBS inside the coalition.
  std::map<int, bool> pool;
  for (int b : members) {
    const auto& avail = topo.nodes[b].available_rbs;
    const int take = c.resources[b];
    if (take > static_cast<int>(avail.size()))
      throw std::invalid_argument("contribution exceeds RB availability");
    for (int k = 0; k < take; ++k) pool[avail[k]] = true;
  }
  std::vector<int> counts(members.size(), 0);
  std::vector<std::pair<int, int>> assigned;
  std::size_t cursor = 0;
  for (const auto& [rb, unused] : pool) {
    std::size_t probed = 0;
    while (probed < members.size() &&
           counts[cursor % members.size()] >=
               topo.nodes[members[cursor % members.size()]].demand) {
      ++cursor;
      ++probed;
    }
    if (probed == members.size()) break;  // everyone is at demand
    const std::size_t slot = cursor % members.size();
    assigned.emplace_back(members[slot], rb);
    ++counts[slot];
    ++cursor;
  }
  return assigned;
}

namespace {

// Usage maps and coalition values per context snapshot, keyed by the
// snapshot's content. A handful of snapshots stay live at a time (current
// structure during search, candidate structures during apply).
struct SnapshotCache {
  struct Entry {
    std::uint64_t hash = 0;
    std::vector<std::vector<char>> usage;             // [sbs][rb]
    std::map<std::vector<int>, double> value_memo;
  };
  std::vector<Entry> entries;  // most recent first

  static std::uint64_t HashStructure(const CoalitionStructure& s) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ULL;
    };
    mix(static_cast<std::uint64_t>(s.size()));
    for (const auto& c : s.coalitions)
      for (int u : c.resources.units) mix(static_cast<std::uint64_t>(u) + 0x9e);
    return h;
  }
};

double SinrRate(const HetNetTopology& topo, int sbs, int rb,
                const std::vector<int>& members,
                const std::vector<std::vector<char>>& usage) {
  const auto& cfg = topo.cfg;
  const double snr_lin = std::pow(10.0, cfg.snr_ref_db / 10.0);
  double interference = 0.0;
  for (int other = 0; other < static_cast<int>(topo.nodes.size()); ++other) {
    if (!topo.Adjacent(sbs, other)) continue;
    bool is_member = false;
    for (int m : members)
      if (m == other) is_member = true;
    if (is_member) continue;
    if (usage.empty() || !usage[other][rb]) continue;
    const double d = topo.Distance(sbs, other);
    interference +=
        snr_lin * std::pow(cfg.user_distance_m / d, cfg.pathloss_exponent);
  }
  return std::log2(1.0 + snr_lin / (1.0 + interference));
}

double ValueAgainstUsage(const HetNetTopology& topo, const Coalition& c,
                         const std::vector<std::vector<char>>& usage) {
  const auto members = c.resources.Support();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!topo.Adjacent(members[i], members[j]))
        throw std::invalid_argument(
            "coalition members must be mutually interfering neighbors");
  double total = 0.0;
  for (const auto& [sbs, rb] : AssignRbs(topo, c))
    total += SinrRate(topo, sbs, rb, members, usage);
  return total;
}

}  // namespace

double HetNetValue(const HetNetTopology& topo, const Coalition& c,
                   const StructureContext& ctx) {
  std::vector<std::vector<char>> usage;
  if (ctx.structure != nullptr) {
    usage.assign(topo.nodes.size(),
                 std::vector<char>(topo.cfg.rb_pool, 0));
    for (const auto& other : ctx.structure->coalitions)
      for (const auto& [sbs, rb] : AssignRbs(topo, other)) usage[sbs][rb] = 1;
  }
  return ValueAgainstUsage(topo, c, usage);
}

GameSpec MakeHetNetGame(std::shared_ptr<const HetNetTopology> topo) {
  GameSpec spec;
  spec.n_players = static_cast<int>(topo->nodes.size());
  spec.budgets.reserve(spec.n_players);
  for (const auto& node : topo->nodes) spec.budgets.push_back(node.demand);
  spec.max_coalitions_per_player = topo->cfg.k_coalitions;
  spec.max_deviation_size = topo->cfg.s_max;
  spec.mode = GameMode::kCoalitionGame;
  spec.division = DivisionRule::kProportional;
  spec.arbitration = ArbitrationKind::kOptimistic;

  spec.admissible = [topo](const Coalition& c) {
    const auto members = c.resources.Support();
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        if (!topo->Adjacent(members[i], members[j])) return false;
    return true;
  };

  auto cache = std::make_shared<SnapshotCache>();
  spec.value_fn = [topo, cache](const Coalition& c,
                                const StructureContext& ctx) -> double {
    if (ctx.structure == nullptr)
      return ValueAgainstUsage(*topo, c, {});
    const std::uint64_t h = SnapshotCache::HashStructure(*ctx.structure);
    SnapshotCache::Entry* entry = nullptr;
    for (auto& e : cache->entries)
      if (e.hash == h) entry = &e;
    if (entry == nullptr) {
      SnapshotCache::Entry fresh;
      fresh.hash = h;
      fresh.usage.assign(topo->nodes.size(),
                         std::vector<char>(topo->cfg.rb_pool, 0));
      for (const auto& other : ctx.structure->coalitions)
        for (const auto& [sbs, rb] : AssignRbs(*topo, other))
          fresh.usage[sbs][rb] = 1;
      cache->entries.insert(cache->entries.begin(), std::move(fresh));
      if (cache->entries.size() > 4) cache->entries.pop_back();
      entry = &cache->entries.front();
    }
    auto it = entry->value_memo.find(c.resources.units);
    if (it != entry->value_memo.end()) return it->second;
    const double v = ValueAgainstUsage(*topo, c, entry->usage);
    entry->value_memo.emplace(c.resources.units, v);
    return v;
  };
  return spec;
}

std::string TopologyToText(const HetNetTopology& topo) {
  std::ostringstream os;
  os << "hetnet-topology v1\n";
  os << "n_sbs " << topo.nodes.size() << "\n";
  for (std::size_t i = 0; i < topo.nodes.size(); ++i) {
    const auto& n = topo.nodes[i];
    os << "node " << i << " x " << FormatDouble(n.x) << " y "
       << FormatDouble(n.y) << " demand " << n.demand << " rbs";
    for (int rb : n.available_rbs) os << ' ' << rb;
    os << "\n";
  }
  os << "edges " << topo.EdgeCount() << "\n";
  for (std::size_t a = 0; a < topo.nodes.size(); ++a)
    for (std::size_t b = a + 1; b < topo.nodes.size(); ++b)
      if (topo.Adjacent(static_cast<int>(a), static_cast<int>(b)))
        os << "edge " << a << ' ' << b << "\n";
  return os.str();
}

ScenarioMetrics RunHetNet(const HetNetConfig& cfg, const SolverConfig& solver,
                          std::uint64_t seed) {
  cfg.Validate();
  auto topo = std::make_shared<const HetNetTopology>(GenerateTopology(cfg, seed));
  GameSpec game = MakeHetNetGame(topo);
  game.Validate();

  ScenarioMetrics out;

  Outcome local = SolveLocal(game);
  double local_welfare;
  {
    const StructureContext ctx{&local.structure};
    local_welfare = SocialWelfare(game, local.structure, ctx);
  }
  out.strategies.push_back({"local", local_welfare, local_welfare, 0});

  PartitionOutcome nonov = SolveNonOverlapping(
      game, BaselineConfig{cfg.merge_block_cap, {}});
  out.strategies.push_back(
      {"nonoverlapping", nonov.welfare, nonov.welfare, 0});

  auto [ocf_outcome, report] = SolveKCoalition(game, nonov.outcome, solver);
  const double ocf_welfare = report.welfare_trace.back();
  out.strategies.push_back({"ocf", ocf_welfare, ocf_welfare, report.iterations});
  out.ocf_report = std::move(report);
  return out;
}

}  // namespace ocf::hetnet
