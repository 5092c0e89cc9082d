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

#ifndef OCF_HETNET_HPP
#define OCF_HETNET_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ocf/core.hpp"
#include "ocf/metrics.hpp"
#include "ocf/solver.hpp"

namespace ocf::hetnet {

// Small-cell downlink RB-sharing scenario. SBSs pool part of their
// MBS-granted resource blocks inside coalitions of mutually interfering
// neighbors; pooled RBs are distributed exclusively within the coalition,
// and residual interference from SBSs outside the coalition discounts the
// Shannon rate of every assignment.
struct HetNetConfig {
  double area_m = 400.0;
  int n_sbs = 20;
  double interference_radius_m = 100.0;
  int rb_pool = 25;
  double rb_availability_prob = 0.8;
  double traffic_load = 0.5;  // mean demanded / available ratio
  double user_distance_m = 20.0;
  double pathloss_exponent = 3.0;
  double snr_ref_db = 20.0;
  int k_coalitions = 3;
  int s_max = 2;
  int merge_block_cap = 4;  // non-overlapping baseline block size cap

  void Validate() const;
};

struct SbsNode {
  double x = 0.0;
  double y = 0.0;
  std::vector<int> available_rbs;  // ascending RB indices granted by the MBS
  int demand = 0;                  // RBs its users require this slot
};

struct HetNetTopology {
  HetNetConfig cfg;
  std::vector<SbsNode> nodes;
  std::vector<std::vector<char>> adjacent;  // within interference radius

  bool Adjacent(int a, int b) const { return adjacent[a][b] != 0; }
  double Distance(int a, int b) const;
  int EdgeCount() const;
};

// Uniform positions, Bernoulli RB grants, demand = round(load * available)
// clamped to [1, available]. Deterministic per seed. An SBS that draws no
// grant at all receives RB 0 so every player holds at least one resource.
HetNetTopology GenerateTopology(const HetNetConfig& cfg, std::uint64_t seed);

// Concrete (sbs, rb) assignments of one coalition: members contribute their
// lowest-index available RBs, the pooled distinct RBs go round-robin to
// members in ascending SBS index, capped by each member's demand.
std::vector<std::pair<int, int>> AssignRbs(const HetNetTopology& topo,
                                           const Coalition& c);

// Aggregate downlink rate of the coalition, bits/s/Hz summed over its RB
// assignments, with interference read from the context snapshot. Members
// must form a clique in the interference graph.
double HetNetValue(const HetNetTopology& topo, const Coalition& c,
                   const StructureContext& ctx);

// K-coalition game over the topology: players are SBSs, budgets their
// demands, coalition supports restricted to cliques.
GameSpec MakeHetNetGame(std::shared_ptr<const HetNetTopology> topo);

// Canonical text form of a topology; golden-file contract.
std::string TopologyToText(const HetNetTopology& topo);

ScenarioMetrics RunHetNet(const HetNetConfig& cfg, const SolverConfig& solver,
                          std::uint64_t seed);

}  // namespace ocf::hetnet

#endif  // OCF_HETNET_HPP
