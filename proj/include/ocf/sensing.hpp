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

#ifndef OCF_SENSING_HPP
#define OCF_SENSING_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ocf/core.hpp"
#include "ocf/metrics.hpp"
#include "ocf/solver.hpp"

namespace ocf::sensing {

// Distributed cooperative spectrum sensing: every SU is a sensing task;
// other SUs spend report-channel bits to send it their local decisions,
// and the head fuses them by majority vote. A K-task OCF game with one
// task per SU.
struct SensingConfig {
  int n_su = 20;
  double prior_h1 = 0.5;
  double pd_min = 0.5;
  double pd_max = 0.9;
  double pf_min = 0.05;
  double pf_max = 0.2;
  int report_budget_bits = 3;
  int report_cost_bits = 1;
  int s_max = 1;

  void Validate() const;
};

struct SuNode {
  double p_d = 0.0;  // detection probability
  double p_f = 0.0;  // false-alarm probability
  int budget_bits = 0;
};

struct SensingNetwork {
  SensingConfig cfg;
  std::vector<SuNode> nodes;
};

// Per-SU detector draws, i.i.d. uniform in the configured ranges;
// deterministic per seed.
SensingNetwork GenerateSensingNetwork(const SensingConfig& cfg,
                                      std::uint64_t seed);

// Exact probability that majority voting over {head} + reporters decides
// incorrectly, ties resolved as "present". Poisson-binomial dynamic program
// over the vote count; no sampling.
double FusionError(const SuNode& head, const std::vector<SuNode>& reporters,
                   double prior_h1);

// 1 - FusionError of the task's head with every SU whose contribution
// covers the report cost. Extra bits toward the same task add nothing.
double SensingTaskValue(const SensingNetwork& net, const Coalition& c);

// K-task game: players are SUs, budgets their signaling bits, task t owned
// by SU t (who keeps the task's local-sensing baseline value).
GameSpec MakeSensingGame(std::shared_ptr<const SensingNetwork> net);

// Canonical text form of the drawn detector parameters; golden-file
// contract.
std::string NetworkToText(const SensingNetwork& net);

ScenarioMetrics RunSensing(const SensingConfig& cfg, const SolverConfig& solver,
                           std::uint64_t seed);

}  // namespace ocf::sensing

#endif  // OCF_SENSING_HPP
