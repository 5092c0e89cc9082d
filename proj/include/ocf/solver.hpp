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

#ifndef OCF_SOLVER_HPP
#define OCF_SOLVER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ocf/core.hpp"
#include "ocf/cover.hpp"

namespace ocf {

enum class ImprovementRule { kFirstImprovement, kBestImprovement };
enum class TerminationStatus { kStable, kIterationCap };

struct SolverConfig {
  std::int64_t max_iterations = 100000;
  ImprovementRule improvement = ImprovementRule::kFirstImprovement;
  bool deterministic_order = true;
};

struct ConvergenceReport {
  std::int64_t iterations = 0;
  // Initial welfare followed by the welfare after each accepted deviation.
  std::vector<double> welfare_trace;
  TerminationStatus terminated = TerminationStatus::kStable;
  std::int64_t candidates_examined = 0;
  // Candidates that passed the profitability test but did not improve the
  // re-evaluated welfare. Always zero for context-free value functions;
  // nonzero only in externality scenarios.
  std::int64_t rejected_unrealized = 0;
};

// Lazily yields every bounded deviation of a K-coalition game, in
// deterministic lexicographic order: deviator sets by size then
// lexicographically, withdrawal patterns as a mixed-radix odometer over the
// (coalition, deviator) slots. Each deviation carries the optimal
// K-respecting replacement structure from the capped cover DP.
class DeviationEnumerator {
 public:
  DeviationEnumerator(const GameSpec& spec, const Outcome& outcome,
                      const StructureContext& ctx = {});
  ~DeviationEnumerator();
  DeviationEnumerator(DeviationEnumerator&&) noexcept;

  bool Next(Deviation& out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Same discipline for K-task transfers: per deviator one
// (source, destination, amount) move, multi-deviator sets as the cartesian
// product applied atomically.
class TransferEnumerator {
 public:
  TransferEnumerator(const GameSpec& spec, const Outcome& outcome);
  ~TransferEnumerator();
  TransferEnumerator(TransferEnumerator&&) noexcept;

  bool Next(Transfer& out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::optional<std::pair<Deviation, double>> FindProfitableDeviation(
    const GameSpec& spec, const Outcome& outcome, const SolverConfig& cfg = {},
    const StructureContext& ctx = {});
std::optional<std::pair<Transfer, double>> FindProfitableTransfer(
    const GameSpec& spec, const Outcome& outcome, const SolverConfig& cfg = {},
    const StructureContext& ctx = {});

// Iterates profitable deviations until none is found or the iteration cap
// is hit. A candidate is accepted only if the re-evaluated welfare of the
// applied outcome strictly improves, which is automatic for context-free
// value functions and guards the dynamics in externality scenarios.
std::pair<Outcome, ConvergenceReport> SolveKCoalition(
    const GameSpec& spec, const Outcome& initial, const SolverConfig& cfg = {});
std::pair<Outcome, ConvergenceReport> SolveKTask(const GameSpec& spec,
                                                 const Outcome& initial,
                                                 const SolverConfig& cfg = {});

struct CertifyResult {
  bool stable = false;
  // Description of the first profitable deviation when not stable.
  std::string violation;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Exhaustive bounded-deviation check with brute-force replacement search,
// independent of the DP path. Test/validation oracle for small instances;
// refuses instances whose search space exceeds `work_cap`.
CertifyResult CertifyOStable(const GameSpec& spec, const Outcome& outcome,
                             std::int64_t work_cap = 1'000'000);

// Rebuilds every payoff row so it sums to the coalition's value under the
// given context. No-op for coalitions already consistent. Used after
// accepted deviations in externality scenarios.
void RebalanceAllocations(const GameSpec& spec, Outcome& outcome,
                          const StructureContext& ctx);

}  // namespace ocf

#endif  // OCF_SOLVER_HPP
