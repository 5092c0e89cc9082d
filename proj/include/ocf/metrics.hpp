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

#ifndef OCF_METRICS_HPP
#define OCF_METRICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ocf/solver.hpp"

namespace ocf {

struct StrategyResult {
  std::string strategy;  // "local", "nonoverlapping", "ocf"
  double metric = 0.0;   // total throughput or mean incorrect probability
  double welfare = 0.0;
  std::int64_t iterations = 0;
};

struct ScenarioMetrics {
  std::vector<StrategyResult> strategies;
  ConvergenceReport ocf_report;
};

struct MetricRow {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string strategy;
  double metric = 0.0;
  double welfare = 0.0;
  std::int64_t iterations = 0;
  std::int64_t wall_ms = 0;
};

// Shortest decimal form that round-trips to the same double.
std::string FormatDouble(double v);

std::string CsvHeader();
std::string ToCsvLine(const MetricRow& row);

// Writes header plus rows atomically (temp file + rename): readers never
// observe a partial CSV.
void WriteCsv(const std::string& path, const std::vector<MetricRow>& rows);

}  // namespace ocf

#endif  // OCF_METRICS_HPP
