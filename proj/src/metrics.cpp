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

#include "ocf/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ocf {

std::string FormatDouble(double v) {
  char buf[64];
  // Integral values print plainly; everything else uses the shortest
  // representation that parses back exactly.
  if (v == static_cast<double>(static_cast<long long>(v)) &&
      std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    double parsed = 0.0;
    std::sscanf(buf, "%lf", &parsed);
    if (parsed == v) return buf;
  }
  return "0";
}

std::string CsvHeader() {
  return "scenario,seed,strategy,metric,welfare,iterations,wall_ms";
}

std::string ToCsvLine(const MetricRow& row) {
  std::ostringstream os;
  os << row.scenario << ',' << row.seed << ',' << row.strategy << ','
     << FormatDouble(row.metric) << ',' << FormatDouble(row.welfare) << ','
     << row.iterations << ',' << row.wall_ms;
  return os.str();
}

void WriteCsv(const std::string& path, const std::vector<MetricRow>& rows) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp);
    out << CsvHeader() << '\n';
    for (const auto& row : rows) out << ToCsvLine(row) << '\n';
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename output into place: " + path);
}

}  // namespace ocf
