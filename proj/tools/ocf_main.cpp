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

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ocf/baselines.hpp"
#include "ocf/core.hpp"
#include "ocf/hetnet.hpp"
#include "ocf/metrics.hpp"
#include "ocf/sensing.hpp"
#include "ocf/serialize.hpp"
#include "ocf/solver.hpp"
#include "ocf/valuefns.hpp"

namespace {

using namespace ocf;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitInternalError = 3;

std::string PayoffsToString(const std::vector<double>& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ", ";
    os << FormatDouble(p[i]);
  }
  os << ')';
  return os.str();
}

std::string StructureToString(const CoalitionStructure& s) {
  std::ostringstream os;
  os << '{';
  for (int i = 0; i < s.size(); ++i) {
    if (i) os << ", ";
    if (s.coalitions[i].task_id) os << "task" << *s.coalitions[i].task_id << ':';
    os << ToString(s.coalitions[i].resources);
  }
  os << '}';
  return os.str();
}

std::vector<double> AllPayoffs(const GameSpec& spec, const Outcome& outcome) {
  std::vector<double> p(spec.n_players);
  for (int i = 0; i < spec.n_players; ++i)
    p[i] = PlayerPayoff(spec, outcome, i);
  return p;
}

bool Near(double a, double b) { return std::fabs(a - b) <= 1e-9; }

// The best disjoint partition of the worked example, viewed as an OCF
// outcome: {A,B} pool their full time on one big project, C does a small
// one alone.
CertifyInstance DisjointInstance(DivisionRule division, ArbitrationKind arb) {
  CertifyInstance inst;
  inst.game.spec = SoftwareCompanySpec(division, arb);
  inst.game.value_kind = "software_company";
  CoalitionStructure s;
  s.coalitions.emplace_back(ResourceVector{{8, 8, 0}});
  s.coalitions.emplace_back(ResourceVector{{0, 0, 8}});
  inst.outcome = MakeOutcome(inst.game.spec, std::move(s));
  return inst;
}

// The overlapping optimum: two big projects sharing B's time.
CertifyInstance OverlapInstance(DivisionRule division, ArbitrationKind arb) {
  CertifyInstance inst;
  inst.game.spec = SoftwareCompanySpec(division, arb);
  inst.game.value_kind = "software_company";
  CoalitionStructure s;
  s.coalitions.emplace_back(ResourceVector{{8, 4, 0}});
  s.coalitions.emplace_back(ResourceVector{{0, 4, 8}});
  inst.outcome = MakeOutcome(inst.game.spec, std::move(s));
  return inst;
}

struct CommonFlags {
  std::string division = "proportional";
  std::string arbitration = "optimistic";
  std::string improvement = "first";
};

DivisionRule ParseDivision(const std::string& s) {
  if (s == "proportional") return DivisionRule::kProportional;
  if (s == "equal") return DivisionRule::kEqual;
  throw std::invalid_argument("unknown division rule: " + s);
}

ArbitrationKind ParseArbitration(const std::string& s) {
  if (s == "conservative") return ArbitrationKind::kConservative;
  if (s == "refined") return ArbitrationKind::kRefined;
  if (s == "optimistic") return ArbitrationKind::kOptimistic;
  throw std::invalid_argument("unknown arbitration kind: " + s);
}

ImprovementRule ParseImprovement(const std::string& s) {
  if (s == "first") return ImprovementRule::kFirstImprovement;
  if (s == "best") return ImprovementRule::kBestImprovement;
  throw std::invalid_argument("unknown improvement rule: " + s);
}

int RunExample(const CommonFlags& flags, const std::string& emit_dir) {
  const DivisionRule division = ParseDivision(flags.division);
  const ArbitrationKind arbitration = ParseArbitration(flags.arbitration);
  GameSpec spec = SoftwareCompanySpec(division, arbitration);

  PartitionOutcome cf = SolveNonOverlapping(spec);
  const auto cf_payoffs = AllPayoffs(spec, cf.outcome);
  std::cout << "CF baseline: partition ";
  std::cout << '{';
  for (std::size_t b = 0; b < cf.blocks.size(); ++b) {
    if (b) std::cout << ", ";
    std::cout << '{';
    for (std::size_t k = 0; k < cf.blocks[b].size(); ++k) {
      if (k) std::cout << ',';
      std::cout << static_cast<char>('A' + cf.blocks[b][k]);
    }
    std::cout << '}';
  }
  std::cout << "} payoffs " << PayoffsToString(cf_payoffs) << " welfare "
            << FormatDouble(cf.welfare) << "\n";

  SolverConfig solver;
  solver.improvement = ParseImprovement(flags.improvement);
  Outcome idle = MakeOutcome(spec, CoalitionStructure{});
  auto [final_outcome, report] = SolveKCoalition(spec, idle, solver);
  const auto ocf_payoffs = AllPayoffs(spec, final_outcome);
  const double ocf_welfare = report.welfare_trace.back();
  std::cout << "OCF solve: structure " << StructureToString(final_outcome.structure)
            << " payoffs " << PayoffsToString(ocf_payoffs) << " welfare "
            << FormatDouble(ocf_welfare) << "\n";
  std::cout << "iterations " << report.iterations << " welfare trace";
  for (double w : report.welfare_trace) std::cout << ' ' << FormatDouble(w);
  std::cout << "\n";

  if (!emit_dir.empty()) {
    SaveInstance(emit_dir + "/disjoint.json", DisjointInstance(division, arbitration));
    SaveInstance(emit_dir + "/overlap.json", OverlapInstance(division, arbitration));
    std::cout << "instances written to " << emit_dir << "\n";
  }

  bool ok = Near(cf.welfare, 3400.0) && Near(ocf_welfare, 4800.0);
  if (division == DivisionRule::kProportional) {
    ok = ok && Near(cf_payoffs[0], 1200.0) && Near(cf_payoffs[1], 1200.0) &&
         Near(cf_payoffs[2], 1000.0) && Near(ocf_payoffs[0], 1600.0) &&
         Near(ocf_payoffs[1], 1600.0) && Near(ocf_payoffs[2], 1600.0);
  }
  std::cout << (ok ? "example check passed" : "example check FAILED") << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int RunCertify(const std::string& path, const std::string& fixture,
               const CommonFlags& flags) {
  CertifyInstance inst;
  try {
    if (!fixture.empty()) {
      const DivisionRule division = ParseDivision(flags.division);
      const ArbitrationKind arbitration = ParseArbitration(flags.arbitration);
      if (fixture == "disjoint") inst = DisjointInstance(division, arbitration);
      else if (fixture == "overlap") inst = OverlapInstance(division, arbitration);
      else throw std::invalid_argument("unknown fixture: " + fixture);
    } else if (!path.empty()) {
      inst = LoadInstance(path);
    } else {
      throw std::invalid_argument("certify needs a file or --fixture");
    }
  } catch (const std::exception& e) {
    std::cerr << "certify: bad input: " << e.what() << "\n";
    return kExitConfigError;
  }

  const CertifyResult res = CertifyOStable(inst.game.spec, inst.outcome);
  if (res.stable) {
    std::cout << "o-stable: no profitable deviation in the bounded class\n";
    return kExitOk;
  }
  std::cout << "NOT stable: " << res.violation << "\n";
  return kExitCheckFailed;
}

std::vector<std::uint64_t> ResolveSeeds(const std::string& seeds_flag,
                                        const nlohmann::json& cfg_json) {
  std::vector<std::uint64_t> seeds;
  if (!seeds_flag.empty()) {
    std::stringstream ss(seeds_flag);
    std::string item;
    while (std::getline(ss, item, ',')) seeds.push_back(std::stoull(item));
  } else if (cfg_json.contains("seeds")) {
    seeds = cfg_json.at("seeds").get<std::vector<std::uint64_t>>();
  } else {
    seeds = {1};
  }
  if (seeds.empty()) throw std::invalid_argument("seed list is empty");
  return seeds;
}

int RunScenario(const std::string& scenario, const std::string& config_path,
                const std::string& out_path, const std::string& seeds_flag,
                const CommonFlags& flags, bool timing) {
  nlohmann::json cfg_json;
  std::vector<std::uint64_t> seeds;
  std::optional<hetnet::HetNetConfig> hetnet_cfg;
  std::optional<sensing::SensingConfig> sensing_cfg;
  SolverConfig solver;
  try {
    cfg_json = LoadJsonFile(config_path);
    solver = SolverConfigFromJson(cfg_json);
    solver.improvement = ParseImprovement(flags.improvement);
    seeds = ResolveSeeds(seeds_flag, cfg_json);
    if (scenario == "hetnet") hetnet_cfg = HetNetConfigFromJson(cfg_json);
    else sensing_cfg = SensingConfigFromJson(cfg_json);
  } catch (const std::exception& e) {
    std::cerr << scenario << ": config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    std::vector<MetricRow> rows;
    for (std::uint64_t seed : seeds) {
      const auto start = std::chrono::steady_clock::now();
      ScenarioMetrics metrics =
          hetnet_cfg ? hetnet::RunHetNet(*hetnet_cfg, solver, seed)
                     : sensing::RunSensing(*sensing_cfg, solver, seed);
      const auto stop = std::chrono::steady_clock::now();
      const std::int64_t wall_ms =
          timing ? std::chrono::duration_cast<std::chrono::milliseconds>(
                       stop - start)
                       .count()
                 : 0;
      for (const auto& s : metrics.strategies) {
        MetricRow row;
        row.scenario = scenario;
        row.seed = seed;
        row.strategy = s.strategy;
        row.metric = s.metric;
        row.welfare = s.welfare;
        row.iterations = s.iterations;
        row.wall_ms = wall_ms;
        rows.push_back(std::move(row));
      }
    }
    WriteCsv(out_path, rows);
    std::cout << scenario << ": wrote " << rows.size() << " rows to "
              << out_path << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << scenario << ": internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ocf-games: discrete overlapping coalition formation solver"};
  app.require_subcommand(1);

  CommonFlags flags;
  bool timing = false;
  app.add_flag("--timing", timing,
               "record wall time in CSV output (off keeps runs byte-identical)");

  auto* example = app.add_subcommand(
      "example", "run the three-developer worked example and check payoffs");
  std::string emit_dir;
  example->add_option("--division", flags.division, "proportional|equal");
  example->add_option("--arbitration", flags.arbitration,
                      "conservative|refined|optimistic");
  example->add_option("--improvement", flags.improvement, "first|best");
  example->add_option("--emit-instances", emit_dir,
                      "write disjoint.json/overlap.json instances here");

  auto* hetnet_cmd =
      app.add_subcommand("hetnet", "run the small-cell RB-sharing scenario");
  std::string config_path, out_path = "hetnet.csv", seeds_flag;
  hetnet_cmd->add_option("--config", config_path, "JSON config file")
      ->required();
  hetnet_cmd->add_option("--out", out_path, "CSV output path");
  hetnet_cmd->add_option("--seeds", seeds_flag, "comma-separated seed list");
  hetnet_cmd->add_option("--improvement", flags.improvement, "first|best");

  auto* sensing_cmd =
      app.add_subcommand("sensing", "run the cooperative sensing scenario");
  std::string s_config_path, s_out_path = "sensing.csv", s_seeds_flag;
  sensing_cmd->add_option("--config", s_config_path, "JSON config file")
      ->required();
  sensing_cmd->add_option("--out", s_out_path, "CSV output path");
  sensing_cmd->add_option("--seeds", s_seeds_flag, "comma-separated seed list");
  sensing_cmd->add_option("--improvement", flags.improvement, "first|best");

  auto* certify = app.add_subcommand(
      "certify", "exhaustively check an instance file for o-stability");
  std::string instance_path, fixture;
  certify->add_option("file", instance_path, "instance JSON file");
  certify->add_option("--fixture", fixture, "disjoint|overlap built-in instance");
  certify->add_option("--division", flags.division, "proportional|equal");
  certify->add_option("--arbitration", flags.arbitration,
                      "conservative|refined|optimistic");

  CLI11_PARSE(app, argc, argv);

  try {
    if (example->parsed()) return RunExample(flags, emit_dir);
    if (hetnet_cmd->parsed())
      return RunScenario("hetnet", config_path, out_path, seeds_flag, flags,
                         timing);
    if (sensing_cmd->parsed())
      return RunScenario("sensing", s_config_path, s_out_path, s_seeds_flag,
                         flags, timing);
    if (certify->parsed()) return RunCertify(instance_path, fixture, flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitConfigError;
}
