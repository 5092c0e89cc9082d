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

#include "ocf/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace ocf {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "ocfgames-instance/1";

std::string DivisionName(DivisionRule d) {
  return d == DivisionRule::kProportional ? "proportional" : "equal";
}

DivisionRule DivisionFromName(const std::string& s) {
  if (s == "proportional") return DivisionRule::kProportional;
  if (s == "equal") return DivisionRule::kEqual;
  throw std::invalid_argument("unknown division rule: " + s);
}

std::string ArbitrationName(ArbitrationKind a) {
  switch (a) {
    case ArbitrationKind::kConservative: return "conservative";
    case ArbitrationKind::kRefined: return "refined";
    case ArbitrationKind::kOptimistic: return "optimistic";
  }
  return "optimistic";
}

ArbitrationKind ArbitrationFromName(const std::string& s) {
  if (s == "conservative") return ArbitrationKind::kConservative;
  if (s == "refined") return ArbitrationKind::kRefined;
  if (s == "optimistic") return ArbitrationKind::kOptimistic;
  throw std::invalid_argument("unknown arbitration kind: " + s);
}

ValueFn ValueFnByKind(const std::string& kind,
                      const std::shared_ptr<const TableValue>& table) {
  if (kind == "software_company") return SoftwareCompanyValue();
  if (kind == "zero") return ZeroValue();
  if (kind == "quadratic") return QuadraticValue();
  if (kind == "linear") return LinearValue();
  if (kind == "table") {
    if (!table) throw std::invalid_argument("table value kind without table");
    return MakeTableValueFn(table);
  }
  throw std::invalid_argument("unknown value kind: " + kind);
}

}  // namespace

json GameInstanceToJson(const GameInstance& game) {
  const GameSpec& s = game.spec;
  json j;
  j["n_players"] = s.n_players;
  j["budgets"] = s.budgets;
  j["k"] = s.max_coalitions_per_player;
  j["s_max"] = s.max_deviation_size;
  j["mode"] = s.mode == GameMode::kTaskGame ? "ktask" : "kcoalition";
  if (s.mode == GameMode::kTaskGame) {
    j["task_count"] = s.task_count;
    if (!s.task_owners.empty()) j["task_owners"] = s.task_owners;
  }
  j["division"] = DivisionName(s.division);
  j["arbitration"] = ArbitrationName(s.arbitration);
  json value;
  value["kind"] = game.value_kind;
  if (game.value_kind == "table") {
    value["budgets"] = game.table->budgets();
    value["values"] = game.table->values();
  }
  j["value"] = value;
  return j;
}

GameInstance GameInstanceFromJson(const json& j) {
  GameInstance game;
  GameSpec& s = game.spec;
  s.n_players = j.at("n_players").get<int>();
  s.budgets = j.at("budgets").get<std::vector<int>>();
  s.max_coalitions_per_player = j.at("k").get<int>();
  s.max_deviation_size = j.at("s_max").get<int>();
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "ktask") {
    s.mode = GameMode::kTaskGame;
    s.task_count = j.at("task_count").get<int>();
    if (j.contains("task_owners"))
      s.task_owners = j.at("task_owners").get<std::vector<int>>();
  } else if (mode == "kcoalition") {
    s.mode = GameMode::kCoalitionGame;
  } else {
    throw std::invalid_argument("unknown game mode: " + mode);
  }
  s.division = DivisionFromName(j.at("division").get<std::string>());
  s.arbitration = ArbitrationFromName(j.at("arbitration").get<std::string>());
  const json& value = j.at("value");
  game.value_kind = value.at("kind").get<std::string>();
  if (game.value_kind == "table") {
    game.table = std::make_shared<TableValue>(
        value.at("budgets").get<std::vector<int>>(),
        value.at("values").get<std::vector<double>>());
  }
  s.value_fn = ValueFnByKind(game.value_kind, game.table);
  s.Validate();
  return game;
}

json OutcomeToJson(const Outcome& outcome) {
  json j;
  j["coalitions"] = json::array();
  for (const auto& c : outcome.structure.coalitions) {
    json jc;
    jc["resources"] = c.resources.units;
    if (c.task_id) jc["task"] = *c.task_id;
    j["coalitions"].push_back(jc);
  }
  j["payoffs"] = outcome.allocation.payoffs;
  return j;
}

Outcome OutcomeFromJson(const json& j, const GameSpec& spec) {
  Outcome outcome;
  for (const auto& jc : j.at("coalitions")) {
    Coalition c;
    c.resources = ResourceVector(jc.at("resources").get<std::vector<int>>());
    if (jc.contains("task")) c.task_id = jc.at("task").get<int>();
    outcome.structure.coalitions.push_back(std::move(c));
  }
  outcome.allocation.payoffs =
      j.at("payoffs").get<std::vector<std::vector<double>>>();
  ValidateOutcome(spec, outcome);
  return outcome;
}

json InstanceToJson(const CertifyInstance& inst) {
  json j;
  j["schema"] = kSchema;
  j["game"] = GameInstanceToJson(inst.game);
  j["outcome"] = OutcomeToJson(inst.outcome);
  return j;
}

CertifyInstance InstanceFromJson(const json& j) {
  if (!j.contains("schema") || j.at("schema").get<std::string>() != kSchema)
    throw std::invalid_argument("missing or unsupported schema field");
  CertifyInstance inst;
  inst.game = GameInstanceFromJson(j.at("game"));
  inst.outcome = OutcomeFromJson(j.at("outcome"), inst.game.spec);
  return inst;
}

json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

CertifyInstance LoadInstance(const std::string& path) {
  return InstanceFromJson(LoadJsonFile(path));
}

void SaveInstance(const std::string& path, const CertifyInstance& inst) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file for write: " + path);
  out << InstanceToJson(inst).dump(2) << '\n';
}

hetnet::HetNetConfig HetNetConfigFromJson(const json& j) {
  hetnet::HetNetConfig cfg;
  cfg.area_m = j.value("area_m", cfg.area_m);
  cfg.n_sbs = j.value("n_sbs", cfg.n_sbs);
  cfg.interference_radius_m =
      j.value("interference_radius_m", cfg.interference_radius_m);
  cfg.rb_pool = j.value("rb_pool", cfg.rb_pool);
  cfg.rb_availability_prob =
      j.value("rb_availability_prob", cfg.rb_availability_prob);
  cfg.traffic_load = j.value("traffic_load", cfg.traffic_load);
  cfg.user_distance_m = j.value("user_distance_m", cfg.user_distance_m);
  cfg.pathloss_exponent = j.value("pathloss_exponent", cfg.pathloss_exponent);
  cfg.snr_ref_db = j.value("snr_ref_db", cfg.snr_ref_db);
  cfg.k_coalitions = j.value("k_coalitions", cfg.k_coalitions);
  cfg.s_max = j.value("s_max", cfg.s_max);
  cfg.merge_block_cap = j.value("merge_block_cap", cfg.merge_block_cap);
  cfg.Validate();
  return cfg;
}

sensing::SensingConfig SensingConfigFromJson(const json& j) {
  sensing::SensingConfig cfg;
  cfg.n_su = j.value("n_su", cfg.n_su);
  cfg.prior_h1 = j.value("prior_h1", cfg.prior_h1);
  cfg.pd_min = j.value("pd_min", cfg.pd_min);
  cfg.pd_max = j.value("pd_max", cfg.pd_max);
  cfg.pf_min = j.value("pf_min", cfg.pf_min);
  cfg.pf_max = j.value("pf_max", cfg.pf_max);
  cfg.report_budget_bits = j.value("report_budget_bits", cfg.report_budget_bits);
  cfg.report_cost_bits = j.value("report_cost_bits", cfg.report_cost_bits);
  cfg.s_max = j.value("s_max", cfg.s_max);
  cfg.Validate();
  return cfg;
}

SolverConfig SolverConfigFromJson(const json& j) {
  SolverConfig cfg;
  cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
  const std::string rule = j.value("improvement", std::string("first"));
  if (rule == "first") cfg.improvement = ImprovementRule::kFirstImprovement;
  else if (rule == "best") cfg.improvement = ImprovementRule::kBestImprovement;
  else throw std::invalid_argument("unknown improvement rule: " + rule);
  return cfg;
}

}  // namespace ocf
