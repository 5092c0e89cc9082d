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

#ifndef OCF_SERIALIZE_HPP
#define OCF_SERIALIZE_HPP

#include <memory>
#include <string>

#include <json.hpp>

#include "ocf/core.hpp"
#include "ocf/hetnet.hpp"
#include "ocf/sensing.hpp"
#include "ocf/solver.hpp"
#include "ocf/valuefns.hpp"

namespace ocf {

// A game whose value function is one of the named serializable kinds:
// "software_company", "zero", "quadratic", "linear", or "table".
struct GameInstance {
  GameSpec spec;
  std::string value_kind;
  std::shared_ptr<const TableValue> table;  // kind == "table" only
};

struct CertifyInstance {
  GameInstance game;
  Outcome outcome;
};

nlohmann::json GameInstanceToJson(const GameInstance& game);
GameInstance GameInstanceFromJson(const nlohmann::json& j);

nlohmann::json OutcomeToJson(const Outcome& outcome);
Outcome OutcomeFromJson(const nlohmann::json& j, const GameSpec& spec);

nlohmann::json InstanceToJson(const CertifyInstance& inst);
CertifyInstance InstanceFromJson(const nlohmann::json& j);

CertifyInstance LoadInstance(const std::string& path);
void SaveInstance(const std::string& path, const CertifyInstance& inst);

hetnet::HetNetConfig HetNetConfigFromJson(const nlohmann::json& j);
sensing::SensingConfig SensingConfigFromJson(const nlohmann::json& j);
SolverConfig SolverConfigFromJson(const nlohmann::json& j);

nlohmann::json LoadJsonFile(const std::string& path);

}  // namespace ocf

#endif  // OCF_SERIALIZE_HPP
