// Copyright 2026 The scenario_bn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCENARIO_BN__GENERATE__SCENARIO_IO_HPP_
#define SCENARIO_BN__GENERATE__SCENARIO_IO_HPP_

#include "scenario_bn/generate/scenario.hpp"
#include "scenario_bn/io.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace scenario_bn::generate
{

inline nlohmann::json params_to_json(const ParamVector & p)
{
  return {
    {"maneuver", std::string(to_string(p.maneuver))},
    {"conflict_present", p.conflict_present},
    {"crosswalk_present", p.crosswalk_present},
    {"construction_site", std::string(to_string(p.construction_site))},
    {"arm_angle", p.arm_angle},
    {"lane_width", p.lane_width},
    {"v_entry", p.v_entry},
    {"v_min", p.v_min},
    {"v_exit", p.v_exit},
    {"t_start", p.t_start},
    {"t_apex", p.t_apex},
    {"t_end", p.t_end},
    {"duration", p.duration},
    {"s_total", p.s_total},
    {"tau_apex", p.tau_apex}};
}

inline ParamVector params_from_json(const nlohmann::json & j)
{
  ParamVector p;
  p.maneuver = maneuver_from_string(j.at("maneuver").get<std::string>());
  p.conflict_present = j.at("conflict_present").get<bool>();
  p.crosswalk_present = j.at("crosswalk_present").get<bool>();
  p.construction_site = construction_site_from_string(j.at("construction_site").get<std::string>());
  p.arm_angle = j.at("arm_angle").get<double>();
  p.lane_width = j.at("lane_width").get<double>();
  p.v_entry = j.at("v_entry").get<double>();
  p.v_min = j.at("v_min").get<double>();
  p.v_exit = j.at("v_exit").get<double>();
  p.t_start = j.at("t_start").get<double>();
  p.t_apex = j.at("t_apex").get<double>();
  p.t_end = j.at("t_end").get<double>();
  p.duration = j.at("duration").get<double>();
  p.s_total = j.at("s_total").get<double>();
  p.tau_apex = j.at("tau_apex").get<double>();
  return p;
}

inline nlohmann::json to_json(const GeneratedScenario & sc)
{
  nlohmann::json samples = nlohmann::json::array();
  for (const auto & s : sc.trajectory.samples) {
    samples.push_back({s.time, s.s, s.t, s.v});
  }
  nlohmann::json ev = nlohmann::json::object();
  for (const auto & [name, value] : sc.provenance.evidence) {
    ev[name] = value;
  }
  return {
    {"params", params_to_json(sc.params)},
    {"trajectory",
     {{"maneuver", std::string(to_string(sc.trajectory.maneuver))}, {"samples", samples}}},
    {"provenance",
     {{"seed", sc.provenance.seed},
      {"index", sc.provenance.index},
      {"net_version", sc.provenance.net_version},
      {"arm_id", sc.provenance.arm_id},
      {"evidence", ev}}}};
}

/// Parses one scenario and checks it against the parameter invariants and
/// the trajectory invariants.
inline GeneratedScenario scenario_from_json(const nlohmann::json & j)
{
  GeneratedScenario sc;
  sc.params = params_from_json(j.at("params"));
  check_param_vector(sc.params);
  const auto & tr = j.at("trajectory");
  sc.trajectory.maneuver = maneuver_from_string(tr.at("maneuver").get<std::string>());
  for (const auto & s : tr.at("samples")) {
    if (s.size() != 4) {
      throw std::invalid_argument("trajectory sample must be [time, s, t, v]");
    }
    sc.trajectory.samples.push_back(
      {s[0].get<double>(), s[1].get<double>(), s[2].get<double>(), s[3].get<double>()});
  }
  check_trajectory(sc.trajectory, 1e-9);
  const auto & pr = j.at("provenance");
  sc.provenance.seed = pr.at("seed").get<std::uint64_t>();
  sc.provenance.index = pr.at("index").get<std::size_t>();
  sc.provenance.net_version = pr.at("net_version").get<std::string>();
  sc.provenance.arm_id = pr.value("arm_id", "");
  for (const auto & [name, value] : pr.at("evidence").items()) {
    sc.provenance.evidence[name] = value.get<std::size_t>();
  }
  return sc;
}

inline nlohmann::json scenarios_to_json(const std::vector<GeneratedScenario> & list)
{
  nlohmann::json j = nlohmann::json::array();
  for (const auto & sc : list) {
    j.push_back(to_json(sc));
  }
  return j;
}

inline std::vector<GeneratedScenario> scenarios_from_json(const nlohmann::json & j)
{
  if (!j.is_array()) {
    throw std::invalid_argument("scenario document must be a JSON array");
  }
  std::vector<GeneratedScenario> out;
  for (const auto & e : j) {
    out.push_back(scenario_from_json(e));
  }
  return out;
}

inline void export_scenarios(
  const std::vector<GeneratedScenario> & list, const std::filesystem::path & path)
{
  write_json_file(path, scenarios_to_json(list));
}

inline std::vector<GeneratedScenario> import_scenarios(const std::filesystem::path & path)
{
  return scenarios_from_json(read_json_file(path));
}

}  // namespace scenario_bn::generate

#endif  // SCENARIO_BN__GENERATE__SCENARIO_IO_HPP_
