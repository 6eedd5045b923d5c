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

#ifndef SCENARIO_BN__HARNESS__CONFIG_IO_HPP_
#define SCENARIO_BN__HARNESS__CONFIG_IO_HPP_

#include "scenario_bn/bayesnet/hill_climb.hpp"
#include "scenario_bn/geometry/lane_map.hpp"
#include "scenario_bn/io.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace scenario_bn::harness
{

/// Maneuver served by an arm: the declared one, else inferred from the arm
/// angle (below 150 deg left, above 210 deg right, straight otherwise).
inline Maneuver maneuver_of(const ArmGeometry & arm)
{
  if (arm.maneuver) {
    return *arm.maneuver;
  }
  if (arm.arm_angle < 150.0) {
    return Maneuver::left_turn;
  }
  if (arm.arm_angle > 210.0) {
    return Maneuver::right_turn;
  }
  return Maneuver::straight;
}

inline nlohmann::json to_json(const ArmGeometry & arm)
{
  nlohmann::json pts = nlohmann::json::array();
  for (const auto & p : arm.centerline.points()) {
    pts.push_back({p.x, p.y});
  }
  nlohmann::json j{
    {"id", arm.id},
    {"centerline", pts},
    {"lane_width", arm.lane_width},
    {"arm_angle", arm.arm_angle},
    {"crosswalk_present", arm.crosswalk_present},
    {"construction_site", std::string(to_string(arm.construction_site))},
    {"lane_count", arm.lane_count}};
  if (arm.maneuver) {
    j["maneuver"] = std::string(to_string(*arm.maneuver));
  }
  return j;
}

inline ArmGeometry arm_from_json(const nlohmann::json & j)
{
  ArmGeometry arm;
  arm.id = j.at("id").get<std::string>();
  std::vector<geometry::Point2> pts;
  for (const auto & p : j.at("centerline")) {
    if (!p.is_array() || p.size() != 2) {
      throw std::invalid_argument("arm '" + arm.id + "': centerline points must be [x, y]");
    }
    pts.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  arm.centerline = geometry::Polyline(std::move(pts));
  arm.lane_width = j.value("lane_width", 3.5);
  arm.arm_angle = j.contains("arm_angle") ? j.at("arm_angle").get<double>()
                                          : arm_angle_from_centerline(arm.centerline);
  arm.crosswalk_present = j.value("crosswalk_present", false);
  arm.construction_site = construction_site_from_string(j.value("construction_site", "none"));
  arm.lane_count = j.value("lane_count", 1);
  if (j.contains("maneuver")) {
    arm.maneuver = maneuver_from_string(j.at("maneuver").get<std::string>());
  }
  arm.validate();
  return arm;
}

inline nlohmann::json to_json(const LaneMap & map)
{
  nlohmann::json arms = nlohmann::json::array();
  for (const auto & a : map.arms) {
    arms.push_back(to_json(a));
  }
  return {{"intersection_id", map.intersection_id}, {"arms", arms}};
}

inline LaneMap lane_map_from_json(const nlohmann::json & j)
{
  LaneMap map;
  map.intersection_id = j.at("intersection_id").get<std::string>();
  std::set<std::string> ids;
  for (const auto & a : j.at("arms")) {
    map.arms.push_back(arm_from_json(a));
    if (!ids.insert(map.arms.back().id).second) {
      throw std::invalid_argument("duplicate arm id '" + map.arms.back().id + "'");
    }
  }
  if (map.arms.empty()) {
    throw std::invalid_argument("lane map '" + map.intersection_id + "' has no arms");
  }
  return map;
}

inline LaneMap load_lane_map(const std::filesystem::path & path)
{
  return lane_map_from_json(read_json_file(path));
}

inline void save_lane_map(const LaneMap & map, const std::filesystem::path & path)
{
  write_json_file(path, to_json(map));
}

/// Edge constraints over named nodes. `roots` lists nodes that may not have
/// parents; it expands into forbidden edges.
inline bayesnet::EdgeConstraints constraints_from_json(
  const nlohmann::json & j, const std::vector<std::string> & names)
{
  const auto index = [&](const nlohmann::json & n) {
    const auto name = n.get<std::string>();
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) {
        return i;
      }
    }
    throw std::invalid_argument("constraint refers to unknown node '" + name + "'");
  };
  const auto edges = [&](const char * key, std::set<bayesnet::Edge> & out) {
    if (!j.contains(key)) {
      return;
    }
    for (const auto & e : j.at(key)) {
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument(std::string(key) + " entries must be [from, to]");
      }
      out.insert({index(e[0]), index(e[1])});
    }
  };
  bayesnet::EdgeConstraints c;
  edges("required", c.required);
  edges("forbidden", c.forbidden);
  if (j.contains("roots")) {
    for (const auto & r : j.at("roots")) {
      const auto v = index(r);
      for (std::size_t u = 0; u < names.size(); ++u) {
        if (u != v) {
          c.forbidden.insert({u, v});
        }
      }
    }
  }
  c.validate(names.size());
  return c;
}

inline bayesnet::EdgeConstraints load_constraints(
  const std::filesystem::path & path, const std::vector<std::string> & names)
{
  return constraints_from_json(read_json_file(path), names);
}

inline nlohmann::json to_json(const bayesnet::EdgeConstraints & c, const std::vector<std::string> & names)
{
  nlohmann::json req = nlohmann::json::array();
  nlohmann::json forb = nlohmann::json::array();
  for (const auto & [a, b] : c.required) {
    req.push_back({names.at(a), names.at(b)});
  }
  for (const auto & [a, b] : c.forbidden) {
    forb.push_back({names.at(a), names.at(b)});
  }
  return {{"required", req}, {"forbidden", forb}};
}

}  // namespace scenario_bn::harness

#endif  // SCENARIO_BN__HARNESS__CONFIG_IO_HPP_
