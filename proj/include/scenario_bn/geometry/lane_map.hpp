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

#ifndef SCENARIO_BN__GEOMETRY__LANE_MAP_HPP_
#define SCENARIO_BN__GEOMETRY__LANE_MAP_HPP_

#include "scenario_bn/geometry/frenet.hpp"
#include "scenario_bn/geometry/polyline.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scenario_bn
{

enum class ConstructionSite { none = 0, near_side = 1, far_side = 2 };

enum class Maneuver { left_turn = 0, right_turn = 1, straight = 2 };

inline std::string_view to_string(const ConstructionSite c)
{
  switch (c) {
    case ConstructionSite::none:
      return "none";
    case ConstructionSite::near_side:
      return "near_side";
    case ConstructionSite::far_side:
      return "far_side";
  }
  return "none";
}

inline ConstructionSite construction_site_from_string(const std::string_view s)
{
  if (s == "none") return ConstructionSite::none;
  if (s == "near_side") return ConstructionSite::near_side;
  if (s == "far_side") return ConstructionSite::far_side;
  throw std::invalid_argument("unknown construction_site '" + std::string(s) + "'");
}

inline std::string_view to_string(const Maneuver m)
{
  switch (m) {
    case Maneuver::left_turn:
      return "left_turn";
    case Maneuver::right_turn:
      return "right_turn";
    case Maneuver::straight:
      return "straight";
  }
  return "straight";
}

inline Maneuver maneuver_from_string(const std::string_view s)
{
  if (s == "left_turn" || s == "L") return Maneuver::left_turn;
  if (s == "right_turn" || s == "R") return Maneuver::right_turn;
  if (s == "straight" || s == "S") return Maneuver::straight;
  throw std::invalid_argument("unknown maneuver '" + std::string(s) + "'");
}

inline char maneuver_letter(const Maneuver m)
{
  switch (m) {
    case Maneuver::left_turn:
      return 'L';
    case Maneuver::right_turn:
      return 'R';
    case Maneuver::straight:
      return 'S';
  }
  return 'S';
}

/// One movement through an intersection: the reference path runs from the
/// entry arm's centerline into the exit arm's centerline.
struct ArmGeometry
{
  std::string id;
  geometry::Polyline centerline{{{0.0, 0.0}, {1.0, 0.0}}};
  double lane_width{3.5};
  double arm_angle{180.0};
  bool crosswalk_present{false};
  ConstructionSite construction_site{ConstructionSite::none};
  int lane_count{1};
  /// Maneuver this reference path serves, when known.
  std::optional<Maneuver> maneuver;

  void validate() const
  {
    if (!(lane_width > 0.0)) {
      throw std::invalid_argument("arm '" + id + "': lane_width must be > 0");
    }
    if (!(arm_angle > 0.0 && arm_angle <= 360.0)) {
      throw std::invalid_argument("arm '" + id + "': arm_angle must be in (0, 360]");
    }
    if (lane_count < 1) {
      throw std::invalid_argument("arm '" + id + "': lane_count must be >= 1");
    }
  }
};

/// Angle between entry and exit arm in degrees: 180 straight through, 90 for
/// a square left turn, 270 for a square right turn.
inline double arm_angle_from_centerline(const geometry::Polyline & centerline)
{
  const double angle = 180.0 - geometry::heading_change_deg(centerline);
  return angle <= 0.0 ? angle + 360.0 : angle;
}

struct LaneMap
{
  std::string intersection_id;
  std::vector<ArmGeometry> arms;

  const ArmGeometry * find_arm(const std::string_view id) const
  {
    for (const auto & arm : arms) {
      if (arm.id == id) {
        return &arm;
      }
    }
    return nullptr;
  }

  const ArmGeometry & arm(const std::string_view id) const
  {
    if (const auto * a = find_arm(id)) {
      return *a;
    }
    throw std::out_of_range(
      "arm '" + std::string(id) + "' not in lane map '" + intersection_id + "'");
  }
};

}  // namespace scenario_bn

#endif  // SCENARIO_BN__GEOMETRY__LANE_MAP_HPP_
