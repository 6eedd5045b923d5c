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

#ifndef SCENARIO_BN__TRAJECTORY__PARAM_VECTOR_HPP_
#define SCENARIO_BN__TRAJECTORY__PARAM_VECTOR_HPP_

#include "scenario_bn/geometry/lane_map.hpp"
#include "scenario_bn/role.hpp"
#include "scenario_bn/trajectory/spline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scenario_bn
{

/// Interpretable parameters of one maneuver: nine direct ones that drive
/// trajectory synthesis and six indirect ones describing the situation.
struct ParamVector
{
  // direct
  double v_entry{0.0};
  double v_min{0.0};
  double v_exit{0.0};
  double t_start{0.0};
  double t_apex{0.0};
  double t_end{0.0};
  double duration{1.0};
  double s_total{1.0};
  double tau_apex{0.5};
  // indirect
  Maneuver maneuver{Maneuver::straight};
  bool conflict_present{false};
  bool crosswalk_present{false};
  ConstructionSite construction_site{ConstructionSite::none};
  double arm_angle{180.0};
  double lane_width{3.5};

  friend bool operator==(const ParamVector &, const ParamVector &) = default;
};

inline bool satisfies_invariants(const ParamVector & p)
{
  return p.v_min <= std::min(p.v_entry, p.v_exit) && p.s_total > 0.0 && p.duration > 0.0 &&
         p.tau_apex > 0.0 && p.tau_apex < 1.0 && p.v_min >= 0.0;
}

inline void check_param_vector(const ParamVector & p)
{
  if (!satisfies_invariants(p)) {
    throw std::invalid_argument(
      "parameter vector violates invariants (v_min <= min(v_entry, v_exit), s_total > 0, "
      "duration > 0, 0 < tau_apex < 1)");
  }
}

/// Column layout shared by parameter tables, discretization and networks.
struct ParamField
{
  std::string_view name;
  Role role;
  /// Empty for continuous fields; category labels otherwise (codes 0..K-1).
  std::vector<std::string_view> labels;
};

inline constexpr std::size_t kParamCount = 15;

inline const std::array<ParamField, kParamCount> & param_fields()
{
  static const std::array<ParamField, kParamCount> fields{{
    {"maneuver", Role::indirect, {"left_turn", "right_turn", "straight"}},
    {"conflict_present", Role::indirect, {"false", "true"}},
    {"crosswalk_present", Role::indirect, {"false", "true"}},
    {"construction_site", Role::indirect, {"none", "near_side", "far_side"}},
    {"arm_angle", Role::indirect, {}},
    {"lane_width", Role::indirect, {}},
    {"v_entry", Role::direct, {}},
    {"v_min", Role::direct, {}},
    {"v_exit", Role::direct, {}},
    {"t_start", Role::direct, {}},
    {"t_apex", Role::direct, {}},
    {"t_end", Role::direct, {}},
    {"duration", Role::direct, {}},
    {"s_total", Role::direct, {}},
    {"tau_apex", Role::direct, {}},
  }};
  return fields;
}

inline std::optional<std::size_t> param_index(const std::string_view name)
{
  const auto & f = param_fields();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

/// Numeric row in param_fields() order; categories become their codes.
inline std::vector<double> to_row(const ParamVector & p)
{
  return {
    static_cast<double>(p.maneuver),
    p.conflict_present ? 1.0 : 0.0,
    p.crosswalk_present ? 1.0 : 0.0,
    static_cast<double>(p.construction_site),
    p.arm_angle,
    p.lane_width,
    p.v_entry,
    p.v_min,
    p.v_exit,
    p.t_start,
    p.t_apex,
    p.t_end,
    p.duration,
    p.s_total,
    p.tau_apex};
}

inline ParamVector from_row(const std::vector<double> & row)
{
  if (row.size() != kParamCount) {
    throw std::invalid_argument("parameter row needs 15 values");
  }
  const auto code = [&](const std::size_t i, const int k) {
    const auto c = static_cast<int>(std::lround(row[i]));
    if (c < 0 || c >= k) {
      throw std::invalid_argument("category code out of range in column " + std::to_string(i));
    }
    return c;
  };
  ParamVector p;
  p.maneuver = static_cast<Maneuver>(code(0, 3));
  p.conflict_present = code(1, 2) == 1;
  p.crosswalk_present = code(2, 2) == 1;
  p.construction_site = static_cast<ConstructionSite>(code(3, 3));
  p.arm_angle = row[4];
  p.lane_width = row[5];
  p.v_entry = row[6];
  p.v_min = row[7];
  p.v_exit = row[8];
  p.t_start = row[9];
  p.t_apex = row[10];
  p.t_end = row[11];
  p.duration = row[12];
  p.s_total = row[13];
  p.tau_apex = row[14];
  return p;
}

/// Reads the direct parameters off a fitted spline and the speed profile and
/// copies the indirect ones from the arm and the conflict annotation.
inline ParamVector extract_param_vector(
  const FrenetTrajectory & traj, const ArmGeometry & arm, const bool conflict_present)
{
  const SplineKnots knots = fit_trajectory_splines(traj);
  ParamVector p;
  p.v_entry = traj.samples.front().v;
  p.v_exit = traj.samples.back().v;
  p.v_min = std::min_element(
              traj.samples.begin(), traj.samples.end(),
              [](const auto & a, const auto & b) { return a.v < b.v; })
              ->v;
  p.t_start = knots.start.t;
  p.t_apex = knots.apex.t;
  p.t_end = knots.end.t;
  p.duration = knots.duration;
  p.s_total = knots.end.s - knots.start.s;
  p.tau_apex = knots.apex.tau;
  p.maneuver = traj.maneuver;
  p.conflict_present = conflict_present;
  p.crosswalk_present = arm.crosswalk_present;
  p.construction_site = arm.construction_site;
  p.arm_angle = arm.arm_angle;
  p.lane_width = arm.lane_width;
  return p;
}

/// Spline knots implied by a parameter vector, starting at arc length s_start.
///
/// Longitudinal tangents are the knot speeds times the duration. The apex
/// station splits s_total in proportion to the trapezoidal distance of each
/// half, which yields a piecewise-linear speed profile whenever s_total is
/// kinematically consistent with the speeds. Lateral tangents are zero at
/// the ends (aligned with the lane) and the start-to-end chord at the apex.
inline SplineKnots knots_from_params(const ParamVector & p, const double s_start = 0.0)
{
  SplineKnots k;
  k.duration = p.duration;
  const double ta = p.tau_apex;
  const double w1 = ta * (p.v_entry + p.v_min);
  const double w2 = (1.0 - ta) * (p.v_min + p.v_exit);
  const double share = (w1 + w2) > 0.0 ? w1 / (w1 + w2) : ta;

  k.start = {0.0, s_start, p.t_start, p.v_entry * p.duration, 0.0};
  k.apex = {ta, s_start + share * p.s_total, p.t_apex, p.v_min * p.duration, p.t_end - p.t_start};
  k.end = {1.0, s_start + p.s_total, p.t_end, p.v_exit * p.duration, 0.0};
  k.validate();
  return k;
}

/// Distance covered by the piecewise-linear speed profile the parameters
/// describe: duration * (tau_apex*(v_entry+v_min) + (1-tau_apex)*(v_min+v_exit)) / 2.
inline double profile_distance(const ParamVector & p)
{
  return 0.5 * p.duration *
         (p.tau_apex * (p.v_entry + p.v_min) + (1.0 - p.tau_apex) * (p.v_min + p.v_exit));
}

}  // namespace scenario_bn

#endif  // SCENARIO_BN__TRAJECTORY__PARAM_VECTOR_HPP_
