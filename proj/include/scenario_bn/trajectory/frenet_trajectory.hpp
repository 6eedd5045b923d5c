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

#ifndef SCENARIO_BN__TRAJECTORY__FRENET_TRAJECTORY_HPP_
#define SCENARIO_BN__TRAJECTORY__FRENET_TRAJECTORY_HPP_

#include "scenario_bn/geometry/frenet.hpp"
#include "scenario_bn/geometry/lane_map.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace scenario_bn
{

struct FrenetSample
{
  double time{0.0};
  double s{0.0};
  double t{0.0};
  double v{0.0};

  friend bool operator==(const FrenetSample &, const FrenetSample &) = default;
};

struct FrenetTrajectory
{
  std::vector<FrenetSample> samples;
  Maneuver maneuver{Maneuver::straight};

  std::size_t size() const { return samples.size(); }
  double duration() const { return samples.back().time - samples.front().time; }

  friend bool operator==(const FrenetTrajectory &, const FrenetTrajectory &) = default;
};

/// Throws if time is not strictly increasing, any speed is negative or
/// non-finite, or s decreases by more than `s_tolerance` between samples.
inline void check_trajectory(const FrenetTrajectory & traj, const double s_tolerance = 0.0)
{
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const auto & p = traj.samples[i];
    if (!std::isfinite(p.time) || !std::isfinite(p.s) || !std::isfinite(p.t) ||
        !std::isfinite(p.v)) {
      throw std::invalid_argument("non-finite trajectory sample " + std::to_string(i));
    }
    if (p.v < 0.0) {
      throw std::invalid_argument("negative speed at sample " + std::to_string(i));
    }
    if (i == 0) {
      continue;
    }
    const auto & q = traj.samples[i - 1];
    if (!(p.time > q.time)) {
      throw std::invalid_argument("time not increasing at sample " + std::to_string(i));
    }
    if (p.s < q.s - s_tolerance) {
      throw std::invalid_argument("s decreasing at sample " + std::to_string(i));
    }
  }
}

/// Maps every sample to Cartesian coordinates on `path`, clamping s onto it.
inline std::vector<geometry::Point2> to_cartesian(
  const FrenetTrajectory & traj, const geometry::Polyline & path)
{
  std::vector<geometry::Point2> out;
  out.reserve(traj.samples.size());
  for (const auto & p : traj.samples) {
    out.push_back(geometry::frenet_to_cartesian_clamped(path, {p.s, p.t}));
  }
  return out;
}

}  // namespace scenario_bn

#endif  // SCENARIO_BN__TRAJECTORY__FRENET_TRAJECTORY_HPP_
