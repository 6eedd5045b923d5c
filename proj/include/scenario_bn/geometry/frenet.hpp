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

#ifndef SCENARIO_BN__GEOMETRY__FRENET_HPP_
#define SCENARIO_BN__GEOMETRY__FRENET_HPP_

#include "scenario_bn/geometry/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace scenario_bn::geometry
{

/// Road-based coordinates: s is arc length along the reference path, t the
/// signed lateral offset (positive to the left of travel).
struct FrenetPose
{
  double s{0.0};
  double t{0.0};
};

struct Projection
{
  FrenetPose pose;
  std::size_t segment{0};
  double distance{0.0};
};

/// Closest-point projection onto the polyline.
///
/// Each segment is projected orthogonally with the foot clamped to its ends.
/// Among equidistant segments the one with the smallest s wins. The lateral
/// sign comes from the owning segment; on an interior vertex where that
/// segment's cross product vanishes, the neighbouring segment decides. Points
/// beyond either end of the path report the perpendicular offset to the end
/// segment.
inline Projection project(const Polyline & poly, const Point2 & p)
{
  const std::size_t n_seg = poly.segment_count();
  Projection best;
  double best_d2 = std::numeric_limits<double>::infinity();
  double best_u = 0.0;
  for (std::size_t i = 0; i < n_seg; ++i) {
    const Point2 a = poly.points()[i];
    const Point2 d = poly.segment_direction(i);
    const double len = poly.segment_length(i);
    const double along = dot(p - a, d);
    const double u = std::clamp(along, 0.0, len);
    const Point2 foot = a + u * d;
    const Point2 r = p - foot;
    const double d2 = dot(r, r);
    if (d2 < best_d2) {
      best_d2 = d2;
      best_u = along;
      best.segment = i;
      best.pose.s = poly.station(i) + u;
    }
  }
  best.distance = std::sqrt(best_d2);

  const std::size_t i = best.segment;
  const Point2 a = poly.points()[i];
  const Point2 d = poly.segment_direction(i);
  const double len = poly.segment_length(i);
  const Point2 r = p - (a + std::clamp(best_u, 0.0, len) * d);

  if ((i == 0 && best_u < 0.0) || (i + 1 == n_seg && best_u > len)) {
    best.pose.t = cross(d, p - a);
    return best;
  }

  double side = cross(d, r);
  const double tiny = 1e-12 * std::max(1.0, best.distance);
  if (std::abs(side) <= tiny) {
    // Foot sits on a vertex with the point on this segment's extension.
    if (best_u >= len && i + 1 < n_seg) {
      side = cross(poly.segment_direction(i + 1), r);
    } else if (best_u <= 0.0 && i > 0) {
      side = cross(poly.segment_direction(i - 1), r);
    }
  }
  best.pose.t = side < 0.0 ? -best.distance : best.distance;
  if (best.distance == 0.0) {
    best.pose.t = 0.0;
  }
  return best;
}

inline FrenetPose project_to_frenet(const Polyline & poly, const Point2 & p)
{
  return project(poly, p).pose;
}

/// Position at arc length s shifted by t along the owning segment's left normal.
inline Point2 frenet_to_cartesian(const Polyline & poly, const FrenetPose & pose)
{
  if (!(pose.s >= 0.0) || pose.s > poly.length()) {
    throw std::out_of_range(
      "s = " + std::to_string(pose.s) + " outside [0, " + std::to_string(poly.length()) + "]");
  }
  const std::size_t i = poly.segment_at(pose.s);
  return poly.point_at(pose.s) + pose.t * poly.segment_left_normal(i);
}

/// Same as frenet_to_cartesian but s is clamped onto the path first.
inline Point2 frenet_to_cartesian_clamped(const Polyline & poly, FrenetPose pose)
{
  pose.s = std::clamp(pose.s, 0.0, poly.length());
  return frenet_to_cartesian(poly, pose);
}

/// Unit tangent of the segment owning s.
inline Point2 tangent_at(const Polyline & poly, const double s)
{
  return poly.segment_direction(poly.segment_at(std::clamp(s, 0.0, poly.length())));
}

inline Point2 left_normal_at(const Polyline & poly, const double s)
{
  return poly.segment_left_normal(poly.segment_at(std::clamp(s, 0.0, poly.length())));
}

/// Heading change from the first to the last segment in degrees, in (-180, 180],
/// positive for a left turn.
inline double heading_change_deg(const Polyline & poly)
{
  const Point2 a = poly.segment_direction(0);
  const Point2 b = poly.segment_direction(poly.segment_count() - 1);
  double deg = std::atan2(cross(a, b), dot(a, b)) * 180.0 / M_PI;
  if (deg <= -180.0) {
    deg += 360.0;
  }
  return deg;
}

}  // namespace scenario_bn::geometry

#endif  // SCENARIO_BN__GEOMETRY__FRENET_HPP_
