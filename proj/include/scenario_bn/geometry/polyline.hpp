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

#ifndef SCENARIO_BN__GEOMETRY__POLYLINE_HPP_
#define SCENARIO_BN__GEOMETRY__POLYLINE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scenario_bn::geometry
{

struct Point2
{
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Point2 &, const Point2 &) = default;
};

inline Point2 operator+(const Point2 & a, const Point2 & b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(const Point2 & a, const Point2 & b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(const double k, const Point2 & p) { return {k * p.x, k * p.y}; }
inline double dot(const Point2 & a, const Point2 & b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point2 & a, const Point2 & b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point2 & p) { return std::hypot(p.x, p.y); }
inline double distance(const Point2 & a, const Point2 & b) { return norm(a - b); }

/// Piecewise-linear reference path. Holds at least two points, consecutive
/// points distinct, and caches the cumulative arc length at every vertex.
class Polyline
{
public:
  explicit Polyline(std::vector<Point2> points) : points_(std::move(points))
  {
    if (points_.size() < 2) {
      throw std::invalid_argument("polyline needs at least 2 points");
    }
    cumulative_.reserve(points_.size());
    cumulative_.push_back(0.0);
    for (std::size_t i = 1; i < points_.size(); ++i) {
      const double len = distance(points_[i - 1], points_[i]);
      if (!(len > 0.0) || !std::isfinite(len)) {
        throw std::invalid_argument(
          "polyline has a zero-length segment at index " + std::to_string(i - 1));
      }
      cumulative_.push_back(cumulative_.back() + len);
    }
  }

  const std::vector<Point2> & points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  std::size_t segment_count() const { return points_.size() - 1; }
  double length() const { return cumulative_.back(); }
  /// Arc length at vertex i.
  double station(const std::size_t i) const { return cumulative_[i]; }
  double segment_length(const std::size_t i) const { return cumulative_[i + 1] - cumulative_[i]; }

  Point2 segment_direction(const std::size_t i) const
  {
    const Point2 d = points_[i + 1] - points_[i];
    return (1.0 / segment_length(i)) * d;
  }

  /// Unit normal pointing to the left of travel on segment i.
  Point2 segment_left_normal(const std::size_t i) const
  {
    const Point2 d = segment_direction(i);
    return {-d.y, d.x};
  }

  /// Segment that owns arc length s: the one with station(i) <= s < station(i+1);
  /// s == length() belongs to the last segment.
  std::size_t segment_at(const double s) const
  {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    const auto idx = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
    if (idx == 0) {
      return 0;
    }
    return std::min(idx - 1, segment_count() - 1);
  }

  Point2 point_at(const double s) const
  {
    const std::size_t i = segment_at(s);
    return points_[i] + (s - cumulative_[i]) * segment_direction(i);
  }

  friend bool operator==(const Polyline & a, const Polyline & b) { return a.points_ == b.points_; }

private:
  std::vector<Point2> points_;
  std::vector<double> cumulative_;
};

inline double arc_length(const Polyline & poly) { return poly.length(); }

/// Samples the polyline every `step` meters from 0 to its length (both ends
/// included). Original vertices are kept as well so the resampled curve spans
/// exactly the same path.
inline Polyline resample_polyline(const Polyline & poly, const double step)
{
  if (!(step > 0.0)) {
    throw std::invalid_argument("resample step must be positive");
  }
  const double total = poly.length();
  // Points closer than this to an already emitted station are merged.
  const double merge_tol = 1e-9 * std::max(1.0, total);

  std::vector<double> stations;
  const auto n_steps = static_cast<std::size_t>(std::floor(total / step));
  stations.reserve(n_steps + poly.size() + 1);
  for (std::size_t k = 0; k <= n_steps; ++k) {
    stations.push_back(static_cast<double>(k) * step);
  }
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
    stations.push_back(poly.station(i));
  }
  stations.push_back(total);
  std::sort(stations.begin(), stations.end());

  std::vector<Point2> out;
  out.reserve(stations.size());
  double last = -std::numeric_limits<double>::infinity();
  for (const double s : stations) {
    if (s - last <= merge_tol) {
      continue;
    }
    // Snap to the vertex when a uniform station lands on it up to rounding.
    if (total - s <= merge_tol) {
      break;
    }
    out.push_back(poly.point_at(s));
    last = s;
  }
  out.push_back(poly.points().back());
  return Polyline(std::move(out));
}

}  // namespace scenario_bn::geometry

#endif  // SCENARIO_BN__GEOMETRY__POLYLINE_HPP_
