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

#ifndef SCENARIO_BN__METRICS__DISTANCE_HPP_
#define SCENARIO_BN__METRICS__DISTANCE_HPP_

#include "scenario_bn/geometry/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace scenario_bn::metrics
{

inline double ground_distance(const double a, const double b) { return std::abs(a - b); }

inline double ground_distance(const geometry::Point2 & a, const geometry::Point2 & b)
{
  return geometry::distance(a, b);
}

/// Discrete Frechet distance: the smallest over monotone couplings of the
/// largest coupled point distance.
template <typename T>
double discrete_frechet(const std::vector<T> & p, const std::vector<T> & q)
{
  if (p.empty() || q.empty()) {
    throw std::invalid_argument("Frechet distance of an empty sequence");
  }
  const std::size_t m = q.size();
  std::vector<double> prev(m);
  std::vector<double> cur(m);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = ground_distance(p[i], q[j]);
      if (i == 0 && j == 0) {
        cur[j] = d;
      } else if (i == 0) {
        cur[j] = std::max(cur[j - 1], d);
      } else if (j == 0) {
        cur[j] = std::max(prev[j], d);
      } else {
        cur[j] = std::max(std::min({prev[j], prev[j - 1], cur[j - 1]}), d);
      }
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

/// Dynamic time warping: smallest sum of ground distances over alignments
/// built from match, insertion and deletion steps. No window, no
/// normalization.
template <typename T>
double dtw(const std::vector<T> & p, const std::vector<T> & q)
{
  if (p.empty() || q.empty()) {
    throw std::invalid_argument("DTW of an empty sequence");
  }
  const std::size_t m = q.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m + 1, inf);
  std::vector<double> cur(m + 1, inf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    cur[0] = inf;
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = ground_distance(p[i - 1], q[j - 1]) + std::min({prev[j - 1], prev[j], cur[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace scenario_bn::metrics

#endif  // SCENARIO_BN__METRICS__DISTANCE_HPP_
