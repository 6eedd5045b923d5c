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

#ifndef SCENARIO_BN__METRICS__CROSS_SECTION_HPP_
#define SCENARIO_BN__METRICS__CROSS_SECTION_HPP_

#include "scenario_bn/metrics/histogram.hpp"
#include "scenario_bn/trajectory/frenet_trajectory.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace scenario_bn::metrics
{

/// Lateral offset where the trajectory passes station s, linearly
/// interpolated; empty if it never reaches s. On a plateau (repeated s) the
/// first sample at s wins.
inline std::optional<double> t_at_station(const FrenetTrajectory & traj, const double s)
{
  const auto & x = traj.samples;
  if (x.empty() || s < x.front().s || s > x.back().s) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i].s;
    const double b = x[i + 1].s;
    if (s >= a && s <= b) {
      if (!(b > a)) {
        return x[i].t;
      }
      const double w = (s - a) / (b - a);
      return x[i].t + w * (x[i + 1].t - x[i].t);
    }
  }
  return x.back().t;
}

struct CrossSection
{
  double s{0.0};
  std::vector<double> values;
  std::size_t excluded{0};
};

/// t values of every trajectory at each station; throws if a station is
/// reached by none of them.
inline std::vector<CrossSection> cross_sections(
  const std::vector<FrenetTrajectory> & trajs, const std::vector<double> & s_values)
{
  std::vector<CrossSection> out;
  for (const double s : s_values) {
    CrossSection cs;
    cs.s = s;
    for (const auto & tr : trajs) {
      if (const auto t = t_at_station(tr, s)) {
        cs.values.push_back(*t);
      } else {
        ++cs.excluded;
      }
    }
    if (cs.values.empty()) {
      throw std::domain_error("no trajectory reaches s = " + std::to_string(s));
    }
    out.push_back(std::move(cs));
  }
  return out;
}

struct CrossSectionHistogram
{
  double s{0.0};
  Histogram histogram;
  std::size_t excluded{0};
};

inline std::vector<CrossSectionHistogram> cross_section_distributions(
  const std::vector<FrenetTrajectory> & trajs, const std::vector<double> & s_values,
  const std::vector<double> & t_edges)
{
  std::vector<CrossSectionHistogram> out;
  for (auto & cs : cross_sections(trajs, s_values)) {
    out.push_back({cs.s, make_histogram(t_edges, cs.values), cs.excluded});
  }
  return out;
}

/// Shared t edges of the given width spanning every value in the sections.
inline std::vector<double> shared_t_edges(
  const std::vector<std::vector<CrossSection>> & groups, const double width = 0.25)
{
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto & g : groups) {
    for (const auto & cs : g) {
      for (const double v : cs.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (!(lo <= hi)) {
    throw std::invalid_argument("no cross-section values to bin");
  }
  return uniform_edges(lo, hi, width);
}

}  // namespace scenario_bn::metrics

#endif  // SCENARIO_BN__METRICS__CROSS_SECTION_HPP_
