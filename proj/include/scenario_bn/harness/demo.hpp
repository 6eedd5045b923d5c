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

#ifndef SCENARIO_BN__HARNESS__DEMO_HPP_
#define SCENARIO_BN__HARNESS__DEMO_HPP_

#include "scenario_bn/harness/synthetic_world.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace scenario_bn::harness
{

/// Continuous variable with `count` equal-width bins on [lo, hi].
inline bayesnet::VariableSpec uniform_bins(
  const std::string & name, const double lo, const double hi, const std::size_t count)
{
  bayesnet::VariableSpec v;
  v.name = name;
  v.min = lo;
  v.max = hi;
  const double w = (hi - lo) / static_cast<double>(count);
  for (std::size_t k = 1; k < count; ++k) {
    v.boundaries.push_back(lo + w * static_cast<double>(k));
  }
  for (std::size_t k = 0; k < count; ++k) {
    v.bin_means.push_back(lo + w * (static_cast<double>(k) + 0.5));
  }
  return v;
}

/// Distribution over `card` states with `weights` centred on `center`;
/// mass falling outside is folded into the end states.
inline std::vector<double> peaked(
  const std::size_t card, const long center, const std::vector<double> & weights)
{
  std::vector<double> p(card, 0.0);
  const long half = static_cast<long>(weights.size()) / 2;
  for (long i = 0; i < static_cast<long>(weights.size()); ++i) {
    const long k = std::clamp<long>(center + i - half, 0, static_cast<long>(card) - 1);
    p[static_cast<std::size_t>(k)] += weights[static_cast<std::size_t>(i)];
  }
  return p;
}

inline std::vector<double> uniform_over(const std::size_t card, const std::size_t lo, const std::size_t hi)
{
  std::vector<double> p(card, 0.0);
  for (std::size_t k = lo; k <= hi; ++k) {
    p[k] = 1.0 / static_cast<double>(hi - lo + 1);
  }
  return p;
}

/// Fills node v's CPT from a function of its parents' states.
inline void fill_cpt(
  CausalNet & net, const std::string & node,
  const std::function<std::vector<double>(const std::vector<std::size_t> &)> & row)
{
  const auto v = net.dag.index_of(node);
  const auto & parents = net.dag.parents(v);
  std::vector<std::size_t> cards;
  std::size_t configs = 1;
  for (const auto p : parents) {
    cards.push_back(net.spec.variables[p].cardinality());
    configs *= cards.back();
  }
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> values(parents.size(), 0);
  for (std::size_t j = 0; j < configs; ++j) {
    std::size_t rest = j;
    for (std::size_t i = parents.size(); i-- > 0;) {
      values[i] = rest % cards[i];
      rest /= cards[i];
    }
    rows.push_back(row(values));
  }
  bayesnet::set_node_cpt(net, v, rows);
}

/// Planted mechanism of the demo world.
///
/// t_apex: conflict shifts it by +0.3 m, far-side construction by -0.4 m and
/// near-side construction by -0.2 m; the maneuver sets the base offset.
/// Speeds depend on the maneuver, crosswalks lower the entry speed and
/// conflicts lower the minimum speed.
inline CausalNet demo_truth_net()
{
  using bayesnet::VariableSpec;
  const auto & fields = param_fields();
  std::vector<std::string> names;
  std::vector<Role> roles;
  CausalNet net;
  for (const auto & f : fields) {
    names.emplace_back(f.name);
    roles.push_back(f.role);
    if (!f.labels.empty()) {
      VariableSpec v;
      v.name = std::string(f.name);
      v.categorical = true;
      for (const auto l : f.labels) {
        v.labels.emplace_back(l);
      }
      net.spec.variables.push_back(v);
    } else if (f.name == "arm_angle") {
      VariableSpec v;
      v.name = "arm_angle";
      v.boundaries = {135.0, 225.0};
      v.min = 30.0;
      v.max = 330.0;
      v.bin_means = {90.0, 180.0, 270.0};
      net.spec.variables.push_back(v);
    } else if (f.name == "lane_width") {
      net.spec.variables.push_back(uniform_bins("lane_width", 2.75, 4.25, 3));
    } else if (f.name == "v_entry" || f.name == "v_exit") {
      net.spec.variables.push_back(uniform_bins(std::string(f.name), 4.0, 14.0, 10));
    } else if (f.name == "v_min") {
      net.spec.variables.push_back(uniform_bins("v_min", 0.0, 10.0, 10));
    } else if (f.name == "t_start") {
      net.spec.variables.push_back(uniform_bins("t_start", -0.3, 0.3, 6));
    } else if (f.name == "t_apex") {
      net.spec.variables.push_back(uniform_bins("t_apex", -1.5, 1.5, 30));
    } else if (f.name == "t_end") {
      net.spec.variables.push_back(uniform_bins("t_end", -0.5, 0.5, 10));
    } else if (f.name == "duration") {
      net.spec.variables.push_back(uniform_bins("duration", 2.0, 10.0, 8));
    } else if (f.name == "s_total") {
      net.spec.variables.push_back(uniform_bins("s_total", 36.0, 50.0, 7));
    } else if (f.name == "tau_apex") {
      net.spec.variables.push_back(uniform_bins("tau_apex", 0.3, 0.7, 8));
    }
  }
  net.dag = bayesnet::Dag(names, roles);
  const auto edge = [&](const char * a, const char * b) { net.dag.add_edge(a, b); };
  edge("maneuver", "conflict_present");
  edge("maneuver", "v_entry");
  edge("crosswalk_present", "v_entry");
  edge("maneuver", "v_min");
  edge("conflict_present", "v_min");
  edge("maneuver", "v_exit");
  edge("maneuver", "t_apex");
  edge("conflict_present", "t_apex");
  edge("construction_site", "t_apex");
  edge("maneuver", "t_end");
  edge("maneuver", "s_total");
  edge("maneuver", "tau_apex");
  net.cpt.alpha = 0.0;
  net.cpt.nodes.resize(names.size());

  const std::vector<double> wide{0.1, 0.2, 0.4, 0.2, 0.1};
  const std::vector<double> narrow{0.25, 0.5, 0.25};
  // maneuver codes: 0 left, 1 right, 2 straight.
  fill_cpt(net, "maneuver", [](const auto &) { return std::vector<double>(3, 1.0 / 3.0); });
  fill_cpt(net, "conflict_present", [](const auto & pa) {
    const double p = std::vector<double>{0.35, 0.25, 0.15}[pa[0]];
    return std::vector<double>{1.0 - p, p};
  });
  fill_cpt(net, "crosswalk_present", [](const auto &) { return std::vector<double>{0.5, 0.5}; });
  fill_cpt(net, "construction_site", [](const auto &) {
    return std::vector<double>{0.6, 0.2, 0.2};
  });
  fill_cpt(net, "arm_angle", [](const auto &) { return std::vector<double>(3, 1.0 / 3.0); });
  fill_cpt(net, "lane_width", [](const auto &) { return std::vector<double>(3, 1.0 / 3.0); });
  fill_cpt(net, "v_entry", [&](const auto & pa) {
    // parents: maneuver, crosswalk_present
    const long base = std::vector<long>{4, 3, 7}[pa[0]];
    return peaked(10, base - static_cast<long>(pa[1]), wide);
  });
  fill_cpt(net, "v_min", [&](const auto & pa) {
    // parents: maneuver, conflict_present
    const long base = std::vector<long>{4, 3, 7}[pa[0]];
    return peaked(10, base - 2 * static_cast<long>(pa[1]), narrow);
  });
  fill_cpt(net, "v_exit", [&](const auto & pa) {
    return peaked(10, std::vector<long>{5, 4, 7}[pa[0]], wide);
  });
  fill_cpt(net, "t_start", [](const auto &) {
    return std::vector<double>{0.1, 0.2, 0.2, 0.2, 0.2, 0.1};
  });
  fill_cpt(net, "t_apex", [&](const auto & pa) {
    // parents: maneuver, conflict_present, construction_site
    const long base = std::vector<long>{19, 12, 15}[pa[0]];
    const long shift = 3 * static_cast<long>(pa[1]) - std::vector<long>{0, 2, 4}[pa[2]];
    return peaked(30, base + shift, wide);
  });
  fill_cpt(net, "t_end", [&](const auto & pa) {
    return peaked(10, std::vector<long>{5, 4, 5}[pa[0]], narrow);
  });
  fill_cpt(net, "duration", [](const auto &) { return std::vector<double>(8, 1.0 / 8.0); });
  fill_cpt(net, "s_total", [](const auto & pa) {
    const std::size_t lo = std::vector<std::size_t>{1, 0, 2}[pa[0]];
    const std::size_t hi = std::vector<std::size_t>{5, 3, 6}[pa[0]];
    return uniform_over(7, lo, hi);
  });
  fill_cpt(net, "tau_apex", [&](const auto & pa) {
    if (pa[0] == 2) {
      return std::vector<double>(8, 1.0 / 8.0);
    }
    return peaked(8, std::vector<long>{3, 4, 4}[pa[0]], narrow);
  });
  net.validate();
  return net;
}

/// Straight run, circular arc turning by `turn_deg` (positive left), straight
/// run; the arc is split into `arc_segments` chords.
inline geometry::Polyline turn_path(
  const geometry::Point2 start, const double heading_deg, const double turn_deg,
  const double radius, const double run = 20.0, const std::size_t arc_segments = 24)
{
  const double deg = M_PI / 180.0;
  double h = heading_deg * deg;
  std::vector<geometry::Point2> pts{start};
  geometry::Point2 p{start.x + run * std::cos(h), start.y + run * std::sin(h)};
  pts.push_back(p);
  if (turn_deg != 0.0) {
    const double side = turn_deg > 0.0 ? 1.0 : -1.0;
    const geometry::Point2 center{
      p.x - side * radius * std::sin(h), p.y + side * radius * std::cos(h)};
    const double a0 = std::atan2(p.y - center.y, p.x - center.x);
    for (std::size_t k = 1; k <= arc_segments; ++k) {
      const double a = a0 + turn_deg * deg * static_cast<double>(k) / static_cast<double>(arc_segments);
      pts.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    h += turn_deg * deg;
    p = pts.back();
  } else {
    p = {p.x + radius * std::cos(h), p.y + radius * std::sin(h)};
    pts.push_back(p);
  }
  pts.push_back({p.x + run * std::cos(h), p.y + run * std::sin(h)});
  return geometry::Polyline(pts);
}

inline ArmGeometry demo_arm(
  const std::string & id, const Maneuver m, const double turn_deg, const bool crosswalk,
  const ConstructionSite cs, const double lane_width)
{
  ArmGeometry arm;
  arm.id = id;
  arm.maneuver = m;
  const double radius = m == Maneuver::right_turn ? 9.0 : 12.0;
  arm.centerline = turn_path({0.0, 0.0}, 0.0, turn_deg, m == Maneuver::straight ? 20.0 : radius);
  arm.arm_angle = arm_angle_from_centerline(arm.centerline);
  arm.crosswalk_present = crosswalk;
  arm.construction_site = cs;
  arm.lane_width = lane_width;
  return arm;
}

/// Three intersections sharing the demo mechanism. Across A and B every
/// (maneuver, construction) pair occurs and crosswalks vary independently of
/// construction; each arm of C carries an attribute combination no training
/// arm has.
inline std::vector<LaneMap> demo_maps()
{
  using CS = ConstructionSite;
  using M = Maneuver;
  LaneMap a{"A", {demo_arm("A_left", M::left_turn, 90.0, true, CS::none, 3.5),
                  demo_arm("A_left_2", M::left_turn, 90.0, false, CS::far_side, 3.5),
                  demo_arm("A_right", M::right_turn, -90.0, false, CS::near_side, 3.5),
                  demo_arm("A_straight", M::straight, 0.0, true, CS::far_side, 3.5)}};
  LaneMap b{"B", {demo_arm("B_left", M::left_turn, 80.0, false, CS::near_side, 3.0),
                  demo_arm("B_right", M::right_turn, -90.0, true, CS::far_side, 3.0),
                  demo_arm("B_right_2", M::right_turn, -90.0, false, CS::none, 3.0),
                  demo_arm("B_straight", M::straight, 0.0, false, CS::none, 3.0),
                  demo_arm("B_straight_2", M::straight, 0.0, true, CS::near_side, 3.0)}};
  LaneMap c{"C", {demo_arm("C_left", M::left_turn, 85.0, true, CS::far_side, 3.25),
                  demo_arm("C_right", M::right_turn, -90.0, true, CS::none, 3.25),
                  demo_arm("C_straight", M::straight, 0.0, false, CS::far_side, 3.25)}};
  return {a, b, c};
}

inline SyntheticWorldSpec demo_world_spec(const std::uint64_t seed = 7, const std::size_t samples_per_arm = 150)
{
  SyntheticWorldSpec spec;
  spec.truth_net = demo_truth_net();
  spec.maps = demo_maps();
  spec.samples_per_arm = samples_per_arm;
  spec.noise_sigma = 0.05;
  spec.seed = seed;
  return spec;
}

/// One intersection with an arm for every (maneuver, construction) pair, so
/// every parent configuration of t_apex is observed. Crosswalks alternate.
inline std::vector<LaneMap> effect_maps()
{
  using CS = ConstructionSite;
  using M = Maneuver;
  LaneMap p{"P", {}};
  bool crosswalk = true;
  for (const auto m : {M::left_turn, M::right_turn, M::straight}) {
    const double turn = m == M::left_turn ? 90.0 : (m == M::right_turn ? -90.0 : 0.0);
    for (const auto cs : {CS::none, CS::near_side, CS::far_side}) {
      const std::string id =
        std::string(1, maneuver_letter(m)) + "_" + std::string(to_string(cs));
      p.arms.push_back(demo_arm(id, m, turn, crosswalk, cs, 3.5));
      crosswalk = !crosswalk;
    }
  }
  return {p};
}

inline SyntheticWorldSpec effect_world_spec(const std::uint64_t seed = 11, const std::size_t samples_per_arm = 556)
{
  auto spec = demo_world_spec(seed, samples_per_arm);
  spec.maps = effect_maps();
  return spec;
}

}  // namespace scenario_bn::harness

#endif  // SCENARIO_BN__HARNESS__DEMO_HPP_
