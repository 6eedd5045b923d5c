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

#ifndef SCENARIO_BN__HARNESS__SYNTHETIC_WORLD_HPP_
#define SCENARIO_BN__HARNESS__SYNTHETIC_WORLD_HPP_

#include "scenario_bn/bayesnet/network_io.hpp"
#include "scenario_bn/generate/sampling.hpp"
#include "scenario_bn/harness/config_io.hpp"
#include "scenario_bn/harness/trajectory_csv.hpp"
#include "scenario_bn/trajectory/param_vector.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace scenario_bn::harness
{

using bayesnet::CausalNet;

struct SyntheticWorldSpec
{
  /// Planted mechanism over all 15 parameter nodes.
  CausalNet truth_net;
  std::vector<LaneMap> maps;
  std::size_t samples_per_arm{100};
  double noise_sigma{0.0};
  std::uint64_t seed{0};
  double frame_rate{25.0};
  /// Written next to the data; empty means the default prior knowledge.
  std::optional<nlohmann::json> constraints;

  void validate() const
  {
    truth_net.validate();
    for (const auto & f : param_fields()) {
      if (!truth_net.dag.find(f.name)) {
        throw std::invalid_argument(
          "planted network lacks parameter node '" + std::string(f.name) + "'");
      }
    }
    if (maps.empty()) {
      throw std::invalid_argument("synthetic world needs at least one lane map");
    }
    if (samples_per_arm == 0) {
      throw std::invalid_argument("samples_per_arm must be positive");
    }
    if (!(noise_sigma >= 0.0) || !(frame_rate > 0.0)) {
      throw std::invalid_argument("noise_sigma must be >= 0 and frame_rate > 0");
    }
  }
};

struct WorldTrack
{
  std::string intersection_id;
  std::string arm_id;
  std::string track_id;
  /// Parameters after kinematic consistency adjustments; extraction of a
  /// noise-free track returns exactly these direct values.
  ParamVector params;
  /// Noise-free Frenet trajectory.
  FrenetTrajectory trajectory;
};

struct SyntheticWorld
{
  std::vector<LaneMap> maps;
  std::vector<WorldTrack> tracks;
  /// CSV rows per intersection id.
  std::map<std::string, std::vector<TrajectoryCsvRow>> csv;
  std::size_t rows_drawn{0};
  std::size_t rows_rejected{0};
};

/// Prior knowledge used when a world spec carries no constraints:
/// infrastructure attributes and the maneuver have no parents, the conflict
/// flag is not caused by driving parameters, and the maneuver shapes v_min.
inline nlohmann::json default_constraints_json()
{
  nlohmann::json forbidden = nlohmann::json::array();
  for (const auto & f : param_fields()) {
    if (f.role == Role::direct) {
      forbidden.push_back({std::string(f.name), "conflict_present"});
    }
  }
  return {
    {"roots", {"maneuver", "crosswalk_present", "construction_site", "arm_angle", "lane_width"}},
    {"required", nlohmann::json::array({nlohmann::json::array({"maneuver", "v_min"})})},
    {"forbidden", forbidden}};
}

namespace detail
{

/// Lifts a discrete row of the planted net into a kinematically consistent
/// parameter vector for `arm`, or nothing if no draw fits the path.
///
/// The duration follows from s_total and the piecewise-linear speed
/// profile, then snaps to whole frames; tau_apex snaps to a frame (0.5 for
/// straight maneuvers) and s_total is recomputed so the profile stays exact.
inline std::optional<ParamVector> lift_world_row(
  const CausalNet & net, const std::vector<int> & row, const ArmGeometry & arm, const Maneuver m,
  const double frame_rate, Rng & rng)
{
  const auto value = [&](const char * name) {
    const auto v = net.dag.index_of(name);
    return bayesnet::continuous_from_bin(net.spec.variables[v], static_cast<std::size_t>(row[v]), rng);
  };
  const double path_length = arm.centerline.length();
  for (int attempt = 0; attempt < 100; ++attempt) {
    ParamVector p;
    p.maneuver = m;
    p.conflict_present = row[net.dag.index_of("conflict_present")] == 1;
    p.crosswalk_present = arm.crosswalk_present;
    p.construction_site = arm.construction_site;
    p.arm_angle = arm.arm_angle;
    p.lane_width = arm.lane_width;
    p.v_entry = value("v_entry");
    p.v_min = value("v_min");
    p.v_exit = value("v_exit");
    p.t_start = value("t_start");
    p.t_apex = value("t_apex");
    p.t_end = value("t_end");
    p.s_total = value("s_total");
    p.tau_apex = m == Maneuver::straight ? 0.5 : value("tau_apex");
    if (!(p.v_min >= 0.0 && p.v_min <= std::min(p.v_entry, p.v_exit))) {
      continue;
    }
    const double mean_speed =
      0.5 * (p.tau_apex * (p.v_entry + p.v_min) + (1.0 - p.tau_apex) * (p.v_min + p.v_exit));
    if (!(mean_speed > 0.1)) {
      continue;
    }
    auto frames = std::max<long>(4, std::lround(p.s_total / mean_speed * frame_rate));
    if (m == Maneuver::straight && frames % 2 == 1) {
      ++frames;
    }
    const long apex = m == Maneuver::straight
                        ? frames / 2
                        : std::clamp<long>(std::lround(p.tau_apex * static_cast<double>(frames)), 1, frames - 1);
    p.duration = static_cast<double>(frames) / frame_rate;
    p.tau_apex = static_cast<double>(apex) / static_cast<double>(frames);
    p.s_total = profile_distance(p);
    if (satisfies_invariants(p) && p.s_total <= path_length) {
      return p;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Samples parameters from the planted net for every arm (arm attributes as
/// evidence), synthesizes trajectories and noisy CSV rows. Deterministic in
/// the seed.
inline SyntheticWorld generate_synthetic_world(const SyntheticWorldSpec & spec)
{
  spec.validate();
  SyntheticWorld world;
  world.maps = spec.maps;
  Rng rng(spec.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uint64_t stream = 0;
  for (const auto & map : spec.maps) {
    auto & rows = world.csv[map.intersection_id];
    std::size_t track_no = 0;
    for (const auto & arm : map.arms) {
      const Maneuver m = maneuver_of(arm);
      const auto ev = generate::evidence_from_arm(spec.truth_net, arm, m);
      std::size_t made = 0;
      std::size_t attempts = 0;
      while (made < spec.samples_per_arm) {
        if (attempts > 20 * spec.samples_per_arm) {
          throw std::runtime_error(
            "planted network yields too few valid parameter draws for arm '" + arm.id + "'");
        }
        const auto drawn =
          generate::sample_with_evidence(spec.truth_net, ev, spec.samples_per_arm - made, rng);
        for (std::size_t r = 0; r < drawn.rows(); ++r) {
          ++world.rows_drawn;
          ++attempts;
          Rng lift(derive_seed(spec.seed, stream++));
          const auto p =
            detail::lift_world_row(spec.truth_net, drawn.row_vector(r), arm, m, spec.frame_rate, lift);
          if (!p) {
            ++world.rows_rejected;
            continue;
          }
          const auto knots = knots_from_params(*p, 0.0);
          const auto frames = static_cast<std::size_t>(std::lround(p->duration * spec.frame_rate));
          WorldTrack tr;
          tr.intersection_id = map.intersection_id;
          tr.arm_id = arm.id;
          tr.track_id = std::to_string(++track_no);
          tr.params = *p;
          tr.trajectory = reconstruct_trajectory(knots, frames + 1, m);
          const auto & path = arm.centerline;
          for (std::size_t i = 0; i <= frames; ++i) {
            const auto & smp = tr.trajectory.samples[i];
            const double tau = i == frames ? 1.0 : static_cast<double>(i) / static_cast<double>(frames);
            const auto st = evaluate(knots, tau);
            const auto pos = geometry::frenet_to_cartesian_clamped(path, {smp.s, smp.t});
            const auto tan = geometry::tangent_at(path, smp.s);
            const auto nrm = geometry::left_normal_at(path, smp.s);
            const double vs = st.ds / p->duration;
            const double vt = st.dt / p->duration;
            TrajectoryCsvRow row;
            row.recording_id = "1";
            row.track_id = tr.track_id;
            row.frame = static_cast<std::int64_t>(i);
            row.x_center = pos.x + (spec.noise_sigma > 0.0 ? spec.noise_sigma * noise(lift) : 0.0);
            row.y_center = pos.y + (spec.noise_sigma > 0.0 ? spec.noise_sigma * noise(lift) : 0.0);
            row.x_velocity = vs * tan.x + vt * nrm.x;
            row.y_velocity = vs * tan.y + vt * nrm.y;
            row.conflict_present = p->conflict_present;
            row.maneuver = m;
            row.arm_id = arm.id;
            rows.push_back(row);
          }
          world.tracks.push_back(std::move(tr));
          ++made;
        }
      }
    }
  }
  return world;
}

inline nlohmann::json to_json(const SyntheticWorldSpec & spec)
{
  nlohmann::json maps = nlohmann::json::array();
  for (const auto & m : spec.maps) {
    maps.push_back(to_json(m));
  }
  nlohmann::json j{
    {"truth_net", bayesnet::to_json(spec.truth_net)},
    {"maps", maps},
    {"samples_per_arm", spec.samples_per_arm},
    {"noise_sigma", spec.noise_sigma},
    {"seed", spec.seed},
    {"frame_rate", spec.frame_rate}};
  if (spec.constraints) {
    j["constraints"] = *spec.constraints;
  }
  return j;
}

inline SyntheticWorldSpec world_spec_from_json(const nlohmann::json & j)
{
  SyntheticWorldSpec spec;
  spec.truth_net = bayesnet::network_from_json(j.at("truth_net"));
  for (const auto & m : j.at("maps")) {
    spec.maps.push_back(lane_map_from_json(m));
  }
  spec.samples_per_arm = j.at("samples_per_arm").get<std::size_t>();
  spec.noise_sigma = j.value("noise_sigma", 0.0);
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.frame_rate = j.value("frame_rate", 25.0);
  if (j.contains("constraints")) {
    spec.constraints = j.at("constraints");
  }
  spec.validate();
  return spec;
}

/// Writes `<id>.csv` and `<id>.map.json` per intersection plus
/// truth_net.json, constraints.json and world_spec.json.
inline void write_synthetic_world(
  const SyntheticWorldSpec & spec, const SyntheticWorld & world, const std::filesystem::path & dir)
{
  std::filesystem::create_directories(dir);
  for (const auto & map : world.maps) {
    write_text_file_atomic(dir / (map.intersection_id + ".csv"), to_csv(world.csv.at(map.intersection_id)));
    save_lane_map(map, dir / (map.intersection_id + ".map.json"));
  }
  write_json_file(dir / "truth_net.json", bayesnet::to_json(spec.truth_net));
  write_json_file(dir / "constraints.json", spec.constraints.value_or(default_constraints_json()));
  write_json_file(dir / "world_spec.json", to_json(spec));
}

}  // namespace scenario_bn::harness

#endif  // SCENARIO_BN__HARNESS__SYNTHETIC_WORLD_HPP_
