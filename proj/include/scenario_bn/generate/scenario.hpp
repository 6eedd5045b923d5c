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

#ifndef SCENARIO_BN__GENERATE__SCENARIO_HPP_
#define SCENARIO_BN__GENERATE__SCENARIO_HPP_

#include "scenario_bn/bayesnet/network_io.hpp"
#include "scenario_bn/generate/sampling.hpp"
#include "scenario_bn/trajectory/param_vector.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace scenario_bn::generate
{

struct Provenance
{
  std::uint64_t seed{0};
  std::size_t index{0};
  std::string net_version;
  std::string arm_id;
  Evidence evidence;

  friend bool operator==(const Provenance &, const Provenance &) = default;
};

struct GeneratedScenario
{
  ParamVector params;
  FrenetTrajectory trajectory;
  Provenance provenance;

  friend bool operator==(const GeneratedScenario &, const GeneratedScenario &) = default;
};

struct GenerationOptions
{
  double frame_rate{25.0};
  /// Re-draws within the same bins before a row is rejected.
  std::size_t max_redraws{100};
  /// Direct nodes that may nevertheless carry evidence.
  std::set<std::string> whitelist;
  SamplingOptions sampling;
};

struct GenerationResult
{
  std::vector<GeneratedScenario> scenarios;
  Evidence evidence;
  std::size_t rows_drawn{0};
  std::size_t rows_rejected{0};

  double rejection_rate() const
  {
    return rows_drawn ? static_cast<double>(rows_rejected) / static_cast<double>(rows_drawn) : 0.0;
  }
};

/// Stable identifier of a network: 64-bit FNV-1a of its JSON text.
inline std::string net_version(const CausalNet & net)
{
  const std::string text = bayesnet::to_json(net).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Continuous parameters for one discrete row, or nothing when no draw within
/// the row's bins satisfies the parameter invariants and yields forward
/// motion along the path.
inline std::optional<ParamVector> lift_row(
  const CausalNet & net, const std::vector<int> & row, const ArmGeometry & arm, const Maneuver m,
  const std::size_t max_redraws, Rng & rng)
{
  ParamVector base;
  base.maneuver = m;
  base.crosswalk_present = arm.crosswalk_present;
  base.construction_site = arm.construction_site;
  base.arm_angle = arm.arm_angle;
  base.lane_width = arm.lane_width;
  if (const auto c = net.dag.find("conflict_present")) {
    base.conflict_present = row[*c] == 1;
  }
  const auto & fields = param_fields();
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> columns;
  for (std::size_t f = 0; f < fields.size(); ++f) {
    if (fields[f].role != Role::direct) {
      continue;
    }
    const auto v = net.dag.find(fields[f].name);
    if (!v) {
      throw std::invalid_argument(
        "network lacks direct node '" + std::string(fields[f].name) + "'");
    }
    nodes.push_back(*v);
    columns.push_back(f);
  }
  for (std::size_t attempt = 0; attempt < max_redraws; ++attempt) {
    auto values = to_row(base);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      values[columns[i]] = bayesnet::continuous_from_bin(
        net.spec.variables[nodes[i]], static_cast<std::size_t>(row[nodes[i]]), rng);
    }
    const ParamVector p = from_row(values);
    if (satisfies_invariants(p) && moves_forward(knots_from_params(p, 0.0))) {
      return p;
    }
  }
  return std::nullopt;
}

/// Trajectory for a parameter vector on a uniform frame grid, starting at s=0.
inline FrenetTrajectory trajectory_from_params(const ParamVector & p, const double frame_rate)
{
  const auto n = static_cast<std::size_t>(std::lround(p.duration * frame_rate)) + 1;
  return reconstruct_trajectory(knots_from_params(p, 0.0), std::max<std::size_t>(n, 2), p.maneuver);
}

/// Scenarios for `arm` and maneuver `m`.
///
/// Evidence comes from the arm attributes plus `extra`. Discrete rows are
/// drawn jointly from the conditional; each row is lifted on its own rng
/// stream derived from (seed, index). Rows that cannot be lifted are replaced
/// by fresh draws, up to 10 n rows in total.
inline GenerationResult generate_scenarios(
  const CausalNet & net, const ArmGeometry & arm, const Maneuver m, const Evidence & extra,
  const std::size_t n, const std::uint64_t seed, const GenerationOptions & opts = {})
{
  if (!(opts.frame_rate > 0.0)) {
    throw std::invalid_argument("frame rate must be positive");
  }
  GenerationResult res;
  res.evidence = merge_evidence(evidence_from_arm(net, arm, m), extra);
  validate_evidence(net, res.evidence, opts.whitelist);
  const std::string version = net_version(net);

  Rng rng(seed);
  const std::size_t cap = 10 * n;
  while (res.scenarios.size() < n) {
    if (res.rows_drawn >= cap) {
      throw std::runtime_error(
        "too many rejected rows (" + std::to_string(res.rows_rejected) + " of " +
        std::to_string(res.rows_drawn) + ")");
    }
    const std::size_t batch = std::min(n - res.scenarios.size(), cap - res.rows_drawn);
    const auto rows = sample_with_evidence(net, res.evidence, batch, rng, opts.sampling);
    for (std::size_t r = 0; r < rows.rows(); ++r) {
      const std::size_t index = res.rows_drawn++;
      Rng lift_rng(derive_seed(seed, index));
      const auto p = lift_row(net, rows.row_vector(r), arm, m, opts.max_redraws, lift_rng);
      if (!p) {
        ++res.rows_rejected;
        continue;
      }
      GeneratedScenario sc;
      sc.params = *p;
      sc.trajectory = trajectory_from_params(*p, opts.frame_rate);
      sc.provenance = {seed, index, version, arm.id, res.evidence};
      res.scenarios.push_back(std::move(sc));
    }
  }
  return res;
}

}  // namespace scenario_bn::generate

#endif  // SCENARIO_BN__GENERATE__SCENARIO_HPP_
