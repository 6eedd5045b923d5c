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

#ifndef SCENARIO_BN__GENERATE__EVIDENCE_HPP_
#define SCENARIO_BN__GENERATE__EVIDENCE_HPP_

#include "scenario_bn/bayesnet/network.hpp"
#include "scenario_bn/causal/inference.hpp"
#include "scenario_bn/geometry/lane_map.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace scenario_bn::generate
{

using bayesnet::CausalNet;

/// Node name -> fixed state.
using Evidence = std::map<std::string, std::size_t>;

/// Throws unless every evidence node exists, its state is in range and it is
/// indirect or explicitly whitelisted.
inline void validate_evidence(
  const CausalNet & net, const Evidence & ev, const std::set<std::string> & whitelist = {})
{
  for (const auto & [name, value] : ev) {
    const auto v = net.dag.find(name);
    if (!v) {
      throw std::invalid_argument("evidence node '" + name + "' is not in the network");
    }
    if (value >= net.cardinality(*v)) {
      throw std::out_of_range(
        "evidence value " + std::to_string(value) + " outside the states of '" + name + "'");
    }
    if (net.dag.role(*v) != Role::indirect && !whitelist.count(name)) {
      throw std::invalid_argument(
        "evidence on direct node '" + name + "' requires an explicit whitelist entry");
    }
  }
}

inline causal::Assignment to_assignment(const CausalNet & net, const Evidence & ev)
{
  causal::Assignment a;
  for (const auto & [name, value] : ev) {
    a[net.dag.index_of(name)] = value;
  }
  return a;
}

/// Evidence implied by the target arm and maneuver, restricted to nodes the
/// network has. Continuous attributes map to the bin that holds them; values
/// outside the training range fall into the end bins.
inline Evidence evidence_from_arm(const CausalNet & net, const ArmGeometry & arm, const Maneuver m)
{
  arm.validate();
  Evidence ev;
  const auto put = [&](const std::string & name, const double value) {
    if (const auto v = net.dag.find(name)) {
      ev[name] = static_cast<std::size_t>(bayesnet::discretize_value(net.spec.variables[*v], value));
    }
  };
  put("maneuver", static_cast<double>(m));
  put("crosswalk_present", arm.crosswalk_present ? 1.0 : 0.0);
  put("construction_site", static_cast<double>(arm.construction_site));
  put("arm_angle", arm.arm_angle);
  put("lane_width", arm.lane_width);
  return ev;
}

/// Adds `extra` on top of `base`; a node fixed to different values is an error.
inline Evidence merge_evidence(Evidence base, const Evidence & extra)
{
  for (const auto & [name, value] : extra) {
    const auto [it, inserted] = base.emplace(name, value);
    if (!inserted && it->second != value) {
      throw std::invalid_argument("conflicting evidence for '" + name + "'");
    }
  }
  return base;
}

}  // namespace scenario_bn::generate

#endif  // SCENARIO_BN__GENERATE__EVIDENCE_HPP_
