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

#ifndef SCENARIO_BN__CAUSAL__SIMPLIFY_HPP_
#define SCENARIO_BN__CAUSAL__SIMPLIFY_HPP_

#include "scenario_bn/causal/inference.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace scenario_bn::causal
{

struct AggregateNode
{
  std::string name;
  std::vector<std::string> members;
  /// Cluster member that carried the single boundary edge.
  std::string boundary_member;
  /// Direct node on the other end of that edge.
  std::string neighbor;
  bool input{false};
};

struct SimplifyResult
{
  CausalNet net;
  std::vector<std::string> removed;
  std::vector<AggregateNode> aggregates;
  /// Direct nodes left without any relation.
  std::vector<std::string> independent;
};

namespace detail
{

/// Connected components of the undirected graph induced by indirect nodes.
inline std::vector<std::vector<std::size_t>> indirect_clusters(const bayesnet::Dag & dag)
{
  const std::size_t n = dag.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (dag.role(s) != Role::indirect || comp[s] >= 0) {
      continue;
    }
    std::vector<std::size_t> members;
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (std::size_t u = 0; u < n; ++u) {
        if ((dag.has_edge(u, v) || dag.has_edge(v, u)) && dag.role(u) == Role::indirect &&
            comp[u] < 0) {
          comp[u] = comp[s];
          stack.push_back(u);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

/// Copy of `net` without `drop`, with node `slot` replaced by `agg`
/// (name, spec, parents and CPT rows given over the old indices).
struct Replacement
{
  std::size_t slot;
  bayesnet::VariableSpec spec;
  std::vector<std::size_t> parents;
  bayesnet::NodeCpt cpt;
};

inline CausalNet rebuild(
  const CausalNet & net, const std::set<std::size_t> & drop,
  const std::optional<Replacement> & rep)
{
  std::vector<std::size_t> remap(net.size(), static_cast<std::size_t>(-1));
  std::vector<std::string> names;
  std::vector<Role> roles;
  CausalNet out;
  for (std::size_t v = 0; v < net.size(); ++v) {
    if (drop.count(v)) {
      continue;
    }
    remap[v] = names.size();
    if (rep && rep->slot == v) {
      names.push_back(rep->spec.name);
      roles.push_back(Role::indirect);
      out.spec.variables.push_back(rep->spec);
    } else {
      names.push_back(net.dag.name(v));
      roles.push_back(net.dag.role(v));
      out.spec.variables.push_back(net.spec.variables[v]);
    }
  }
  out.dag = bayesnet::Dag(names, roles);
  out.cpt.alpha = net.cpt.alpha;
  for (std::size_t v = 0; v < net.size(); ++v) {
    if (drop.count(v)) {
      continue;
    }
    bayesnet::NodeCpt node = (rep && rep->slot == v) ? rep->cpt : net.cpt.nodes[v];
    for (auto & p : node.parents) {
      p = remap.at(p);
    }
    out.dag.set_parents(remap[v], node.parents);
    out.cpt.nodes.push_back(std::move(node));
  }
  for (const auto & r : net.spec.reductions) {
    if (out.dag.find(r.variable)) {
      out.spec.reductions.push_back(r);
    }
  }
  out.validate();
  return out;
}

}  // namespace detail

/// Direct/indirect reduction applied to a fixpoint:
///  - indirect clusters without any relation to the rest are removed;
///  - an indirect cluster of two or more nodes with exactly one boundary edge
///    collapses to one aggregate node carrying the boundary member's states
///    (its marginal for an outgoing edge, its conditional on the neighbor for
///    an incoming one), unless a member is listed in `vary_individually`;
///  - direct nodes are never removed.
inline SimplifyResult simplify_network(
  const CausalNet & input, const std::set<std::string> & vary_individually = {})
{
  input.validate();
  SimplifyResult res;
  res.net = input;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto & net = res.net;
    for (const auto & cluster : detail::indirect_clusters(net.dag)) {
      const std::set<std::size_t> members(cluster.begin(), cluster.end());
      std::vector<bayesnet::Edge> boundary;
      for (const auto & [a, b] : net.dag.edges()) {
        if (members.count(a) != members.count(b)) {
          boundary.emplace_back(a, b);
        }
      }
      if (boundary.empty()) {
        for (const auto v : cluster) {
          res.removed.push_back(net.dag.name(v));
        }
        res.net = detail::rebuild(net, members, std::nullopt);
        changed = true;
        break;
      }
      const bool flagged = std::any_of(cluster.begin(), cluster.end(), [&](const std::size_t v) {
        return vary_individually.count(net.dag.name(v)) > 0;
      });
      if (boundary.size() != 1 || cluster.size() < 2 || flagged) {
        continue;
      }
      const auto [a, b] = boundary.front();
      const bool input_edge = members.count(b) > 0;
      const std::size_t c = input_edge ? b : a;
      const std::size_t d = input_edge ? a : b;

      AggregateNode agg;
      agg.name = "aggregate[";
      for (std::size_t i = 0; i < cluster.size(); ++i) {
        agg.members.push_back(net.dag.name(cluster[i]));
        agg.name += (i ? "," : "") + net.dag.name(cluster[i]);
      }
      agg.name += "]";
      agg.boundary_member = net.dag.name(c);
      agg.neighbor = net.dag.name(d);
      agg.input = input_edge;

      detail::Replacement rep;
      rep.slot = c;
      rep.spec = net.spec.variables[c];
      rep.spec.name = agg.name;
      rep.cpt.cardinality = net.cardinality(c);
      if (input_edge) {
        // Only d feeds the cluster, so P(c | d) equals P(c | do(d)), which
        // stays defined for zero-probability states of d.
        rep.parents = {d};
        rep.cpt.parents = {d};
        rep.cpt.parent_cardinalities = {net.cardinality(d)};
        for (std::size_t x = 0; x < net.cardinality(d); ++x) {
          const auto p = query(net, c, {}, {{d, x}}).p;
          rep.cpt.table.insert(rep.cpt.table.end(), p.begin(), p.end());
        }
      } else {
        rep.cpt.table = marginal(net, c);
      }
      std::set<std::size_t> drop(members);
      drop.erase(c);
      res.aggregates.push_back(agg);
      res.net = detail::rebuild(net, drop, rep);
      changed = true;
      break;
    }
  }
  for (std::size_t v = 0; v < res.net.size(); ++v) {
    if (res.net.dag.role(v) == Role::direct && res.net.dag.parents(v).empty() &&
        res.net.dag.children(v).empty()) {
      res.independent.push_back(res.net.dag.name(v));
    }
  }
  return res;
}

inline nlohmann::json to_json(const SimplifyResult & r)
{
  nlohmann::json j;
  j["removed"] = r.removed;
  j["independent"] = r.independent;
  j["aggregates"] = nlohmann::json::array();
  for (const auto & a : r.aggregates) {
    j["aggregates"].push_back(
      {{"name", a.name},
       {"members", a.members},
       {"boundary_member", a.boundary_member},
       {"neighbor", a.neighbor},
       {"direction", a.input ? "input" : "output"}});
  }
  return j;
}

}  // namespace scenario_bn::causal

#endif  // SCENARIO_BN__CAUSAL__SIMPLIFY_HPP_
