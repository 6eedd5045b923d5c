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

#ifndef SCENARIO_BN__BAYESNET__NETWORK_IO_HPP_
#define SCENARIO_BN__BAYESNET__NETWORK_IO_HPP_

#include "scenario_bn/bayesnet/network.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace scenario_bn::bayesnet
{

inline constexpr const char * kNetworkFormat = "scenario_bn/network";

inline nlohmann::json to_json(const VariableSpec & v, const Role role)
{
  nlohmann::json j;
  j["name"] = v.name;
  j["role"] = std::string(to_string(role));
  j["cardinality"] = v.cardinality();
  if (v.categorical) {
    j["kind"] = "categorical";
    j["labels"] = v.labels;
  } else {
    j["kind"] = "continuous";
    j["boundaries"] = v.boundaries;
    j["min"] = v.min;
    j["max"] = v.max;
    j["bin_means"] = v.bin_means;
  }
  return j;
}

inline nlohmann::json to_json(const CausalNet & net)
{
  nlohmann::json j;
  j["format"] = kNetworkFormat;
  j["version"] = 1;
  j["alpha"] = net.cpt.alpha;
  j["nodes"] = nlohmann::json::array();
  for (std::size_t v = 0; v < net.size(); ++v) {
    j["nodes"].push_back(to_json(net.spec.variables[v], net.dag.role(v)));
  }
  j["edges"] = nlohmann::json::array();
  for (const auto & [a, b] : net.dag.edges()) {
    j["edges"].push_back({net.dag.name(a), net.dag.name(b)});
  }
  j["cpts"] = nlohmann::json::array();
  for (std::size_t v = 0; v < net.size(); ++v) {
    const auto & node = net.cpt.nodes[v];
    nlohmann::json c;
    c["node"] = net.dag.name(v);
    c["parents"] = nlohmann::json::array();
    for (const auto p : node.parents) {
      c["parents"].push_back(net.dag.name(p));
    }
    c["rows"] = nlohmann::json::array();
    for (std::size_t r = 0; r < node.configurations(); ++r) {
      c["rows"].push_back(std::vector<double>(
        node.table.begin() + static_cast<std::ptrdiff_t>(r * node.cardinality),
        node.table.begin() + static_cast<std::ptrdiff_t>((r + 1) * node.cardinality)));
    }
    j["cpts"].push_back(std::move(c));
  }
  if (!net.spec.reductions.empty()) {
    j["bin_reductions"] = nlohmann::json::array();
    for (const auto & r : net.spec.reductions) {
      j["bin_reductions"].push_back(
        {{"variable", r.variable}, {"requested", r.requested}, {"used", r.used}});
    }
  }
  return j;
}

/// Parses and validates a network document.
inline CausalNet network_from_json(const nlohmann::json & j)
{
  if (j.value("format", "") != kNetworkFormat) {
    throw std::invalid_argument("not a network document (format != scenario_bn/network)");
  }
  std::vector<std::string> names;
  std::vector<Role> roles;
  CausalNet net;
  for (const auto & n : j.at("nodes")) {
    VariableSpec v;
    v.name = n.at("name").get<std::string>();
    const std::string kind = n.at("kind").get<std::string>();
    if (kind == "categorical") {
      v.categorical = true;
      v.labels = n.at("labels").get<std::vector<std::string>>();
    } else if (kind == "continuous") {
      v.boundaries = n.at("boundaries").get<std::vector<double>>();
      v.min = n.at("min").get<double>();
      v.max = n.at("max").get<double>();
      v.bin_means = n.at("bin_means").get<std::vector<double>>();
      for (std::size_t i = 1; i < v.boundaries.size(); ++i) {
        if (!(v.boundaries[i - 1] < v.boundaries[i])) {
          throw std::invalid_argument("boundaries of '" + v.name + "' not strictly increasing");
        }
      }
      if (v.bin_means.size() != v.cardinality()) {
        throw std::invalid_argument("bin_means of '" + v.name + "' has wrong length");
      }
    } else {
      throw std::invalid_argument("unknown node kind '" + kind + "'");
    }
    if (n.contains("cardinality") && n.at("cardinality").get<std::size_t>() != v.cardinality()) {
      throw std::invalid_argument("declared cardinality of '" + v.name + "' is inconsistent");
    }
    names.push_back(v.name);
    roles.push_back(role_from_string(n.at("role").get<std::string>()));
    net.spec.variables.push_back(std::move(v));
  }
  net.dag = Dag(names, roles);
  net.cpt.alpha = j.value("alpha", 1.0);
  net.cpt.nodes.resize(names.size());

  std::vector<char> seen(names.size(), 0);
  for (const auto & c : j.at("cpts")) {
    const std::size_t v = net.dag.index_of(c.at("node").get<std::string>());
    if (seen[v]) {
      throw std::invalid_argument("duplicate CPT for '" + names[v] + "'");
    }
    seen[v] = 1;
    std::vector<std::size_t> parents;
    for (const auto & p : c.at("parents")) {
      parents.push_back(net.dag.index_of(p.get<std::string>()));
    }
    net.dag.set_parents(v, parents);
    set_node_cpt(net, v, c.at("rows").get<std::vector<std::vector<double>>>());
  }
  for (std::size_t v = 0; v < names.size(); ++v) {
    if (!seen[v]) {
      throw std::invalid_argument("missing CPT for '" + names[v] + "'");
    }
  }
  // Edge list is informational; it must agree with the CPT parents.
  if (j.contains("edges")) {
    std::size_t count = 0;
    for (const auto & e : j.at("edges")) {
      const auto a = net.dag.index_of(e.at(0).get<std::string>());
      const auto b = net.dag.index_of(e.at(1).get<std::string>());
      if (!net.dag.has_edge(a, b)) {
        throw std::invalid_argument("edge list disagrees with CPT parents");
      }
      ++count;
    }
    if (count != net.dag.edge_count()) {
      throw std::invalid_argument("edge list disagrees with CPT parents");
    }
  }
  if (j.contains("bin_reductions")) {
    for (const auto & r : j.at("bin_reductions")) {
      net.spec.reductions.push_back(
        {r.at("variable").get<std::string>(), r.at("requested").get<std::size_t>(),
         r.at("used").get<std::size_t>()});
    }
  }
  net.validate();
  return net;
}

}  // namespace scenario_bn::bayesnet

#endif  // SCENARIO_BN__BAYESNET__NETWORK_IO_HPP_
