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

#ifndef SCENARIO_BN__BAYESNET__NETWORK_HPP_
#define SCENARIO_BN__BAYESNET__NETWORK_HPP_

#include "scenario_bn/bayesnet/cpt.hpp"
#include "scenario_bn/bayesnet/dag.hpp"
#include "scenario_bn/bayesnet/discretization.hpp"
#include "scenario_bn/random.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace scenario_bn::bayesnet
{

/// Fitted causal Bayesian network: graph with node roles, the binning that
/// maps continuous parameters to node states, and the CPTs.
struct CausalNet
{
  Dag dag;
  DiscretizationSpec spec;
  Cpt cpt;

  std::size_t size() const { return dag.size(); }
  std::size_t cardinality(const std::size_t v) const { return cpt.nodes[v].cardinality; }

  std::vector<std::size_t> cardinalities() const
  {
    std::vector<std::size_t> out;
    for (const auto & n : cpt.nodes) {
      out.push_back(n.cardinality);
    }
    return out;
  }

  /// Throws when the graph, binning and CPTs disagree.
  void validate() const
  {
    if (spec.variables.size() != dag.size() || cpt.nodes.size() != dag.size()) {
      throw std::invalid_argument("network parts disagree on node count");
    }
    if (!dag.is_acyclic()) {
      throw std::invalid_argument("network graph is cyclic");
    }
    for (std::size_t v = 0; v < dag.size(); ++v) {
      if (spec.variables[v].name != dag.name(v)) {
        throw std::invalid_argument("binning order does not match node '" + dag.name(v) + "'");
      }
      const auto & n = cpt.nodes[v];
      if (n.cardinality != spec.variables[v].cardinality()) {
        throw std::invalid_argument("CPT cardinality mismatch at '" + dag.name(v) + "'");
      }
      if (n.parents != dag.parents(v)) {
        throw std::invalid_argument("CPT parents differ from graph at '" + dag.name(v) + "'");
      }
      for (std::size_t i = 0; i < n.parents.size(); ++i) {
        if (n.parent_cardinalities[i] != cpt.nodes[n.parents[i]].cardinality) {
          throw std::invalid_argument("parent cardinality mismatch at '" + dag.name(v) + "'");
        }
      }
    }
    check_cpt(cpt);
  }
};

/// Categorical binning for nets built by hand: node v has states 0..K_v-1.
inline DiscretizationSpec categorical_spec(
  const std::vector<std::string> & names, const std::vector<std::size_t> & cardinalities)
{
  DiscretizationSpec spec;
  for (std::size_t i = 0; i < names.size(); ++i) {
    VariableSpec v;
    v.name = names[i];
    v.categorical = true;
    for (std::size_t k = 0; k < cardinalities.at(i); ++k) {
      v.labels.push_back(std::to_string(k));
    }
    spec.variables.push_back(std::move(v));
  }
  return spec;
}

/// Sets the CPT of node v from rows indexed by parent configuration.
inline void set_node_cpt(CausalNet & net, const std::size_t v, const std::vector<std::vector<double>> & rows)
{
  auto & node = net.cpt.nodes.at(v);
  node.parents = net.dag.parents(v);
  node.parent_cardinalities.clear();
  for (const auto p : node.parents) {
    node.parent_cardinalities.push_back(net.spec.variables[p].cardinality());
  }
  node.cardinality = net.spec.variables[v].cardinality();
  if (rows.size() != node.configurations()) {
    throw std::invalid_argument("expected " + std::to_string(node.configurations()) + " CPT rows");
  }
  node.table.clear();
  for (const auto & r : rows) {
    if (r.size() != node.cardinality) {
      throw std::invalid_argument("CPT row width mismatch for '" + net.dag.name(v) + "'");
    }
    node.table.insert(node.table.end(), r.begin(), r.end());
  }
}

/// Network shell with the given graph and categorical nodes; CPTs are sized
/// but empty until set_node_cpt fills them.
inline CausalNet make_categorical_net(const Dag & dag, const std::vector<std::size_t> & cardinalities)
{
  CausalNet net;
  net.dag = dag;
  net.spec = categorical_spec(dag.names(), cardinalities);
  net.cpt.nodes.resize(dag.size());
  for (std::size_t v = 0; v < dag.size(); ++v) {
    auto & node = net.cpt.nodes[v];
    node.cardinality = cardinalities[v];
    node.parents = dag.parents(v);
    for (const auto p : node.parents) {
      node.parent_cardinalities.push_back(cardinalities[p]);
    }
  }
  return net;
}

/// Index of the state drawn from a probability row.
inline std::size_t sample_categorical(const double * probs, const std::size_t k, Rng & rng)
{
  const double u = unit_uniform(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    acc += probs[i];
    if (u < acc) {
      return i;
    }
  }
  // Skip trailing zero-probability states that rounding could otherwise hit.
  std::size_t last = k - 1;
  while (last > 0 && probs[last] <= 0.0) {
    --last;
  }
  return last;
}

/// Ancestral sampling in topological order.
inline DiscreteDataset sample_joint(const Dag & dag, const Cpt & cpt, const std::size_t n, Rng & rng)
{
  std::vector<std::size_t> cards;
  for (const auto & node : cpt.nodes) {
    cards.push_back(node.cardinality);
  }
  DiscreteDataset out(cards);
  out.reserve(n);
  const auto order = dag.topological_order();
  std::vector<int> row(dag.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (const std::size_t v : order) {
      const auto & node = cpt.nodes[v];
      const std::size_t j = node.config_index([&](const std::size_t p) { return row[p]; });
      row[v] = static_cast<int>(
        sample_categorical(node.table.data() + j * node.cardinality, node.cardinality, rng));
    }
    out.add_row(row);
  }
  return out;
}

inline DiscreteDataset sample_joint(const CausalNet & net, const std::size_t n, Rng & rng)
{
  return sample_joint(net.dag, net.cpt, n, rng);
}

}  // namespace scenario_bn::bayesnet

#endif  // SCENARIO_BN__BAYESNET__NETWORK_HPP_
