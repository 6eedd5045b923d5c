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

#ifndef SCENARIO_BN__BAYESNET__CPT_HPP_
#define SCENARIO_BN__BAYESNET__CPT_HPP_

#include "scenario_bn/bayesnet/dag.hpp"
#include "scenario_bn/bayesnet/dataset.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace scenario_bn::bayesnet
{

/// P(node = k | parent configuration j), stored row-major as table[j * K + k].
/// Configurations are mixed-radix over the parents in order, last parent
/// varying fastest.
struct NodeCpt
{
  std::size_t cardinality{0};
  std::vector<std::size_t> parents;
  std::vector<std::size_t> parent_cardinalities;
  std::vector<double> table;

  std::size_t configurations() const
  {
    std::size_t q = 1;
    for (const auto c : parent_cardinalities) {
      q *= c;
    }
    return q;
  }

  template <class ValueOf>
  std::size_t config_index(ValueOf && value_of) const
  {
    std::size_t j = 0;
    for (std::size_t i = 0; i < parents.size(); ++i) {
      j = j * parent_cardinalities[i] + static_cast<std::size_t>(value_of(parents[i]));
    }
    return j;
  }

  double prob(const std::size_t k, const std::size_t j) const { return table[j * cardinality + k]; }

  friend bool operator==(const NodeCpt &, const NodeCpt &) = default;
};

struct Cpt
{
  std::vector<NodeCpt> nodes;
  double alpha{1.0};

  friend bool operator==(const Cpt &, const Cpt &) = default;
};

/// Count table N[j * K + k] of one family.
inline std::vector<double> family_counts(
  const DiscreteDataset & data, const std::size_t node, const std::vector<std::size_t> & parents)
{
  std::size_t q = 1;
  for (const auto p : parents) {
    q *= data.cardinality(p);
  }
  const std::size_t k_card = data.cardinality(node);
  std::vector<double> counts(q * k_card, 0.0);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const int * row = data.row(r);
    std::size_t j = 0;
    for (const auto p : parents) {
      j = j * data.cardinality(p) + static_cast<std::size_t>(row[p]);
    }
    counts[j * k_card + static_cast<std::size_t>(row[node])] += 1.0;
  }
  return counts;
}

/// Smoothed estimates P(k|j) = (N_jk + alpha) / (N_j + alpha * K).
/// alpha = 0 on an unseen parent configuration is an error.
inline Cpt fit_cpts(const Dag & dag, const DiscreteDataset & data, const double alpha)
{
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("pseudo-count alpha must be >= 0");
  }
  if (data.columns() != dag.size()) {
    throw std::invalid_argument("dataset columns do not match graph nodes");
  }
  Cpt cpt;
  cpt.alpha = alpha;
  cpt.nodes.resize(dag.size());
  for (std::size_t v = 0; v < dag.size(); ++v) {
    NodeCpt & node = cpt.nodes[v];
    node.cardinality = data.cardinality(v);
    node.parents = dag.parents(v);
    for (const auto p : node.parents) {
      node.parent_cardinalities.push_back(data.cardinality(p));
    }
    const auto counts = family_counts(data, v, node.parents);
    const std::size_t q = node.configurations();
    const std::size_t k_card = node.cardinality;
    node.table.assign(q * k_card, 0.0);
    for (std::size_t j = 0; j < q; ++j) {
      double n_j = 0.0;
      for (std::size_t k = 0; k < k_card; ++k) {
        n_j += counts[j * k_card + k];
      }
      const double denom = n_j + alpha * static_cast<double>(k_card);
      if (!(denom > 0.0)) {
        throw std::domain_error(
          "unseen parent configuration " + std::to_string(j) + " of '" + dag.name(v) +
          "' with alpha = 0; smoothing is required");
      }
      for (std::size_t k = 0; k < k_card; ++k) {
        node.table[j * k_card + k] = (counts[j * k_card + k] + alpha) / denom;
      }
    }
  }
  return cpt;
}

/// Throws unless every row sums to one within `tol` and entries lie in [0, 1].
inline void check_cpt(const Cpt & cpt, const double tol = 1e-9)
{
  for (std::size_t v = 0; v < cpt.nodes.size(); ++v) {
    const auto & n = cpt.nodes[v];
    if (n.table.size() != n.configurations() * n.cardinality) {
      throw std::invalid_argument("CPT of node " + std::to_string(v) + " has wrong size");
    }
    for (std::size_t j = 0; j < n.configurations(); ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n.cardinality; ++k) {
        const double p = n.prob(k, j);
        if (!(p >= 0.0 && p <= 1.0)) {
          throw std::invalid_argument("CPT entry outside [0, 1] at node " + std::to_string(v));
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > tol) {
        throw std::invalid_argument("CPT row does not sum to 1 at node " + std::to_string(v));
      }
    }
  }
}

}  // namespace scenario_bn::bayesnet

#endif  // SCENARIO_BN__BAYESNET__CPT_HPP_
