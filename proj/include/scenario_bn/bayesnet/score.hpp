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

#ifndef SCENARIO_BN__BAYESNET__SCORE_HPP_
#define SCENARIO_BN__BAYESNET__SCORE_HPP_

#include "scenario_bn/bayesnet/cpt.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace scenario_bn::bayesnet
{

enum class ScoreType { bic, bdeu };

inline ScoreType score_type_from_string(const std::string_view s)
{
  if (s == "bic") return ScoreType::bic;
  if (s == "bdeu") return ScoreType::bdeu;
  throw std::invalid_argument("unknown score '" + std::string(s) + "' (expected bic or bdeu)");
}

inline std::string_view to_string(const ScoreType s) { return s == ScoreType::bic ? "bic" : "bdeu"; }

struct LogLikelihood
{
  double value{0.0};
  /// Set when some row had probability zero; value is then -infinity.
  bool zero_probability{false};
};

/// Sum over rows and nodes of ln P(x_node | x_parents) under the given CPTs.
inline LogLikelihood log_likelihood(const Dag & dag, const Cpt & cpt, const DiscreteDataset & data)
{
  if (cpt.nodes.size() != dag.size() || data.columns() != dag.size()) {
    throw std::invalid_argument("graph, CPTs and data disagree on node count");
  }
  LogLikelihood ll;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const int * row = data.row(r);
    for (std::size_t v = 0; v < dag.size(); ++v) {
      const auto & node = cpt.nodes[v];
      const std::size_t j = node.config_index([&](const std::size_t p) { return row[p]; });
      const double p = node.prob(static_cast<std::size_t>(row[v]), j);
      if (p <= 0.0) {
        ll.zero_probability = true;
        ll.value = -std::numeric_limits<double>::infinity();
        return ll;
      }
      ll.value += std::log(p);
    }
  }
  return ll;
}

/// Number of free parameters of a family: (K - 1) * prod(parent cardinalities).
inline double family_dimension(
  const DiscreteDataset & data, const std::size_t node, const std::vector<std::size_t> & parents)
{
  double q = 1.0;
  for (const auto p : parents) {
    q *= static_cast<double>(data.cardinality(p));
  }
  return (static_cast<double>(data.cardinality(node)) - 1.0) * q;
}

/// Penalized maximum-likelihood family score:
/// sum_jk N_jk ln(N_jk / N_j) - ln(N)/2 * (K - 1) * q.
inline double bic_family_score(
  const DiscreteDataset & data, const std::size_t node, const std::vector<std::size_t> & parents)
{
  const auto counts = family_counts(data, node, parents);
  const std::size_t k_card = data.cardinality(node);
  double ll = 0.0;
  for (std::size_t base = 0; base < counts.size(); base += k_card) {
    double n_j = 0.0;
    for (std::size_t k = 0; k < k_card; ++k) {
      n_j += counts[base + k];
    }
    if (n_j == 0.0) {
      continue;
    }
    for (std::size_t k = 0; k < k_card; ++k) {
      const double n_jk = counts[base + k];
      if (n_jk > 0.0) {
        ll += n_jk * std::log(n_jk / n_j);
      }
    }
  }
  const double n = static_cast<double>(data.rows());
  const double penalty = n > 0.0 ? 0.5 * std::log(n) : 0.0;
  return ll - penalty * family_dimension(data, node, parents);
}

/// Log BDeu marginal likelihood of one family with alpha_jk = ess / (q K).
inline double bdeu_family_score(
  const DiscreteDataset & data, const std::size_t node, const std::vector<std::size_t> & parents,
  const double ess)
{
  if (!(ess > 0.0)) {
    throw std::invalid_argument("equivalent sample size must be > 0");
  }
  const auto counts = family_counts(data, node, parents);
  const std::size_t k_card = data.cardinality(node);
  const double q = static_cast<double>(counts.size() / k_card);
  const double a_j = ess / q;
  const double a_jk = a_j / static_cast<double>(k_card);
  const double lg_a_j = std::lgamma(a_j);
  const double lg_a_jk = std::lgamma(a_jk);
  double score = 0.0;
  for (std::size_t base = 0; base < counts.size(); base += k_card) {
    double n_j = 0.0;
    for (std::size_t k = 0; k < k_card; ++k) {
      const double n_jk = counts[base + k];
      n_j += n_jk;
      if (n_jk > 0.0) {
        score += std::lgamma(a_jk + n_jk) - lg_a_jk;
      }
    }
    if (n_j > 0.0) {
      score += lg_a_j - std::lgamma(a_j + n_j);
    }
  }
  return score;
}

inline double family_score(
  const DiscreteDataset & data, const std::size_t node, const std::vector<std::size_t> & parents,
  const ScoreType type, const double ess)
{
  return type == ScoreType::bic ? bic_family_score(data, node, parents)
                                : bdeu_family_score(data, node, parents, ess);
}

/// BIC score S(G:D) = LL(G:D) - ln(|D|)/2 * ||G|| with maximum-likelihood
/// parameters and ||G|| = sum over nodes of (K - 1) * prod K_parents.
inline double structure_score(const Dag & dag, const DiscreteDataset & data)
{
  if (data.columns() != dag.size()) {
    throw std::invalid_argument("dataset columns do not match graph nodes");
  }
  double s = 0.0;
  for (std::size_t v = 0; v < dag.size(); ++v) {
    s += bic_family_score(data, v, dag.parents(v));
  }
  return s;
}

inline double network_dimension(const Dag & dag, const DiscreteDataset & data)
{
  double d = 0.0;
  for (std::size_t v = 0; v < dag.size(); ++v) {
    d += family_dimension(data, v, dag.parents(v));
  }
  return d;
}

/// Closed-form log marginal likelihood ln P(D | G) under Dirichlet priors
/// with equivalent sample size `ess` spread uniformly (BDeu).
inline double bdeu_score(const Dag & dag, const DiscreteDataset & data, const double ess = 1.0)
{
  if (data.columns() != dag.size()) {
    throw std::invalid_argument("dataset columns do not match graph nodes");
  }
  double s = 0.0;
  for (std::size_t v = 0; v < dag.size(); ++v) {
    s += bdeu_family_score(data, v, dag.parents(v), ess);
  }
  return s;
}

inline double score(const Dag & dag, const DiscreteDataset & data, const ScoreType type, const double ess)
{
  return type == ScoreType::bic ? structure_score(dag, data) : bdeu_score(dag, data, ess);
}

}  // namespace scenario_bn::bayesnet

#endif  // SCENARIO_BN__BAYESNET__SCORE_HPP_
