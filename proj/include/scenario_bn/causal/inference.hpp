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

#ifndef SCENARIO_BN__CAUSAL__INFERENCE_HPP_
#define SCENARIO_BN__CAUSAL__INFERENCE_HPP_

#include "scenario_bn/bayesnet/network.hpp"
#include "scenario_bn/causal/factor.hpp"
#include "scenario_bn/random.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace scenario_bn::causal
{

using bayesnet::CausalNet;

/// Node index -> clamped state.
using Assignment = std::map<std::size_t, std::size_t>;

struct InferenceOptions
{
  /// Largest intermediate factor variable elimination may build before the
  /// query falls back to Monte Carlo.
  std::size_t max_factor_size{1u << 22};
  std::size_t mc_samples{1000000};
  std::uint64_t mc_seed{0};
};

struct Distribution
{
  std::vector<double> p;
  bool exact{true};
  /// Per-state standard error; zeros for exact results.
  std::vector<double> standard_error;
};

namespace detail
{

inline void check_assignment(const CausalNet & net, const Assignment & a, const char * what)
{
  for (const auto & [v, x] : a) {
    if (v >= net.size()) {
      throw std::out_of_range(std::string(what) + " refers to an unknown node");
    }
    if (x >= net.cardinality(v)) {
      throw std::out_of_range(
        std::string(what) + " value " + std::to_string(x) + " outside the states of '" +
        net.dag.name(v) + "'");
    }
  }
}

inline Factor cpt_factor(const CausalNet & net, const std::size_t v)
{
  const auto & node = net.cpt.nodes[v];
  Factor f;
  f.vars = node.parents;
  f.cards = node.parent_cardinalities;
  f.vars.push_back(v);
  f.cards.push_back(node.cardinality);
  f.values = node.table;
  return f;
}

/// Greedy elimination order (smallest resulting factor first); returns false
/// when the order would exceed `cap`.
inline bool elimination_order(
  const std::vector<Factor> & factors, std::set<std::size_t> to_eliminate,
  const std::vector<std::size_t> & cards, const std::size_t cap, std::vector<std::size_t> & order)
{
  std::vector<std::set<std::size_t>> scopes;
  for (const auto & f : factors) {
    scopes.emplace_back(f.vars.begin(), f.vars.end());
  }
  while (!to_eliminate.empty()) {
    std::size_t best = 0;
    double best_size = std::numeric_limits<double>::infinity();
    for (const auto v : to_eliminate) {
      std::set<std::size_t> merged;
      for (const auto & s : scopes) {
        if (s.count(v)) {
          merged.insert(s.begin(), s.end());
        }
      }
      double size = 1.0;
      for (const auto u : merged) {
        size *= static_cast<double>(cards[u]);
      }
      if (size < best_size) {
        best_size = size;
        best = v;
      }
    }
    if (best_size > static_cast<double>(cap)) {
      return false;
    }
    std::set<std::size_t> merged;
    std::vector<std::set<std::size_t>> rest;
    for (auto & s : scopes) {
      if (s.count(best)) {
        merged.insert(s.begin(), s.end());
      } else {
        rest.push_back(std::move(s));
      }
    }
    merged.erase(best);
    rest.push_back(std::move(merged));
    scopes = std::move(rest);
    order.push_back(best);
    to_eliminate.erase(best);
  }
  return true;
}

/// Likelihood weighting in the mutilated network.
inline Distribution monte_carlo(
  const CausalNet & net, const std::size_t target, const Assignment & evidence,
  const Assignment & interventions, const InferenceOptions & opts)
{
  Rng rng(opts.mc_seed);
  const auto order = net.dag.topological_order();
  const std::size_t k = net.cardinality(target);
  std::vector<double> w_state(k, 0.0);
  double w_sum = 0.0;
  double w_sq = 0.0;
  std::vector<int> row(net.size(), 0);
  for (std::size_t i = 0; i < opts.mc_samples; ++i) {
    double w = 1.0;
    for (const auto v : order) {
      if (const auto it = interventions.find(v); it != interventions.end()) {
        row[v] = static_cast<int>(it->second);
        continue;
      }
      const auto & node = net.cpt.nodes[v];
      const std::size_t j = node.config_index([&](const std::size_t p) { return row[p]; });
      const double * probs = node.table.data() + j * node.cardinality;
      if (const auto it = evidence.find(v); it != evidence.end()) {
        row[v] = static_cast<int>(it->second);
        w *= probs[it->second];
      } else {
        row[v] = static_cast<int>(bayesnet::sample_categorical(probs, node.cardinality, rng));
      }
    }
    w_state[static_cast<std::size_t>(row[target])] += w;
    w_sum += w;
    w_sq += w * w;
  }
  if (!(w_sum > 0.0)) {
    throw std::domain_error("evidence has zero probability");
  }
  Distribution d;
  d.exact = false;
  const double ess = w_sum * w_sum / w_sq;
  for (std::size_t s = 0; s < k; ++s) {
    const double p = w_state[s] / w_sum;
    d.p.push_back(p);
    d.standard_error.push_back(std::sqrt(p * (1.0 - p) / ess));
  }
  return d;
}

}  // namespace detail

/// P(target | evidence, do(interventions)).
///
/// Exact variable elimination over the mutilated graph (intervened nodes lose
/// their parents and CPT, barren nodes are pruned). Falls back to likelihood
/// weighting when an intermediate factor would exceed opts.max_factor_size.
inline Distribution query(
  const CausalNet & net, const std::size_t target, const Assignment & evidence = {},
  const Assignment & interventions = {}, const InferenceOptions & opts = {})
{
  if (target >= net.size()) {
    throw std::out_of_range("query target refers to an unknown node");
  }
  detail::check_assignment(net, evidence, "evidence");
  detail::check_assignment(net, interventions, "intervention");
  for (const auto & [v, x] : interventions) {
    if (evidence.count(v)) {
      throw std::invalid_argument("node '" + net.dag.name(v) + "' is both observed and intervened");
    }
  }
  const std::size_t k = net.cardinality(target);
  if (const auto it = interventions.find(target); it != interventions.end()) {
    Distribution d;
    d.p.assign(k, 0.0);
    d.p[it->second] = 1.0;
    d.standard_error.assign(k, 0.0);
    return d;
  }

  // Relevant nodes: ancestors of target and evidence in the mutilated graph.
  std::vector<char> relevant(net.size(), 0);
  std::vector<std::size_t> stack{target};
  for (const auto & [v, x] : evidence) {
    stack.push_back(v);
  }
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    if (relevant[v]) {
      continue;
    }
    relevant[v] = 1;
    if (interventions.count(v)) {
      continue;
    }
    for (const auto p : net.dag.parents(v)) {
      stack.push_back(p);
    }
  }

  std::vector<Factor> factors;
  std::set<std::size_t> hidden;
  for (std::size_t v = 0; v < net.size(); ++v) {
    if (!relevant[v] || interventions.count(v)) {
      continue;
    }
    Factor f = detail::cpt_factor(net, v);
    for (const auto & a : {&evidence, &interventions}) {
      for (const auto & [u, x] : *a) {
        f = restrict(f, u, x);
      }
    }
    factors.push_back(std::move(f));
    if (v != target && !evidence.count(v)) {
      hidden.insert(v);
    }
  }

  std::vector<std::size_t> order;
  if (!detail::elimination_order(factors, hidden, net.cardinalities(), opts.max_factor_size, order)) {
    return detail::monte_carlo(net, target, evidence, interventions, opts);
  }
  for (const auto v : order) {
    Factor merged{{}, {}, {1.0}};
    std::vector<Factor> rest;
    for (auto & f : factors) {
      if (f.contains(v)) {
        merged = multiply(merged, f);
      } else {
        rest.push_back(std::move(f));
      }
    }
    rest.push_back(sum_out(merged, v));
    factors = std::move(rest);
  }
  Factor result{{}, {}, {1.0}};
  for (const auto & f : factors) {
    result = multiply(result, f);
  }
  Distribution d;
  d.p.assign(k, 0.0);
  if (result.vars.empty()) {
    // Only possible if the target was pruned, which cannot happen.
    throw std::logic_error("target eliminated during inference");
  }
  double z = 0.0;
  for (const double x : result.values) {
    z += x;
  }
  if (!(z > 0.0)) {
    throw std::domain_error("evidence has zero probability");
  }
  for (std::size_t s = 0; s < k; ++s) {
    d.p[s] = result.values[s] / z;
  }
  d.standard_error.assign(k, 0.0);
  return d;
}

/// Probability of the evidence under the network, by elimination.
inline double evidence_probability(const CausalNet & net, const Assignment & evidence)
{
  detail::check_assignment(net, evidence, "evidence");
  std::vector<Factor> factors;
  for (std::size_t v = 0; v < net.size(); ++v) {
    Factor f = detail::cpt_factor(net, v);
    for (const auto & [u, x] : evidence) {
      f = restrict(f, u, x);
    }
    factors.push_back(std::move(f));
  }
  std::set<std::size_t> hidden;
  for (std::size_t v = 0; v < net.size(); ++v) {
    if (!evidence.count(v)) {
      hidden.insert(v);
    }
  }
  std::vector<std::size_t> order;
  if (!detail::elimination_order(
        factors, hidden, net.cardinalities(), std::numeric_limits<std::size_t>::max(), order)) {
    throw std::logic_error("unbounded elimination order failed");
  }
  for (const auto v : order) {
    Factor merged{{}, {}, {1.0}};
    std::vector<Factor> rest;
    for (auto & f : factors) {
      if (f.contains(v)) {
        merged = multiply(merged, f);
      } else {
        rest.push_back(std::move(f));
      }
    }
    rest.push_back(sum_out(merged, v));
    factors = std::move(rest);
  }
  double p = 1.0;
  for (const auto & f : factors) {
    p *= f.values.at(0);
  }
  return p;
}

/// Marginal distribution of a node.
inline std::vector<double> marginal(const CausalNet & net, const std::size_t v)
{
  return query(net, v).p;
}

/// Intervention request by node name: P(target | do(intervened = value)).
struct InterventionQuery
{
  std::string target;
  std::string intervened;
  std::size_t value{0};
};

inline Distribution do_effect(
  const CausalNet & net, const InterventionQuery & q, const InferenceOptions & opts = {})
{
  const auto y = net.dag.index_of(q.target);
  const auto x = net.dag.index_of(q.intervened);
  if (x == y) {
    throw std::invalid_argument("intervention target and intervened node coincide");
  }
  if (q.value >= net.cardinality(x)) {
    throw std::out_of_range(
      "intervention value outside the states of '" + q.intervened + "'");
  }
  return query(net, y, {}, {{x, q.value}}, opts);
}

/// P(target | given = value) without intervention.
inline Distribution observational_effect(
  const CausalNet & net, const std::string & target, const std::string & given,
  const std::size_t value, const InferenceOptions & opts = {})
{
  const auto y = net.dag.index_of(target);
  const auto x = net.dag.index_of(given);
  if (x == y) {
    throw std::invalid_argument("target and conditioning node coincide");
  }
  return query(net, y, {{x, value}}, {}, opts);
}

}  // namespace scenario_bn::causal

#endif  // SCENARIO_BN__CAUSAL__INFERENCE_HPP_
