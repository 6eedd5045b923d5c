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

#ifndef SCENARIO_BN__GENERATE__SAMPLING_HPP_
#define SCENARIO_BN__GENERATE__SAMPLING_HPP_

#include "scenario_bn/generate/evidence.hpp"
#include "scenario_bn/random.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scenario_bn::generate
{

struct SamplingOptions
{
  /// Weighted particles drawn per requested sample before resampling, when
  /// evidence sits below sampled ancestors.
  std::size_t oversample{10};
  std::size_t min_particles{10000};
};

/// Discrete rows drawn from P(. | evidence).
///
/// Evidence on root nodes only: ancestral sampling with the roots clamped.
/// Otherwise likelihood weighting followed by multinomial resampling.
inline bayesnet::DiscreteDataset sample_with_evidence(
  const CausalNet & net, const Evidence & ev, const std::size_t n, Rng & rng,
  const SamplingOptions & opts = {})
{
  const auto clamp = to_assignment(net, ev);
  causal::detail::check_assignment(net, clamp, "evidence");
  if (!clamp.empty() && !(causal::evidence_probability(net, clamp) > 0.0)) {
    throw std::domain_error("evidence has zero probability under the network");
  }
  const auto order = net.dag.topological_order();
  const bool roots_only = std::all_of(clamp.begin(), clamp.end(), [&](const auto & kv) {
    return net.dag.parents(kv.first).empty();
  });

  bayesnet::DiscreteDataset out(net.cardinalities());
  out.reserve(n);
  std::vector<int> row(net.size(), 0);
  // Returns the likelihood weight of the evidence for the drawn row.
  const auto draw = [&](std::vector<int> & r) {
    double w = 1.0;
    for (const auto v : order) {
      const auto & node = net.cpt.nodes[v];
      const std::size_t j = node.config_index([&](const std::size_t p) { return r[p]; });
      const double * probs = node.table.data() + j * node.cardinality;
      if (const auto it = clamp.find(v); it != clamp.end()) {
        r[v] = static_cast<int>(it->second);
        w *= probs[it->second];
      } else {
        r[v] = static_cast<int>(bayesnet::sample_categorical(probs, node.cardinality, rng));
      }
    }
    return w;
  };

  if (roots_only) {
    for (std::size_t i = 0; i < n; ++i) {
      draw(row);
      out.add_row(row);
    }
    return out;
  }

  const std::size_t m = std::max(opts.min_particles, opts.oversample * n);
  std::vector<std::vector<int>> particles(m, std::vector<int>(net.size(), 0));
  std::vector<double> cumulative(m);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    acc += draw(particles[i]);
    cumulative[i] = acc;
  }
  if (!(acc > 0.0)) {
    throw std::domain_error("all weighted particles have zero weight");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double u = unit_uniform(rng) * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
      --it;
    }
    out.add_row(particles[static_cast<std::size_t>(it - cumulative.begin())]);
  }
  return out;
}

}  // namespace scenario_bn::generate

#endif  // SCENARIO_BN__GENERATE__SAMPLING_HPP_
