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

#ifndef SCENARIO_BN__BAYESNET__EQUIVALENCE_HPP_
#define SCENARIO_BN__BAYESNET__EQUIVALENCE_HPP_

#include "scenario_bn/bayesnet/dag.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scenario_bn::bayesnet
{

/// Completed partially directed graph representing a Markov equivalence
/// class: compelled edges directed, reversible ones undirected.
struct Cpdag
{
  std::size_t n{0};
  std::vector<char> directed;    // directed[a * n + b]: a -> b
  std::vector<char> undirected;  // symmetric

  bool arrow(const std::size_t a, const std::size_t b) const { return directed[a * n + b] != 0; }
  bool line(const std::size_t a, const std::size_t b) const { return undirected[a * n + b] != 0; }
  bool adjacent(const std::size_t a, const std::size_t b) const
  {
    return arrow(a, b) || arrow(b, a) || line(a, b);
  }
};

/// Pattern of v-structures closed under Meek's orientation rules 1-3.
inline Cpdag equivalence_class(const Dag & dag)
{
  const std::size_t n = dag.size();
  Cpdag c;
  c.n = n;
  c.directed.assign(n * n, 0);
  c.undirected.assign(n * n, 0);
  for (std::size_t b = 0; b < n; ++b) {
    for (const std::size_t a : dag.parents(b)) {
      c.undirected[a * n + b] = c.undirected[b * n + a] = 1;
    }
  }
  const auto orient = [&](const std::size_t a, const std::size_t b) {
    c.undirected[a * n + b] = c.undirected[b * n + a] = 0;
    c.directed[a * n + b] = 1;
  };
  for (std::size_t child = 0; child < n; ++child) {
    const auto & pa = dag.parents(child);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if (!dag.has_edge(pa[i], pa[j]) && !dag.has_edge(pa[j], pa[i])) {
          orient(pa[i], child);
          orient(pa[j], child);
        }
      }
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!c.line(a, b)) {
          continue;
        }
        // R1: x -> a - b, x and b non-adjacent.
        bool r = false;
        for (std::size_t x = 0; x < n && !r; ++x) {
          r = x != b && c.arrow(x, a) && !c.adjacent(x, b);
        }
        // R2: a -> x -> b.
        for (std::size_t x = 0; x < n && !r; ++x) {
          r = c.arrow(a, x) && c.arrow(x, b);
        }
        // R3: a - x -> b, a - y -> b, x and y non-adjacent.
        for (std::size_t x = 0; x < n && !r; ++x) {
          if (!(c.line(a, x) && c.arrow(x, b))) {
            continue;
          }
          for (std::size_t y = x + 1; y < n && !r; ++y) {
            r = c.line(a, y) && c.arrow(y, b) && !c.adjacent(x, y);
          }
        }
        if (r) {
          orient(a, b);
          changed = true;
        }
      }
    }
  }
  return c;
}

/// Structural Hamming distance between two equivalence classes: one per node
/// pair whose adjacency or edge mark differs.
inline std::size_t structural_hamming_distance(const Cpdag & x, const Cpdag & y)
{
  if (x.n != y.n) {
    throw std::invalid_argument("graphs have different node counts");
  }
  std::size_t d = 0;
  for (std::size_t a = 0; a < x.n; ++a) {
    for (std::size_t b = a + 1; b < x.n; ++b) {
      const bool same = x.arrow(a, b) == y.arrow(a, b) && x.arrow(b, a) == y.arrow(b, a) &&
                        x.line(a, b) == y.line(a, b);
      if (!same) {
        ++d;
      }
    }
  }
  return d;
}

inline std::size_t structural_hamming_distance(const Dag & a, const Dag & b)
{
  return structural_hamming_distance(equivalence_class(a), equivalence_class(b));
}

}  // namespace scenario_bn::bayesnet

#endif  // SCENARIO_BN__BAYESNET__EQUIVALENCE_HPP_
