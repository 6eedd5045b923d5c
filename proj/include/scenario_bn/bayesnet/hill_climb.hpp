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

#ifndef SCENARIO_BN__BAYESNET__HILL_CLIMB_HPP_
#define SCENARIO_BN__BAYESNET__HILL_CLIMB_HPP_

#include "scenario_bn/bayesnet/score.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scenario_bn::bayesnet
{

/// Prior knowledge for structure search: required edges are always present,
/// forbidden edges never are.
struct EdgeConstraints
{
  std::set<Edge> required;
  std::set<Edge> forbidden;

  bool is_required(const std::size_t from, const std::size_t to) const
  {
    return required.count({from, to}) > 0;
  }
  bool is_forbidden(const std::size_t from, const std::size_t to) const
  {
    return forbidden.count({from, to}) > 0;
  }

  /// Throws on overlap between the sets, self-loops, out-of-range nodes or a
  /// cyclic required-edge graph.
  void validate(const std::size_t n_nodes) const
  {
    for (const auto & e : required) {
      if (forbidden.count(e)) {
        throw std::invalid_argument(
          "edge " + std::to_string(e.first) + " -> " + std::to_string(e.second) +
          " is both required and forbidden");
      }
    }
    for (const auto * set : {&required, &forbidden}) {
      for (const auto & [a, b] : *set) {
        if (a >= n_nodes || b >= n_nodes) {
          throw std::invalid_argument("constraint refers to an unknown node");
        }
        if (a == b) {
          throw std::invalid_argument("constraint contains a self-loop");
        }
      }
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n_nodes; ++i) {
      names.push_back(std::to_string(i));
    }
    Dag g(names);
    for (const auto & [a, b] : required) {
      if (g.would_create_cycle(a, b)) {
        throw std::invalid_argument("required edges contain a cycle");
      }
      g.add_edge(a, b);
    }
  }
};

enum class MoveType { add = 0, remove = 1, reverse = 2 };

struct Move
{
  MoveType type{MoveType::add};
  std::size_t from{0};
  std::size_t to{0};
  double delta{0.0};
};

struct HillClimbOptions
{
  ScoreType score{ScoreType::bic};
  double ess{1.0};
  std::size_t max_iters{1000};
  /// Additions that would make a family table larger than this are skipped.
  std::size_t max_family_table{1u << 20};
  /// Minimum improvement for a move to count.
  double min_improvement{1e-9};
};

struct HillClimbResult
{
  Dag dag;
  double initial_score{0.0};
  double score{0.0};
  std::size_t iterations{0};
  std::vector<Move> moves;
};

namespace detail
{

class FamilyScoreCache
{
public:
  FamilyScoreCache(const DiscreteDataset & data, const HillClimbOptions & opts)
  : data_(data), opts_(opts)
  {
  }

  double operator()(const std::size_t node, std::vector<std::size_t> parents)
  {
    std::sort(parents.begin(), parents.end());
    auto key = std::make_pair(node, parents);
    if (const auto it = cache_.find(key); it != cache_.end()) {
      return it->second;
    }
    const double s = family_score(data_, node, parents, opts_.score, opts_.ess);
    cache_.emplace(std::move(key), s);
    return s;
  }

private:
  const DiscreteDataset & data_;
  const HillClimbOptions & opts_;
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, double> cache_;
};

inline std::vector<std::size_t> with(std::vector<std::size_t> v, const std::size_t x)
{
  v.push_back(x);
  return v;
}

inline std::vector<std::size_t> without(std::vector<std::size_t> v, const std::size_t x)
{
  v.erase(std::find(v.begin(), v.end(), x));
  return v;
}

}  // namespace detail

/// Greedy hill climbing over single-edge additions, removals and reversals.
///
/// Starts from the required edges, applies the best strictly improving move
/// each iteration and stops at a local optimum or after max_iters moves.
/// Ties go to the lexicographically smallest (move type, source, target).
inline HillClimbResult hill_climb(
  const DiscreteDataset & data, const std::vector<std::string> & names,
  const std::vector<Role> & roles, const EdgeConstraints & constraints,
  const HillClimbOptions & opts = {})
{
  const std::size_t n = data.columns();
  if (names.size() != n || roles.size() != n) {
    throw std::invalid_argument("node names/roles do not match dataset columns");
  }
  constraints.validate(n);

  HillClimbResult result;
  result.dag = Dag(names, roles);
  Dag & g = result.dag;
  for (const auto & [a, b] : constraints.required) {
    g.add_edge(a, b);
  }

  detail::FamilyScoreCache fam(data, opts);
  std::vector<double> node_score(n);
  for (std::size_t v = 0; v < n; ++v) {
    node_score[v] = fam(v, g.parents(v));
  }
  const auto total = [&] {
    double s = 0.0;
    for (const double x : node_score) {
      s += x;
    }
    return s;
  };
  result.initial_score = total();

  const auto table_size = [&](const std::size_t node, const std::vector<std::size_t> & parents) {
    double size = static_cast<double>(data.cardinality(node));
    for (const auto p : parents) {
      size *= static_cast<double>(data.cardinality(p));
    }
    return size;
  };

  for (; result.iterations < opts.max_iters; ++result.iterations) {
    Move best;
    double best_delta = opts.min_improvement;
    bool found = false;
    const auto consider = [&](const MoveType type, const std::size_t a, const std::size_t b,
                              const double delta) {
      // Enumeration is lexicographic, so earlier candidates win near-ties.
      const double bar = found ? best_delta + 1e-9 : best_delta;
      if (delta > bar) {
        best = {type, a, b, delta};
        best_delta = delta;
        found = true;
      }
    };

    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || g.has_edge(a, b) || g.has_edge(b, a) || constraints.is_forbidden(a, b) ||
            g.would_create_cycle(a, b)) {
          continue;
        }
        const auto new_parents = detail::with(g.parents(b), a);
        if (table_size(b, new_parents) > static_cast<double>(opts.max_family_table)) {
          continue;
        }
        consider(MoveType::add, a, b, fam(b, new_parents) - node_score[b]);
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!g.has_edge(a, b) || constraints.is_required(a, b)) {
          continue;
        }
        consider(MoveType::remove, a, b, fam(b, detail::without(g.parents(b), a)) - node_score[b]);
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!g.has_edge(a, b) || constraints.is_required(a, b) || constraints.is_forbidden(b, a)) {
          continue;
        }
        g.remove_edge(a, b);
        const bool cyclic = g.would_create_cycle(b, a);
        g.add_edge(a, b);
        if (cyclic) {
          continue;
        }
        const auto a_parents = detail::with(g.parents(a), b);
        if (table_size(a, a_parents) > static_cast<double>(opts.max_family_table)) {
          continue;
        }
        const double delta = fam(b, detail::without(g.parents(b), a)) - node_score[b] +
                             fam(a, a_parents) - node_score[a];
        consider(MoveType::reverse, a, b, delta);
      }
    }

    if (!found) {
      break;
    }
    switch (best.type) {
      case MoveType::add:
        g.add_edge(best.from, best.to);
        break;
      case MoveType::remove:
        g.remove_edge(best.from, best.to);
        break;
      case MoveType::reverse:
        g.remove_edge(best.from, best.to);
        g.add_edge(best.to, best.from);
        node_score[best.from] = fam(best.from, g.parents(best.from));
        break;
    }
    node_score[best.to] = fam(best.to, g.parents(best.to));
    result.moves.push_back(best);
  }
  result.score = total();
  return result;
}

}  // namespace scenario_bn::bayesnet

#endif  // SCENARIO_BN__BAYESNET__HILL_CLIMB_HPP_
