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

#ifndef SCENARIO_BN__BAYESNET__DAG_HPP_
#define SCENARIO_BN__BAYESNET__DAG_HPP_

#include "scenario_bn/role.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scenario_bn::bayesnet
{

using Edge = std::pair<std::size_t, std::size_t>;

/// Directed acyclic graph over named, role-tagged nodes. Parent lists keep
/// insertion order because CPT layouts follow them.
class Dag
{
public:
  Dag() = default;

  Dag(std::vector<std::string> names, std::vector<Role> roles)
  : names_(std::move(names)), roles_(std::move(roles)), parents_(names_.size())
  {
    if (roles_.size() != names_.size()) {
      throw std::invalid_argument("node names and roles differ in length");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[i] == names_[j]) {
          throw std::invalid_argument("duplicate node name '" + names_[i] + "'");
        }
      }
    }
  }

  /// All nodes direct.
  explicit Dag(std::vector<std::string> names)
  : Dag(names, std::vector<Role>(names.size(), Role::direct))
  {
  }

  std::size_t size() const { return names_.size(); }
  const std::string & name(const std::size_t v) const { return names_[v]; }
  const std::vector<std::string> & names() const { return names_; }
  Role role(const std::size_t v) const { return roles_[v]; }
  const std::vector<Role> & roles() const { return roles_; }
  void set_role(const std::size_t v, const Role r) { roles_[v] = r; }
  const std::vector<std::size_t> & parents(const std::size_t v) const { return parents_[v]; }

  std::optional<std::size_t> find(const std::string_view name) const
  {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t index_of(const std::string_view name) const
  {
    if (auto i = find(name)) {
      return *i;
    }
    throw std::out_of_range("node '" + std::string(name) + "' not in graph");
  }

  bool has_edge(const std::size_t from, const std::size_t to) const
  {
    const auto & p = parents_[to];
    return std::find(p.begin(), p.end(), from) != p.end();
  }

  std::vector<std::size_t> children(const std::size_t v) const
  {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < size(); ++c) {
      if (has_edge(v, c)) {
        out.push_back(c);
      }
    }
    return out;
  }

  /// True when `to` is reachable from `from` along directed edges.
  bool has_path(const std::size_t from, const std::size_t to) const
  {
    if (from == to) {
      return true;
    }
    std::vector<char> seen(size(), 0);
    std::vector<std::size_t> stack{to};
    // Walk parents backwards from `to`.
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (const std::size_t p : parents_[v]) {
        if (p == from) {
          return true;
        }
        if (!seen[p]) {
          seen[p] = 1;
          stack.push_back(p);
        }
      }
    }
    return false;
  }

  bool would_create_cycle(const std::size_t from, const std::size_t to) const
  {
    return has_path(to, from);
  }

  /// Adds from->to, rejecting self-loops, duplicates and cycles. Parents stay
  /// sorted by index.
  void add_edge(const std::size_t from, const std::size_t to)
  {
    check_node(from);
    check_node(to);
    if (from == to) {
      throw std::invalid_argument("self-loop on '" + names_[from] + "'");
    }
    if (has_edge(from, to)) {
      throw std::invalid_argument("duplicate edge " + names_[from] + " -> " + names_[to]);
    }
    if (would_create_cycle(from, to)) {
      throw std::invalid_argument("edge " + names_[from] + " -> " + names_[to] + " creates a cycle");
    }
    auto & p = parents_[to];
    p.insert(std::upper_bound(p.begin(), p.end(), from), from);
  }

  void add_edge(const std::string_view from, const std::string_view to)
  {
    add_edge(index_of(from), index_of(to));
  }

  void remove_edge(const std::size_t from, const std::size_t to)
  {
    auto & p = parents_[to];
    const auto it = std::find(p.begin(), p.end(), from);
    if (it == p.end()) {
      throw std::invalid_argument("no edge " + names_[from] + " -> " + names_[to]);
    }
    p.erase(it);
  }

  /// Replaces a parent list verbatim (order kept); validates acyclicity.
  void set_parents(const std::size_t v, std::vector<std::size_t> parents)
  {
    check_node(v);
    auto saved = std::move(parents_[v]);
    parents_[v].clear();
    for (const std::size_t p : parents) {
      check_node(p);
      if (p == v || std::count(parents.begin(), parents.end(), p) != 1 || has_path(v, p)) {
        parents_[v] = std::move(saved);
        throw std::invalid_argument("invalid parent set for '" + names_[v] + "'");
      }
    }
    parents_[v] = std::move(parents);
  }

  /// Edges sorted by (source, target).
  std::vector<Edge> edges() const
  {
    std::vector<Edge> out;
    for (std::size_t v = 0; v < size(); ++v) {
      for (const std::size_t p : parents_[v]) {
        out.emplace_back(p, v);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t edge_count() const
  {
    std::size_t n = 0;
    for (const auto & p : parents_) {
      n += p.size();
    }
    return n;
  }

  /// Kahn's algorithm, smallest ready index first.
  std::vector<std::size_t> topological_order() const
  {
    std::vector<std::size_t> indegree(size());
    for (std::size_t v = 0; v < size(); ++v) {
      indegree[v] = parents_[v].size();
    }
    std::vector<std::size_t> order;
    order.reserve(size());
    std::vector<char> done(size(), 0);
    while (order.size() < size()) {
      std::optional<std::size_t> next;
      for (std::size_t v = 0; v < size(); ++v) {
        if (!done[v] && indegree[v] == 0) {
          next = v;
          break;
        }
      }
      if (!next) {
        throw std::logic_error("graph contains a cycle");
      }
      done[*next] = 1;
      order.push_back(*next);
      for (std::size_t c = 0; c < size(); ++c) {
        if (has_edge(*next, c)) {
          --indegree[c];
        }
      }
    }
    return order;
  }

  bool is_acyclic() const
  {
    try {
      (void)topological_order();
      return true;
    } catch (const std::logic_error &) {
      return false;
    }
  }

  std::vector<std::size_t> ancestors_of(const std::vector<std::size_t> & nodes) const
  {
    std::vector<char> mark(size(), 0);
    std::vector<std::size_t> stack(nodes.begin(), nodes.end());
    for (const auto v : nodes) {
      mark[v] = 1;
    }
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (const std::size_t p : parents_[v]) {
        if (!mark[p]) {
          mark[p] = 1;
          stack.push_back(p);
        }
      }
    }
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < size(); ++v) {
      if (mark[v]) {
        out.push_back(v);
      }
    }
    return out;
  }

  friend bool operator==(const Dag &, const Dag &) = default;

private:
  void check_node(const std::size_t v) const
  {
    if (v >= size()) {
      throw std::out_of_range("node index " + std::to_string(v) + " out of range");
    }
  }

  std::vector<std::string> names_;
  std::vector<Role> roles_;
  std::vector<std::vector<std::size_t>> parents_;
};

}  // namespace scenario_bn::bayesnet

#endif  // SCENARIO_BN__BAYESNET__DAG_HPP_
