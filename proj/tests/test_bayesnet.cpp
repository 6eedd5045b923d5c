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

#include "scenario_bn/bayesnet/cpt.hpp"
#include "scenario_bn/bayesnet/dag.hpp"
#include "scenario_bn/bayesnet/dataset.hpp"
#include "scenario_bn/bayesnet/discretization.hpp"
#include "scenario_bn/bayesnet/equivalence.hpp"
#include "scenario_bn/bayesnet/hill_climb.hpp"
#include "scenario_bn/bayesnet/network.hpp"
#include "scenario_bn/bayesnet/network_io.hpp"
#include "scenario_bn/bayesnet/score.hpp"
#include "scenario_bn/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

using namespace scenario_bn;
using namespace scenario_bn::bayesnet;

namespace
{

std::vector<std::vector<double>> column(const std::vector<double> & v)
{
  std::vector<std::vector<double>> rows;
  for (const double x : v) {
    rows.push_back({x});
  }
  return rows;
}

DiscretizationSpec one_continuous(const std::vector<double> & v, const std::size_t bins)
{
  return build_discretization(column(v), {{"x", {}}}, bins);
}

DiscreteDataset binary_data(const std::vector<std::vector<int>> & rows)
{
  DiscreteDataset d(std::vector<std::size_t>(rows.empty() ? 0 : rows.front().size(), 2));
  for (const auto & r : rows) {
    d.add_row(r);
  }
  return d;
}

std::vector<std::string> names(const std::size_t n)
{
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back("x" + std::to_string(i));
  }
  return out;
}

// Joint probability of a full assignment as the plain product of CPT entries.
double joint_probability(const CausalNet & net, const std::vector<int> & x)
{
  double p = 1.0;
  for (std::size_t v = 0; v < net.size(); ++v) {
    const auto & node = net.cpt.nodes[v];
    std::size_t j = 0;
    for (std::size_t i = 0; i < node.parents.size(); ++i) {
      j = j * node.parent_cardinalities[i] + static_cast<std::size_t>(x[node.parents[i]]);
    }
    p *= node.table[j * node.cardinality + static_cast<std::size_t>(x[v])];
  }
  return p;
}

}  // namespace

TEST(Discretization, MedianSplit)
{
  const auto spec = one_continuous({1, 2, 3, 4}, 2);
  ASSERT_EQ(spec.variables[0].boundaries.size(), 1u);
  EXPECT_EQ(spec.variables[0].boundaries[0], 2.5);
  const auto d = discretize(column({1, 2, 3, 4}), spec);
  EXPECT_EQ(d.at(0, 0), 0);
  EXPECT_EQ(d.at(1, 0), 0);
  EXPECT_EQ(d.at(2, 0), 1);
  EXPECT_EQ(d.at(3, 0), 1);
  EXPECT_EQ(discretize_value(spec.variables[0], 2.5), 0);
  EXPECT_TRUE(spec.reductions.empty());
}

TEST(Discretization, ConstantColumnCollapses)
{
  const auto spec = one_continuous({7, 7, 7, 7, 7}, 4);
  EXPECT_EQ(spec.variables[0].cardinality(), 1u);
  ASSERT_EQ(spec.reductions.size(), 1u);
  EXPECT_EQ(spec.reductions[0].requested, 4u);
  EXPECT_EQ(spec.reductions[0].used, 1u);
}

TEST(Discretization, FewerDistinctValuesThanBins)
{
  const auto spec = one_continuous({1, 1, 2, 2, 3, 3}, 5);
  EXPECT_EQ(spec.variables[0].cardinality(), 3u);
  EXPECT_EQ(spec.reductions.size(), 1u);
}

TEST(Discretization, QuantileBinsOnNormalSample)
{
  Rng rng(1);
  std::normal_distribution<double> normal;
  std::vector<double> v(1000);
  for (auto & x : v) {
    x = normal(rng);
  }
  const auto spec = one_continuous(v, 5);
  ASSERT_EQ(spec.variables[0].cardinality(), 5u);
  std::vector<int> counts(5, 0);
  for (const double x : v) {
    ++counts[static_cast<std::size_t>(discretize_value(spec.variables[0], x))];
  }
  for (const int c : counts) {
    EXPECT_NEAR(c, 200, 20);
  }
}

TEST(Discretization, OccupancyRatioBounded)
{
  Rng rng(2);
  std::exponential_distribution<double> expo(1.0);
  for (const std::size_t bins : {3u, 5u, 8u}) {
    std::vector<double> v(100 * bins);
    for (auto & x : v) {
      x = expo(rng);
    }
    const auto spec = one_continuous(v, bins);
    std::vector<int> counts(bins, 0);
    for (const double x : v) {
      ++counts[static_cast<std::size_t>(discretize_value(spec.variables[0], x))];
    }
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    EXPECT_LE(static_cast<double>(*hi) / *lo, 1.5);
  }
}

TEST(Discretization, CategoricalPassThrough)
{
  const auto spec = build_discretization({{0.0, 1.0}, {2.0, 3.0}}, {{"c", {"a", "b", "c"}}, {"x", {}}}, 2);
  EXPECT_TRUE(spec.variables[0].categorical);
  EXPECT_EQ(spec.variables[0].cardinality(), 3u);
  EXPECT_EQ(discretize_value(spec.variables[0], 2.0), 2);
  EXPECT_THROW(discretize_value(spec.variables[0], 3.0), std::out_of_range);
  EXPECT_THROW(discretize_value(spec.variables[0], 0.5), std::out_of_range);
  EXPECT_THROW(build_discretization({{0.0}}, {{"x", {}}}, 1), std::invalid_argument);
  EXPECT_THROW(build_discretization({}, {{"x", {}}}, 2), std::invalid_argument);
}

TEST(ContinuousFromBin, RoundTripsToSameBin)
{
  Rng rng(4);
  std::vector<double> v;
  for (int i = 0; i < 500; ++i) {
    v.push_back(std::floor(10.0 * unit_uniform(rng)) / 4.0);
  }
  const auto spec = one_continuous(v, 5);
  const auto & var = spec.variables[0];
  for (std::size_t b = 0; b < var.cardinality(); ++b) {
    for (int i = 0; i < 2000; ++i) {
      EXPECT_EQ(discretize_value(var, continuous_from_bin(var, b, rng)), static_cast<int>(b));
    }
  }
  EXPECT_THROW(continuous_from_bin(var, var.cardinality(), rng), std::out_of_range);
  EXPECT_THROW(continuous_from_bin(spec, "nope", 0, rng), std::out_of_range);
}

TEST(ContinuousFromBin, UniformWithinBin)
{
  VariableSpec var;
  var.name = "x";
  var.min = -1.0;
  var.max = 2.0;
  var.boundaries = {0.0, 1.0};
  Rng rng(6);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = continuous_from_bin(var, 1, rng);
    ASSERT_GT(x, 0.0);
    ASSERT_LE(x, 1.0);
    sum += x;
  }
  EXPECT_NEAR(sum / 10000.0, 0.5, 0.02);
}

TEST(FitCpts, LaplaceSmoothing)
{
  const Dag g(names(1));
  const auto cpt = fit_cpts(g, binary_data({{1}, {1}, {1}, {0}}), 1.0);
  EXPECT_NEAR(cpt.nodes[0].prob(1, 0), 4.0 / 6.0, 1e-15);
  EXPECT_NEAR(cpt.nodes[0].prob(0, 0), 2.0 / 6.0, 1e-15);
  EXPECT_EQ(cpt.alpha, 1.0);
}

TEST(FitCpts, DeterministicCopyAndUnseenConfiguration)
{
  Dag g(names(2));
  g.add_edge(0, 1);
  const auto data = binary_data({{0, 0}, {1, 1}, {1, 1}});
  const auto ml = fit_cpts(g, data, 0.0);
  EXPECT_EQ(ml.nodes[1].prob(0, 0), 1.0);
  EXPECT_EQ(ml.nodes[1].prob(1, 1), 1.0);
  EXPECT_NO_THROW(check_cpt(ml));

  const auto only_zero = binary_data({{0, 0}, {0, 1}});
  EXPECT_THROW(fit_cpts(g, only_zero, 0.0), std::domain_error);
  const auto smoothed = fit_cpts(g, only_zero, 1.0);
  EXPECT_EQ(smoothed.nodes[1].prob(0, 1), 0.5);
  EXPECT_EQ(smoothed.nodes[1].prob(1, 1), 0.5);
  EXPECT_THROW(fit_cpts(g, only_zero, -1.0), std::invalid_argument);
}

TEST(FitCpts, RowsSumToOneWithPositiveEntries)
{
  Rng rng(8);
  DiscreteDataset d({3, 2, 4});
  for (int i = 0; i < 50; ++i) {
    d.add_row({static_cast<int>(rng() % 3), static_cast<int>(rng() % 2), static_cast<int>(rng() % 4)});
  }
  Dag g(names(3));
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  const auto cpt = fit_cpts(g, d, 0.5);
  EXPECT_NO_THROW(check_cpt(cpt));
  for (const auto & node : cpt.nodes) {
    for (const double p : node.table) {
      EXPECT_GT(p, 0.0);
      EXPECT_LT(p, 1.0);
    }
  }
}

TEST(StructureScore, SingleBinaryVariable)
{
  const Dag g(names(1));
  const auto data = binary_data({{0}, {0}, {0}, {0}, {1}, {1}, {1}, {1}});
  const double ll = 8.0 * std::log(0.5);
  EXPECT_NEAR(log_likelihood(g, fit_cpts(g, data, 0.0), data).value, ll, 1e-12);
  EXPECT_EQ(network_dimension(g, data), 1.0);
  EXPECT_NEAR(structure_score(g, data), ll - std::log(8.0) / 2.0, 1e-12);
  EXPECT_NEAR(structure_score(g, data), -6.5849, 5e-5);
}

TEST(StructureScore, CopyPairGain)
{
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < 100; ++i) {
    rows.push_back({i % 2, i % 2});
  }
  const auto data = binary_data(rows);
  Dag empty(names(2));
  Dag copy(names(2));
  copy.add_edge(0, 1);
  // LL gains 100 ln 2; ||G|| grows from 2 to 3.
  const double expected = 100.0 * std::log(2.0) - std::log(100.0) / 2.0;
  EXPECT_NEAR(structure_score(copy, data) - structure_score(empty, data), expected, 1e-9);
}

TEST(StructureScore, ZeroProbabilityFlagged)
{
  const Dag g(names(1));
  const auto cpt = fit_cpts(g, binary_data({{0}, {0}}), 0.0);
  const auto ll = log_likelihood(g, cpt, binary_data({{1}}));
  EXPECT_TRUE(ll.zero_probability);
  EXPECT_TRUE(std::isinf(ll.value));
}

TEST(StructureScore, DecomposesOverFamilies)
{
  Rng rng(12);
  DiscreteDataset d({2, 3, 2, 2});
  for (int i = 0; i < 300; ++i) {
    const int a = static_cast<int>(rng() % 2);
    d.add_row({a, static_cast<int>(rng() % 3), unit_uniform(rng) < 0.8 ? a : 1 - a, static_cast<int>(rng() % 2)});
  }
  Dag g(names(4));
  g.add_edge(0, 2);
  Dag h = g;
  h.add_edge(1, 3);
  h.add_edge(0, 3);
  // Only node 3's family differs.
  const double delta = structure_score(h, d) - structure_score(g, d);
  EXPECT_NEAR(delta, bic_family_score(d, 3, {1, 0}) - bic_family_score(d, 3, {}), 1e-9);
  const double bdelta = bdeu_score(h, d, 2.0) - bdeu_score(g, d, 2.0);
  EXPECT_NEAR(bdelta, bdeu_family_score(d, 3, {1, 0}, 2.0) - bdeu_family_score(d, 3, {}, 2.0), 1e-9);
}

TEST(BdeuScore, SingleRowPriorPredictive)
{
  const Dag g(names(1));
  EXPECT_NEAR(bdeu_score(g, binary_data({{1}}), 1.0), std::log(0.5), 1e-12);
}

TEST(BdeuScore, EmptyDataScoresZero)
{
  Dag g(names(3));
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  const DiscreteDataset empty({2, 3, 2});
  EXPECT_EQ(bdeu_score(g, empty, 1.0), 0.0);
  EXPECT_EQ(bdeu_score(Dag(names(3)), empty, 4.0), 0.0);
  EXPECT_THROW(bdeu_score(g, empty, 0.0), std::invalid_argument);
}

TEST(BdeuScore, MarkovEquivalentGraphsScoreEqually)
{
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t ka = 2 + rng() % 3;
    const std::size_t kb = 2 + rng() % 3;
    DiscreteDataset d({ka, kb});
    const int n = 5 + static_cast<int>(rng() % 100);
    for (int i = 0; i < n; ++i) {
      const int a = static_cast<int>(rng() % ka);
      const int b = unit_uniform(rng) < 0.6 ? a % static_cast<int>(kb) : static_cast<int>(rng() % kb);
      d.add_row({a, b});
    }
    Dag ab(names(2));
    ab.add_edge(0, 1);
    Dag ba(names(2));
    ba.add_edge(1, 0);
    const double ess = 0.5 + 3.0 * unit_uniform(rng);
    EXPECT_NEAR(bdeu_score(ab, d, ess), bdeu_score(ba, d, ess), 1e-9);
    EXPECT_NEAR(structure_score(ab, d), structure_score(ba, d), 1e-9);
  }
}

TEST(HillClimb, IndependentCoinsStayUnconnected)
{
  Rng rng(31);
  DiscreteDataset d({2, 2});
  for (int i = 0; i < 10000; ++i) {
    d.add_row({static_cast<int>(rng() & 1u), static_cast<int>(rng() & 1u)});
  }
  for (const auto type : {ScoreType::bic, ScoreType::bdeu}) {
    HillClimbOptions opts;
    opts.score = type;
    const auto r = hill_climb(d, names(2), {Role::direct, Role::direct}, {}, opts);
    EXPECT_EQ(r.dag.edge_count(), 0u);
  }
}

TEST(HillClimb, CopyPairWithIndependentThird)
{
  Rng rng(32);
  DiscreteDataset d({2, 2, 2});
  for (int i = 0; i < 10000; ++i) {
    const int a = static_cast<int>(rng() & 1u);
    d.add_row({a, a, static_cast<int>(rng() & 1u)});
  }
  const std::vector<Role> roles(3, Role::direct);
  for (const auto type : {ScoreType::bic, ScoreType::bdeu}) {
    HillClimbOptions opts;
    opts.score = type;
    const auto r = hill_climb(d, names(3), roles, {}, opts);
    ASSERT_EQ(r.dag.edge_count(), 1u);
    EXPECT_TRUE(r.dag.has_edge(0, 1) || r.dag.has_edge(1, 0));
    EXPECT_GE(r.score, r.initial_score);
    EXPECT_NEAR(r.score, score(r.dag, d, type, opts.ess), 1e-6);
  }
}

TEST(HillClimb, RequiredAndForbiddenEdges)
{
  Rng rng(33);
  DiscreteDataset d({2, 2, 2});
  for (int i = 0; i < 2000; ++i) {
    const int a = static_cast<int>(rng() & 1u);
    d.add_row({a, a, static_cast<int>(rng() & 1u)});
  }
  EdgeConstraints c;
  c.required.insert({2, 0});
  c.forbidden.insert({0, 1});
  c.forbidden.insert({1, 0});
  const auto r = hill_climb(d, names(3), std::vector<Role>(3, Role::direct), c);
  EXPECT_TRUE(r.dag.has_edge(2, 0));
  EXPECT_FALSE(r.dag.has_edge(0, 1));
  EXPECT_FALSE(r.dag.has_edge(1, 0));
  EXPECT_TRUE(r.dag.is_acyclic());
}

TEST(HillClimb, InconsistentConstraintsRejected)
{
  const DiscreteDataset d({2, 2, 2});
  const std::vector<Role> roles(3, Role::direct);
  EdgeConstraints overlap;
  overlap.required.insert({0, 1});
  overlap.forbidden.insert({0, 1});
  EXPECT_THROW(hill_climb(d, names(3), roles, overlap), std::invalid_argument);
  EdgeConstraints cycle;
  cycle.required = {{0, 1}, {1, 2}, {2, 0}};
  EXPECT_THROW(hill_climb(d, names(3), roles, cycle), std::invalid_argument);
}

TEST(HillClimb, RandomDataKeepsInvariants)
{
  Rng rng(34);
  for (int trial = 0; trial < 5; ++trial) {
    DiscreteDataset d({2, 3, 2, 2, 3});
    for (int i = 0; i < 400; ++i) {
      const int a = static_cast<int>(rng() % 2);
      const int b = static_cast<int>(rng() % 3);
      const int c = unit_uniform(rng) < 0.7 ? a : static_cast<int>(rng() % 2);
      const int e = unit_uniform(rng) < 0.7 ? (c + b) % 2 : static_cast<int>(rng() % 2);
      d.add_row({a, b, c, e, static_cast<int>(rng() % 3)});
    }
    HillClimbOptions opts;
    opts.score = trial % 2 ? ScoreType::bdeu : ScoreType::bic;
    const auto r = hill_climb(d, names(5), std::vector<Role>(5, Role::direct), {}, opts);
    EXPECT_TRUE(r.dag.is_acyclic());
    EXPECT_GE(r.score, r.initial_score);
    EXPECT_EQ(r.iterations, r.moves.size());
    // A second run is identical.
    const auto again = hill_climb(d, names(5), std::vector<Role>(5, Role::direct), {}, opts);
    EXPECT_EQ(again.dag.edges(), r.dag.edges());
  }
}

TEST(SampleJoint, DeterministicChain)
{
  Dag g(names(2));
  g.add_edge(0, 1);
  auto net = make_categorical_net(g, {2, 2});
  set_node_cpt(net, 0, {{0.0, 1.0}});
  set_node_cpt(net, 1, {{1.0, 0.0}, {0.0, 1.0}});
  Rng rng(1);
  const auto d = sample_joint(net, 100, rng);
  for (std::size_t r = 0; r < d.rows(); ++r) {
    EXPECT_EQ(d.at(r, 0), 1);
    EXPECT_EQ(d.at(r, 1), 1);
  }
}

TEST(SampleJoint, FairCoinFrequency)
{
  auto net = make_categorical_net(Dag(names(1)), {2});
  set_node_cpt(net, 0, {{0.5, 0.5}});
  Rng rng(2);
  const auto d = sample_joint(net, 10000, rng);
  int ones = 0;
  for (std::size_t r = 0; r < d.rows(); ++r) {
    ones += d.at(r, 0);
  }
  EXPECT_GE(ones, 4800);
  EXPECT_LE(ones, 5200);
}

TEST(SampleJoint, MatchesEnumeratedJoint)
{
  Dag g(names(3));
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  auto net = make_categorical_net(g, {2, 3, 2});
  set_node_cpt(net, 0, {{0.3, 0.7}});
  set_node_cpt(net, 1, {{0.2, 0.5, 0.3}, {0.6, 0.1, 0.3}});
  set_node_cpt(net, 2, {{0.9, 0.1}, {0.4, 0.6}, {0.5, 0.5}, {0.2, 0.8}, {0.7, 0.3}, {0.05, 0.95}});
  Rng rng(3);
  const std::size_t n = 100000;
  const auto d = sample_joint(net, n, rng);
  std::map<std::vector<int>, double> freq;
  for (std::size_t r = 0; r < n; ++r) {
    freq[d.row_vector(r)] += 1.0 / static_cast<double>(n);
  }
  double tv = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 2; ++c) {
        const std::vector<int> x{a, b, c};
        tv += std::abs(freq[x] - joint_probability(net, x));
      }
    }
  }
  EXPECT_LT(0.5 * tv, 0.01);

  Rng again(3);
  const auto d2 = sample_joint(net, 1000, again);
  Rng third(3);
  const auto d3 = sample_joint(net, 1000, third);
  for (std::size_t r = 0; r < 1000; ++r) {
    ASSERT_EQ(d2.row_vector(r), d3.row_vector(r));
  }
}

TEST(Equivalence, StructuralHammingDistance)
{
  Dag chain(names(3));
  chain.add_edge(0, 1);
  chain.add_edge(1, 2);
  Dag reversed(names(3));
  reversed.add_edge(2, 1);
  reversed.add_edge(1, 0);
  Dag collider(names(3));
  collider.add_edge(0, 1);
  collider.add_edge(2, 1);
  EXPECT_EQ(structural_hamming_distance(chain, reversed), 0u);
  EXPECT_EQ(structural_hamming_distance(chain, collider), 2u);
  Dag missing(names(3));
  missing.add_edge(0, 1);
  EXPECT_EQ(structural_hamming_distance(chain, missing), 1u);
}

TEST(Dag, RejectsCyclesAndDuplicates)
{
  Dag g(names(3));
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  EXPECT_THROW(g.add_edge(2, 0), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 1), std::invalid_argument);
  EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
  const auto order = g.topological_order();
  EXPECT_EQ(order, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_THROW(Dag({"a", "a"}), std::invalid_argument);
}

TEST(NetworkIo, RoundTrip)
{
  Dag g(names(3), {Role::indirect, Role::direct, Role::direct});
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  auto net = make_categorical_net(g, {2, 3, 2});
  set_node_cpt(net, 0, {{0.25, 0.75}});
  set_node_cpt(net, 1, {{0.2, 0.5, 0.3}, {0.6, 0.1, 0.3}});
  set_node_cpt(net, 2, {{0.9, 0.1}, {0.4, 0.6}, {0.5, 0.5}});
  const auto back = network_from_json(nlohmann::json::parse(to_json(net).dump()));
  EXPECT_EQ(back.dag.edges(), net.dag.edges());
  EXPECT_EQ(back.dag.role(0), Role::indirect);
  EXPECT_EQ(back.cpt, net.cpt);
  EXPECT_EQ(back.spec, net.spec);

  auto broken = to_json(net);
  broken["edges"].push_back(nlohmann::json::array({"x2", "x0"}));
  EXPECT_ANY_THROW(network_from_json(broken));
}
