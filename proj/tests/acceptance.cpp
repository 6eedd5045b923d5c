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

// Acceptance runner. Prints one line per criterion:
//   [ACCEPT] criterion N: PASS|FAIL|SKIP  <details>
// and exits non-zero if a gating criterion fails. Criterion 11 needs real
// recordings (SCENARIO_BN_IND_DIR) and never gates.

#include "scenario_bn/bayesnet/equivalence.hpp"
#include "scenario_bn/bayesnet/hill_climb.hpp"
#include "scenario_bn/bayesnet/network.hpp"
#include "scenario_bn/bayesnet/score.hpp"
#include "scenario_bn/causal/inference.hpp"
#include "scenario_bn/causal/simplify.hpp"
#include "scenario_bn/generate/sampling.hpp"
#include "scenario_bn/generate/scenario.hpp"
#include "scenario_bn/harness/config_io.hpp"
#include "scenario_bn/harness/demo.hpp"
#include "scenario_bn/harness/pipeline.hpp"
#include "scenario_bn/harness/synthetic_world.hpp"
#include "scenario_bn/harness/trajectory_csv.hpp"
#include "scenario_bn/io.hpp"
#include "scenario_bn/metrics/distance.hpp"
#include "scenario_bn/metrics/histogram.hpp"
#include "scenario_bn/metrics/report.hpp"
#include "scenario_bn/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace scenario_bn;
using bayesnet::CausalNet;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
  bool pass{false};
  std::string detail;
  bool skipped{false};
};

class Stopwatch
{
public:
  double seconds() const
  {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_{std::chrono::steady_clock::now()};
};

std::string fmt(const double x, const int precision = 4)
{
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

std::vector<std::string> node_names(const std::size_t n)
{
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back("x" + std::to_string(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracles shared by several criteria.

double cpt_entry(const CausalNet & net, const std::size_t v, const std::vector<std::size_t> & x)
{
  const auto & node = net.cpt.nodes[v];
  std::size_t j = 0;
  for (std::size_t i = 0; i < node.parents.size(); ++i) {
    j = j * node.parent_cardinalities[i] + x[node.parents[i]];
  }
  return node.table[j * node.cardinality + x[v]];
}

// Visits every full assignment with the product of all CPT entries except
// the one of `skip`.
void enumerate(
  const CausalNet & net, const std::function<void(const std::vector<std::size_t> &, double)> & f,
  const std::size_t skip = std::numeric_limits<std::size_t>::max())
{
  const std::size_t n = net.size();
  std::vector<std::size_t> x(n, 0);
  while (true) {
    double w = 1.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (v != skip) {
        w *= cpt_entry(net, v, x);
      }
    }
    f(x, w);
    std::size_t i = n;
    while (true) {
      if (i == 0) {
        return;
      }
      --i;
      if (++x[i] < net.cardinality(i)) {
        break;
      }
      x[i] = 0;
    }
  }
}

std::vector<double> enumerated_marginal(const CausalNet & net, const std::size_t v)
{
  std::vector<double> out(net.cardinality(v), 0.0);
  enumerate(net, [&](const std::vector<std::size_t> & a, const double w) { out[a[v]] += w; });
  return out;
}

std::vector<double> random_row(const std::size_t k, Rng & rng)
{
  std::vector<double> row(k);
  double z = 0.0;
  for (auto & p : row) {
    p = 0.05 + unit_uniform(rng);
    z += p;
  }
  for (auto & p : row) {
    p /= z;
  }
  return row;
}

CausalNet random_net(
  const std::size_t n, const std::size_t max_card, const double edge_prob, Rng & rng,
  const std::vector<Role> & roles)
{
  bayesnet::Dag g(node_names(n), roles);
  for (std::size_t b = 1; b < n; ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      if (unit_uniform(rng) < edge_prob) {
        g.add_edge(a, b);
      }
    }
  }
  std::vector<std::size_t> cards(n);
  for (auto & k : cards) {
    k = 2 + rng() % (max_card - 1);
  }
  auto net = bayesnet::make_categorical_net(g, cards);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t q = 1;
    for (const auto p : net.dag.parents(v)) {
      q *= net.cardinality(p);
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < q; ++j) {
      rows.push_back(random_row(net.cardinality(v), rng));
    }
    bayesnet::set_node_cpt(net, v, rows);
  }
  return net;
}

struct CouplingCosts
{
  double best_max{std::numeric_limits<double>::infinity()};
  double best_sum{std::numeric_limits<double>::infinity()};
};

void walk(
  const std::vector<geometry::Point2> & p, const std::vector<geometry::Point2> & q, const std::size_t i,
  const std::size_t j, const double max_so_far, const double sum_so_far, CouplingCosts & out)
{
  const double d = geometry::distance(p[i], q[j]);
  const double mx = std::max(max_so_far, d);
  const double sm = sum_so_far + d;
  if (i + 1 == p.size() && j + 1 == q.size()) {
    out.best_max = std::min(out.best_max, mx);
    out.best_sum = std::min(out.best_sum, sm);
    return;
  }
  if (i + 1 < p.size()) {
    walk(p, q, i + 1, j, mx, sm, out);
  }
  if (j + 1 < q.size()) {
    walk(p, q, i, j + 1, mx, sm, out);
  }
  if (i + 1 < p.size() && j + 1 < q.size()) {
    walk(p, q, i + 1, j + 1, mx, sm, out);
  }
}

// Noise-free or noisy world pushed through the CSV, with ingested tracks and
// extracted records per intersection.
struct Observed
{
  harness::SyntheticWorld world;
  std::vector<harness::IngestedTrack> tracks;
  std::vector<harness::ExtractedRecord> records;
  std::size_t failures{0};
};

Observed observe(const harness::SyntheticWorldSpec & spec, const std::set<std::string> & only = {})
{
  Observed o;
  o.world = harness::generate_synthetic_world(spec);
  for (const auto & map : o.world.maps) {
    if (!only.empty() && only.count(map.intersection_id) == 0) {
      continue;
    }
    auto ingested = harness::ingest_trajectories(harness::to_csv(o.world.csv.at(map.intersection_id)), map);
    auto [records, failures] = harness::extract_records(ingested.tracks, map);
    o.failures += failures.size() + ingested.rejects.size();
    o.tracks.insert(o.tracks.end(), ingested.tracks.begin(), ingested.tracks.end());
    o.records.insert(o.records.end(), records.begin(), records.end());
  }
  return o;
}

const LaneMap & find_map(const std::vector<LaneMap> & maps, const std::string & id)
{
  for (const auto & m : maps) {
    if (m.intersection_id == id) {
      return m;
    }
  }
  throw std::out_of_range("no intersection " + id);
}

std::vector<ParamVector> params_of(const std::vector<harness::ExtractedRecord> & records)
{
  std::vector<ParamVector> out;
  for (const auto & r : records) {
    out.push_back(r.params);
  }
  return out;
}

// ---------------------------------------------------------------------------

Outcome criterion_1()
{
  Stopwatch clock;
  auto spec = harness::demo_world_spec(101, 34);
  spec.noise_sigma = 0.0;
  const auto clean = harness::generate_synthetic_world(spec);
  double max_frechet = 0.0;
  double max_dtw = 0.0;
  std::size_t n_clean = 0;
  for (const auto & w : clean.tracks) {
    const auto & arm = find_map(clean.maps, w.intersection_id).arm(w.arm_id);
    const auto p = extract_param_vector(w.trajectory, arm, w.params.conflict_present);
    const auto rebuilt = reconstruct_trajectory(
      knots_from_params(p, w.trajectory.samples.front().s), w.trajectory.size(), w.trajectory.maneuver);
    const auto a = to_cartesian(w.trajectory, arm.centerline);
    const auto b = to_cartesian(rebuilt, arm.centerline);
    max_frechet = std::max(max_frechet, metrics::discrete_frechet(a, b));
    max_dtw = std::max(max_dtw, metrics::dtw(a, b));
    ++n_clean;
  }

  // Noisy positions through the CSV; errors against the noise-free truth.
  spec.noise_sigma = 0.05;
  spec.seed = 102;
  const auto noisy = observe(spec);
  double sum = 0.0;
  std::size_t n_noisy = 0;
  for (const auto & tr : noisy.tracks) {
    if (n_noisy == 200) {
      break;
    }
    const auto & map = find_map(noisy.world.maps, tr.intersection_id);
    const auto & arm = map.arm(tr.arm_id);
    const auto p = extract_param_vector(tr.trajectory, arm, tr.conflict_present);
    const auto rebuilt = reconstruct_trajectory(
      knots_from_params(p, tr.trajectory.samples.front().s), tr.trajectory.size(), tr.trajectory.maneuver);
    for (const auto & w : noisy.world.tracks) {
      if (w.intersection_id == tr.intersection_id && w.track_id == tr.track_id) {
        sum += metrics::discrete_frechet(
          to_cartesian(w.trajectory, arm.centerline), to_cartesian(rebuilt, arm.centerline));
        ++n_noisy;
      }
    }
  }
  const double mean_noisy = sum / static_cast<double>(std::max<std::size_t>(n_noisy, 1));
  const double secs = clock.seconds();
  const bool pass = n_clean >= 200 && max_frechet < 1e-6 && max_dtw < 1e-5 && n_noisy == 200 &&
                    mean_noisy <= 0.15 && secs < 10.0;
  return {
    pass, "noise-free n=" + std::to_string(n_clean) + " max Frechet=" + fmt(max_frechet) +
            " m, max DTW=" + fmt(max_dtw) + "; sigma=0.05 n=" + std::to_string(n_noisy) +
            " mean Frechet=" + fmt(mean_noisy) + " m; " + fmt(secs, 3) + " s"};
}

Outcome criterion_2()
{
  const auto obs = observe(harness::demo_world_spec(202, 80));
  const auto spec = bayesnet::build_discretization(params_of(obs.records), 5);
  bool pass = obs.failures == 0;
  std::size_t rows = 0;
  std::string worst;
  for (const auto & map : obs.world.maps) {
    std::vector<harness::IngestedTrack> tracks;
    for (const auto & t : obs.tracks) {
      if (t.intersection_id == map.intersection_id) {
        tracks.push_back(t);
      }
    }
    for (const auto & r : harness::evaluate_reconstruction(tracks, map, spec, 203)) {
      ++rows;
      const bool ok = r.mean.frechet_disc >= r.mean.frechet_raw && r.mean.dtw_disc >= r.mean.dtw_raw;
      pass = pass && ok;
      if (!ok || worst.empty()) {
        worst = r.intersection + "/" + r.maneuver + " Frechet " + fmt(r.mean.frechet_raw, 3) + "->" +
                fmt(r.mean.frechet_disc, 3) + " DTW " + fmt(r.mean.dtw_raw, 3) + "->" + fmt(r.mean.dtw_disc, 3);
      }
    }
  }
  pass = pass && rows == 9;
  return {pass, std::to_string(rows) + " arms, disc >= raw on both columns; e.g. " + worst};
}

Outcome criterion_3()
{
  Stopwatch clock;
  using bayesnet::Dag;
  // Planted tree: x0 -> x2 <- x1, x2 -> x3, x3 -> x4, x3 -> x5.
  Dag truth(node_names(6));
  truth.add_edge(0, 2);
  truth.add_edge(1, 2);
  truth.add_edge(2, 3);
  truth.add_edge(3, 4);
  truth.add_edge(3, 5);
  auto net = bayesnet::make_categorical_net(truth, {2, 2, 3, 2, 2, 3});
  bayesnet::set_node_cpt(net, 0, {{0.5, 0.5}});
  bayesnet::set_node_cpt(net, 1, {{0.4, 0.6}});
  bayesnet::set_node_cpt(
    net, 2, {{0.85, 0.1, 0.05}, {0.1, 0.8, 0.1}, {0.1, 0.1, 0.8}, {0.05, 0.15, 0.8}});
  bayesnet::set_node_cpt(net, 3, {{0.9, 0.1}, {0.2, 0.8}, {0.1, 0.9}});
  bayesnet::set_node_cpt(net, 4, {{0.85, 0.15}, {0.15, 0.85}});
  bayesnet::set_node_cpt(net, 5, {{0.8, 0.1, 0.1}, {0.1, 0.1, 0.8}});
  Rng rng(303);
  const auto data = bayesnet::sample_joint(net, 10000, rng);

  bayesnet::EdgeConstraints c;
  c.required.insert({2, 3});
  c.forbidden.insert({5, 0});
  c.forbidden.insert({4, 1});
  const auto res = bayesnet::hill_climb(data, node_names(6), std::vector<Role>(6, Role::direct), c);
  const auto shd = bayesnet::structural_hamming_distance(res.dag, truth);
  const double secs = clock.seconds();
  const bool pass = shd <= 1 && res.dag.has_edge(2, 3) && !res.dag.has_edge(5, 0) && !res.dag.has_edge(4, 1) &&
                    res.dag.is_acyclic() && secs < 30.0;
  return {
    pass, "SHD to planted class=" + std::to_string(shd) + ", required present=" +
            (res.dag.has_edge(2, 3) ? "yes" : "no") + ", " + fmt(secs, 3) + " s"};
}

Outcome criterion_4()
{
  using bayesnet::Dag;
  using bayesnet::DiscreteDataset;
  DiscreteDataset four({2});
  for (int i = 0; i < 8; ++i) {
    four.add_row({i < 4 ? 0 : 1});
  }
  const double s = bayesnet::structure_score(Dag(node_names(1)), four);
  DiscreteDataset one({2});
  one.add_row({1});
  const double b = bayesnet::bdeu_score(Dag(node_names(1)), one, 1.0);

  Rng rng(404);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t ka = 2 + rng() % 3;
    const std::size_t kb = 2 + rng() % 3;
    DiscreteDataset d({ka, kb});
    const int n = 10 + static_cast<int>(rng() % 200);
    for (int i = 0; i < n; ++i) {
      const int a = static_cast<int>(rng() % ka);
      d.add_row({a, unit_uniform(rng) < 0.7 ? a % static_cast<int>(kb) : static_cast<int>(rng() % kb)});
    }
    Dag ab(node_names(2));
    ab.add_edge(0, 1);
    Dag ba(node_names(2));
    ba.add_edge(1, 0);
    const double ess = 0.5 + 4.0 * unit_uniform(rng);
    worst = std::max(worst, std::abs(bayesnet::bdeu_score(ab, d, ess) - bayesnet::bdeu_score(ba, d, ess)));
  }
  const bool pass = std::abs(s + 6.5849) <= 1e-4 && std::abs(b - std::log(0.5)) <= 1e-9 && worst <= 1e-9;
  return {
    pass, "BIC 4/4=" + fmt(s, 8) + ", BDeu 1 row=" + fmt(b, 12) + ", max equivalent-pair gap=" + fmt(worst)};
}

Outcome criterion_5()
{
  Rng rng(505);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const auto net = random_net(n, 2, 0.5, rng, std::vector<Role>(n, Role::direct));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y) {
          continue;
        }
        for (std::size_t value = 0; value < 2; ++value) {
          // Truncated product: P(x) factor dropped, x clamped.
          std::vector<double> oracle(2, 0.0);
          enumerate(
            net,
            [&](const std::vector<std::size_t> & a, const double w) {
              if (a[x] == value) {
                oracle[a[y]] += w;
              }
            },
            x);
          const auto got = causal::do_effect(net, {net.dag.name(y), net.dag.name(x), value}).p;
          for (std::size_t k = 0; k < 2; ++k) {
            worst = std::max(worst, std::abs(got[k] - oracle[k]));
          }
        }
      }
    }
  }

  bayesnet::Dag g({"Z", "X", "Y"});
  g.add_edge("Z", "X");
  g.add_edge("Z", "Y");
  g.add_edge("X", "Y");
  auto net = bayesnet::make_categorical_net(g, {2, 2, 2});
  bayesnet::set_node_cpt(net, 0, {{0.5, 0.5}});
  bayesnet::set_node_cpt(net, 1, {{0.9, 0.1}, {0.1, 0.9}});
  bayesnet::set_node_cpt(net, 2, {{0.7, 0.3}, {0.8, 0.2}, {0.4, 0.6}, {0.2, 0.8}});
  const double interventional = causal::do_effect(net, {"Y", "X", 1}).p[1];
  const double observational = causal::observational_effect(net, "Y", "X", 1).p[1];
  const bool pass =
    worst < 1e-12 && std::abs(interventional - 0.5) <= 1e-12 && std::abs(observational - 0.74) <= 1e-12;
  return {
    pass, "50 nets max |delta|=" + fmt(worst) + "; confounder do=" + fmt(interventional, 15) +
            " obs=" + fmt(observational, 15)};
}

double expected_under_do(
  const CausalNet & net, const std::string & target, const std::string & source, const std::size_t value)
{
  const auto y = net.dag.index_of(target);
  const auto p = causal::do_effect(net, {target, source, value}).p;
  double e = 0.0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    e += p[s] * net.spec.variables[y].bin_means[s];
  }
  return e;
}

Outcome criterion_6()
{
  Stopwatch clock;
  const auto obs = observe(harness::effect_world_spec(606, 556));
  harness::LearnOptions lo;
  lo.bins = 15;
  lo.alpha = 0.1;
  const auto learned = harness::learn_network(params_of(obs.records), harness::default_constraints_json(), lo);
  const auto & net = learned.net;
  const auto cs = net.spec.variables[net.dag.index_of("construction_site")];
  const auto level = [&](const std::string & label) {
    return static_cast<std::size_t>(std::find(cs.labels.begin(), cs.labels.end(), label) - cs.labels.begin());
  };
  const double conflict_shift =
    expected_under_do(net, "t_apex", "conflict_present", 1) - expected_under_do(net, "t_apex", "conflict_present", 0);
  const double construction_shift = expected_under_do(net, "t_apex", "construction_site", level("far_side")) -
                                    expected_under_do(net, "t_apex", "construction_site", level("none"));
  const double secs = clock.seconds();
  const bool pass = obs.records.size() >= 5000 && std::abs(conflict_shift - 0.3) <= 0.05 &&
                    std::abs(construction_shift + 0.4) <= 0.05 && secs < 120.0;
  return {
    pass, std::to_string(obs.records.size()) + " trajectories; conflict shift=" + fmt(conflict_shift) +
            " m (planted 0.3), far-side shift=" + fmt(construction_shift) + " m (planted -0.4); " +
            fmt(secs, 3) + " s"};
}

std::vector<FrenetTrajectory> trajectories_of(const std::vector<generate::GeneratedScenario> & list)
{
  std::vector<FrenetTrajectory> out;
  for (const auto & s : list) {
    out.push_back(s.trajectory);
  }
  return out;
}

// Maneuver-only sampling from the learned net: ignores every attribute of the
// target arm.
std::vector<FrenetTrajectory> baseline_trajectories(
  const CausalNet & net, const ArmGeometry & arm, const Maneuver m, const std::size_t n, const std::uint64_t seed)
{
  const auto full = generate::evidence_from_arm(net, arm, m);
  const generate::Evidence ev{{"maneuver", full.at("maneuver")}};
  Rng rng(seed);
  std::vector<FrenetTrajectory> out;
  for (int round = 0; round < 20 && out.size() < n; ++round) {
    const auto rows = generate::sample_with_evidence(net, ev, n, rng);
    for (std::size_t r = 0; r < rows.rows() && out.size() < n; ++r) {
      if (const auto p = generate::lift_row(net, rows.row_vector(r), arm, m, 100, rng)) {
        out.push_back(generate::trajectory_from_params(*p, 25.0));
      }
    }
  }
  return out;
}

struct TransferRun
{
  double worst_jsd{0.0};
  double generated_mean{0.0};
  double baseline_mean{0.0};
};

TransferRun transfer_run(const std::uint64_t seed)
{
  auto spec = harness::demo_world_spec(seed, 150);
  const auto train = observe(spec, {"A", "B"});
  const auto learned = harness::learn_network(params_of(train.records), harness::default_constraints_json());

  // Ground-truth sampler: fresh noise-free draws of the planted mechanism on C.
  auto truth_spec = harness::demo_world_spec(derive_seed(seed, 1), 1000);
  truth_spec.noise_sigma = 0.0;
  truth_spec.maps = {find_map(spec.maps, "C")};
  const auto truth = harness::generate_synthetic_world(truth_spec);

  TransferRun run;
  std::size_t entries = 0;
  for (const auto & arm : truth_spec.maps.front().arms) {
    const Maneuver m = harness::maneuver_of(arm);
    std::vector<FrenetTrajectory> reference;
    for (const auto & w : truth.tracks) {
      if (w.arm_id == arm.id) {
        reference.push_back(w.trajectory);
      }
    }
    const auto gen = generate::generate_scenarios(learned.net, arm, m, {}, 1000, derive_seed(seed, 2));
    const auto base = baseline_trajectories(learned.net, arm, m, 1000, derive_seed(seed, 3));
    const auto g = metrics::jsd_report(trajectories_of(gen.scenarios), reference, {5.0, 30.0});
    const auto b = metrics::jsd_report(base, reference, {5.0, 30.0});
    for (std::size_t i = 0; i < g.entries.size(); ++i) {
      run.worst_jsd = std::max(run.worst_jsd, g.entries[i].jsd);
      run.generated_mean += g.entries[i].jsd;
      run.baseline_mean += b.entries[i].jsd;
      ++entries;
    }
  }
  run.generated_mean /= static_cast<double>(entries);
  run.baseline_mean /= static_cast<double>(entries);
  return run;
}

Outcome criterion_7()
{
  std::size_t wins = 0;
  double worst = 0.0;
  std::string per_seed;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = transfer_run(700 + seed);
    wins += r.generated_mean < r.baseline_mean ? 1 : 0;
    worst = std::max(worst, r.worst_jsd);
    per_seed += " " + fmt(r.generated_mean, 3) + "/" + fmt(r.baseline_mean, 3);
  }
  const bool pass = worst < 0.1 && wins >= 9;
  return {
    pass, "max JSD over seeds, arms and s in {5,30}=" + fmt(worst) + " bit; generated beats baseline in " +
            std::to_string(wins) + "/10 seeds (mean JSD gen/base:" + per_seed + ")"};
}

Outcome criterion_8()
{
  Rng rng(808);
  double worst = 0.0;
  for (int pair = 0; pair < 200; ++pair) {
    const auto seq = [&](const std::size_t n) {
      std::vector<geometry::Point2> out;
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back({10.0 * unit_uniform(rng) - 5.0, 10.0 * unit_uniform(rng) - 5.0});
      }
      return out;
    };
    const auto p = seq(1 + rng() % 6);
    const auto q = seq(1 + rng() % 6);
    CouplingCosts c;
    walk(p, q, 0, 0, 0.0, 0.0, c);
    worst = std::max(worst, std::abs(metrics::discrete_frechet(p, q) - c.best_max));
    worst = std::max(worst, std::abs(metrics::dtw(p, q) - c.best_sum));
  }
  const double hand = metrics::jsd({0.5, 0.5}, {1.0, 0.0});
  const double same = metrics::jsd({0.2, 0.3, 0.5}, {0.2, 0.3, 0.5});
  const double disjoint = metrics::jsd({0.5, 0.5, 0.0, 0.0}, {0.0, 0.0, 0.25, 0.75});
  const bool pass = worst <= 1e-12 && std::abs(hand - 0.3113) <= 1e-4 && same == 0.0 && disjoint == 1.0;
  return {
    pass, "200 pairs max |delta|=" + fmt(worst) + "; JSD example=" + fmt(hand, 6) + ", JSD(P,P)=" + fmt(same) +
            ", disjoint=" + fmt(disjoint)};
}

// Connected components of the indirect-only subgraph, with their boundary
// edges, recomputed here from the DAG.
std::vector<std::pair<std::set<std::size_t>, std::vector<bayesnet::Edge>>> clusters_of(const bayesnet::Dag & dag)
{
  std::vector<std::pair<std::set<std::size_t>, std::vector<bayesnet::Edge>>> out;
  std::set<std::size_t> seen;
  for (std::size_t v = 0; v < dag.size(); ++v) {
    if (dag.role(v) != Role::indirect || seen.count(v)) {
      continue;
    }
    std::set<std::size_t> members{v};
    std::vector<std::size_t> stack{v};
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      auto next = dag.parents(u);
      const auto ch = dag.children(u);
      next.insert(next.end(), ch.begin(), ch.end());
      for (const auto w : next) {
        if (dag.role(w) == Role::indirect && members.insert(w).second) {
          stack.push_back(w);
        }
      }
    }
    seen.insert(members.begin(), members.end());
    std::vector<bayesnet::Edge> boundary;
    for (const auto & [a, b] : dag.edges()) {
      if (members.count(a) != members.count(b)) {
        boundary.emplace_back(a, b);
      }
    }
    out.emplace_back(members, boundary);
  }
  return out;
}

Outcome criterion_9()
{
  Rng rng(909);
  double worst = 0.0;
  bool structure_ok = true;
  std::size_t removed = 0;
  std::size_t aggregated = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + rng() % 7;
    std::vector<Role> roles(n);
    for (auto & r : roles) {
      r = unit_uniform(rng) < 0.5 ? Role::indirect : Role::direct;
    }
    const auto net = random_net(n, 3, 0.2, rng, roles);
    const auto res = causal::simplify_network(net);
    for (std::size_t v = 0; v < n; ++v) {
      if (roles[v] != Role::direct) {
        continue;
      }
      const auto w = res.net.dag.find(net.dag.name(v));
      if (!w) {
        structure_ok = false;
        continue;
      }
      const auto before = enumerated_marginal(net, v);
      const auto after = enumerated_marginal(res.net, *w);
      for (std::size_t k = 0; k < before.size(); ++k) {
        worst = std::max(worst, std::abs(after[k] - before[k]));
      }
    }
    // Every original cluster without boundary edges is gone; every cluster
    // with one boundary edge and several members is one aggregate now.
    for (const auto & [members, boundary] : clusters_of(net.dag)) {
      if (boundary.empty()) {
        for (const auto v : members) {
          structure_ok = structure_ok && !res.net.dag.find(net.dag.name(v)) &&
                         std::count(res.removed.begin(), res.removed.end(), net.dag.name(v)) == 1;
        }
        removed += members.size();
      } else if (boundary.size() == 1 && members.size() >= 2) {
        const auto [a, b] = boundary.front();
        const bool input = members.count(b) > 0;
        const auto inner = net.dag.name(input ? b : a);
        const auto outer = net.dag.name(input ? a : b);
        const auto it = std::find_if(res.aggregates.begin(), res.aggregates.end(), [&](const auto & agg) {
          return agg.boundary_member == inner;
        });
        if (it == res.aggregates.end() || it->neighbor != outer || it->input != input ||
            it->members.size() != members.size()) {
          structure_ok = false;
          continue;
        }
        const auto slot = res.net.dag.find(it->name);
        const auto nb = res.net.dag.find(outer);
        structure_ok = structure_ok && slot && nb &&
                       (input ? res.net.dag.has_edge(*nb, *slot) : res.net.dag.has_edge(*slot, *nb));
        for (const auto v : members) {
          structure_ok = structure_ok && !res.net.dag.find(net.dag.name(v));
        }
        ++aggregated;
      }
    }
    // Nothing left to simplify.
    for (const auto & [members, boundary] : clusters_of(res.net.dag)) {
      structure_ok = structure_ok && !boundary.empty() && !(boundary.size() == 1 && members.size() >= 2);
    }
  }
  const bool pass = worst <= 1e-9 && structure_ok && removed > 0 && aggregated > 0;
  return {
    pass, "20 nets; max direct-marginal |delta|=" + fmt(worst) + "; removed " + std::to_string(removed) +
            " isolated indirect nodes, " + std::to_string(aggregated) + " aggregates; structure " +
            (structure_ok ? "ok" : "wrong")};
}

int run_cli(const std::string & args)
{
  const std::string cmd = std::string("\"") + SCENARIO_BN_CLI + "\" " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

bool demo_pipeline(const fs::path & dir)
{
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string d = "\"" + dir.string();
  bool ok = run_cli("synth --samples 60 --seed 1010 --out " + d + "/world\"") == 0;
  ok = ok && run_cli(
               "extract --csv " + d + "/world/A.csv\" --map " + d + "/world/A.map.json\" --csv " + d +
               "/world/B.csv\" --map " + d + "/world/B.map.json\" --out " + d + "/params.json\"") == 0;
  ok = ok && run_cli(
               "learn --params " + d + "/params.json\" --constraints " + d + "/world/constraints.json\" --out " +
               d + "/net.json\"") == 0;
  ok = ok && run_cli(
               "generate --net " + d + "/net.json\" --map " + d + "/world/C.map.json\" --arm C_left --n 200 --seed 5 --out " +
               d + "/scenarios.json\"") == 0;
  ok = ok && run_cli(
               "evaluate --csv " + d + "/world/C.csv\" --map " + d + "/world/C.map.json\" --scenarios " + d +
               "/scenarios.json\" --net " + d + "/net.json\" --out " + d + "/report.json\"") == 0;
  return ok;
}

// Both runs use the same directory because the report records its input
// paths.
Outcome criterion_10()
{
  const auto root = fs::temp_directory_path() / "scenario_bn_acceptance_c10";
  const std::vector<std::string> files{"world/C.csv", "params.json", "net.json", "scenarios.json", "report.json"};
  std::vector<std::string> first;
  bool ran = demo_pipeline(root / "run");
  for (const auto & f : files) {
    first.push_back(ran ? read_text_file(root / "run" / f) : std::string());
  }
  ran = ran && demo_pipeline(root / "run");
  bool same = ran;
  for (std::size_t i = 0; i < files.size() && ran; ++i) {
    same = same && read_text_file(root / "run" / files[i]) == first[i];
  }
  fs::remove_all(root);
  std::string listed;
  for (const auto & f : files) {
    listed += (listed.empty() ? "" : ", ") + f;
  }
  if (!ran) {
    return {false, "demo pipeline failed to run"};
  }
  return {same, (same ? "byte-identical: " : "differs among: ") + listed};
}

Outcome criterion_11()
{
  const char * dir = std::getenv("SCENARIO_BN_IND_DIR");
  if (!dir) {
    return {true, "SCENARIO_BN_IND_DIR not set", true};
  }
  // <dir>/<name>.csv next to <dir>/<name>.map.json.
  std::vector<harness::IngestedTrack> tracks;
  std::vector<std::pair<LaneMap, std::vector<harness::IngestedTrack>>> per_map;
  std::vector<ParamVector> params;
  for (const auto & entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".csv") {
      continue;
    }
    auto map_path = entry.path();
    map_path.replace_extension(".map.json");
    if (!fs::exists(map_path)) {
      continue;
    }
    const auto map = harness::load_lane_map(map_path);
    auto ingested = harness::ingest_trajectories(entry.path(), map);
    const auto [records, failures] = harness::extract_records(ingested.tracks, map);
    for (const auto & r : records) {
      params.push_back(r.params);
    }
    per_map.emplace_back(map, ingested.tracks);
  }
  if (params.empty()) {
    return {false, "no <name>.csv with <name>.map.json pairs in " + std::string(dir)};
  }
  const auto spec = bayesnet::build_discretization(params, 5);
  bool pass = true;
  std::string rows;
  for (const auto & [map, tr] : per_map) {
    for (const auto & r : harness::evaluate_reconstruction(tr, map, spec, 1111)) {
      const double ratio = r.mean.frechet_disc / r.mean.frechet_raw;
      pass = pass && r.mean.frechet_raw >= 0.1 && r.mean.frechet_raw <= 2.0 && ratio >= 1.2 && ratio <= 4.0;
      rows += " " + r.intersection + "/" + r.maneuver + ":" + fmt(r.mean.frechet_raw, 3) + "->" +
              fmt(r.mean.frechet_disc, 3);
    }
  }
  return {pass, "Frechet raw->disc" + rows};
}

}  // namespace

int main()
{
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
    {1, criterion_1}, {2, criterion_2}, {3, criterion_3},  {4, criterion_4},
    {5, criterion_5}, {6, criterion_6}, {7, criterion_7},  {8, criterion_8},
    {9, criterion_9}, {10, criterion_10}, {11, criterion_11}};
  bool gating_ok = true;
  for (const auto & [id, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception & e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const char * status = o.skipped ? "SKIP" : (o.pass ? "PASS" : "FAIL");
    std::cout << "[ACCEPT] criterion " << id << ": " << status << "  " << o.detail
              << (id == 11 ? " (not gating)" : "") << std::endl;
    if (id != 11 && !o.pass) {
      gating_ok = false;
    }
  }
  return gating_ok ? 0 : 1;
}
