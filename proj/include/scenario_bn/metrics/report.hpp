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

#ifndef SCENARIO_BN__METRICS__REPORT_HPP_
#define SCENARIO_BN__METRICS__REPORT_HPP_

#include "scenario_bn/bayesnet/discretization.hpp"
#include "scenario_bn/metrics/cross_section.hpp"
#include "scenario_bn/metrics/distance.hpp"
#include "scenario_bn/trajectory/param_vector.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace scenario_bn::metrics
{

struct ReconstructionErrors
{
  double frechet_raw{0.0};
  double frechet_disc{0.0};
  double dtw_raw{0.0};
  double dtw_disc{0.0};
};

/// Parameter vector rebuilt from its bins: every direct value is redrawn
/// uniformly inside its bin until the invariants hold (at most
/// `max_redraws` tries, after which v_min is lowered to the smaller end
/// speed).
inline ParamVector discretized_params(
  const ParamVector & p, const bayesnet::DiscretizationSpec & spec, Rng & rng,
  const std::size_t max_redraws = 100)
{
  const auto & fields = param_fields();
  const auto original = to_row(p);
  std::vector<std::pair<std::size_t, std::size_t>> lift;  // (column, spec variable)
  std::vector<int> bins(fields.size(), 0);
  for (std::size_t f = 0; f < fields.size(); ++f) {
    if (fields[f].role != Role::direct) {
      continue;
    }
    const auto v = spec.find(fields[f].name);
    if (!v) {
      continue;
    }
    lift.emplace_back(f, *v);
    bins[f] = bayesnet::discretize_value(spec.variables[*v], original[f]);
  }
  ParamVector q = p;
  for (std::size_t attempt = 0; attempt < max_redraws; ++attempt) {
    auto row = original;
    for (const auto & [f, v] : lift) {
      row[f] = bayesnet::continuous_from_bin(spec.variables[v], static_cast<std::size_t>(bins[f]), rng);
    }
    q = from_row(row);
    if (satisfies_invariants(q)) {
      return q;
    }
  }
  q.v_min = std::min({q.v_min, q.v_entry, q.v_exit});
  return q;
}

/// Position errors of the raw and the discretized reconstruction against the
/// observed trajectory, all mapped onto `path`.
inline ReconstructionErrors reconstruction_errors(
  const FrenetTrajectory & observed, const ParamVector & p,
  const bayesnet::DiscretizationSpec & spec, const geometry::Polyline & path, Rng & rng)
{
  const double s0 = observed.samples.front().s;
  const std::size_t n = observed.size();
  const auto truth = to_cartesian(observed, path);
  const auto raw = to_cartesian(
    reconstruct_trajectory(knots_from_params(p, s0), n, observed.maneuver), path);
  const auto disc = to_cartesian(
    reconstruct_trajectory(knots_from_params(discretized_params(p, spec, rng), s0), n, observed.maneuver),
    path);
  return {
    discrete_frechet(truth, raw), discrete_frechet(truth, disc), dtw(truth, raw), dtw(truth, disc)};
}

struct ReconstructionRow
{
  std::string intersection;
  std::string maneuver;
  std::size_t count{0};
  ReconstructionErrors mean;
};

/// Means per (intersection, maneuver) in key order.
inline std::vector<ReconstructionRow> summarize_reconstruction(
  const std::vector<std::pair<std::pair<std::string, std::string>, ReconstructionErrors>> & items)
{
  std::map<std::pair<std::string, std::string>, ReconstructionRow> rows;
  for (const auto & [key, e] : items) {
    auto & r = rows[key];
    r.intersection = key.first;
    r.maneuver = key.second;
    ++r.count;
    r.mean.frechet_raw += e.frechet_raw;
    r.mean.frechet_disc += e.frechet_disc;
    r.mean.dtw_raw += e.dtw_raw;
    r.mean.dtw_disc += e.dtw_disc;
  }
  std::vector<ReconstructionRow> out;
  for (auto & [key, r] : rows) {
    const double n = static_cast<double>(r.count);
    r.mean.frechet_raw /= n;
    r.mean.frechet_disc /= n;
    r.mean.dtw_raw /= n;
    r.mean.dtw_disc /= n;
    out.push_back(r);
  }
  return out;
}

inline nlohmann::json to_json(const std::vector<ReconstructionRow> & rows)
{
  nlohmann::json j = nlohmann::json::array();
  for (const auto & r : rows) {
    j.push_back(
      {{"intersection", r.intersection},
       {"turn", r.maneuver},
       {"count", r.count},
       {"frechet_raw", r.mean.frechet_raw},
       {"frechet_disc", r.mean.frechet_disc},
       {"dtw_raw", r.mean.dtw_raw},
       {"dtw_disc", r.mean.dtw_disc}});
  }
  return j;
}

inline std::string to_text(const std::vector<ReconstructionRow> & rows)
{
  std::ostringstream os;
  char buf[160];
  std::snprintf(
    buf, sizeof(buf), "%-16s %-12s %6s %11s %11s %11s %11s\n", "Intersection", "Turn", "n",
    "Frechet raw", "Frechet disc", "DTW raw", "DTW disc");
  os << buf;
  for (const auto & r : rows) {
    std::snprintf(
      buf, sizeof(buf), "%-16s %-12s %6zu %11.3f %11.3f %11.3f %11.3f\n", r.intersection.c_str(),
      r.maneuver.c_str(), r.count, r.mean.frechet_raw, r.mean.frechet_disc, r.mean.dtw_raw,
      r.mean.dtw_disc);
    os << buf;
  }
  return os.str();
}

struct JsdEntry
{
  double s{0.0};
  double jsd{0.0};
  std::size_t n_generated{0};
  std::size_t n_reference{0};
  std::size_t excluded_generated{0};
  std::size_t excluded_reference{0};
};

struct JsdReport
{
  double bin_width{0.25};
  std::vector<JsdEntry> entries;
};

/// JSD of the t cross-sections of two trajectory sets over shared bins.
inline JsdReport jsd_report(
  const std::vector<FrenetTrajectory> & generated, const std::vector<FrenetTrajectory> & reference,
  const std::vector<double> & s_values, const double bin_width = 0.25)
{
  const auto g = cross_sections(generated, s_values);
  const auto r = cross_sections(reference, s_values);
  const auto edges = shared_t_edges({g, r}, bin_width);
  JsdReport rep;
  rep.bin_width = bin_width;
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    JsdEntry e;
    e.s = s_values[i];
    e.jsd = jsd(make_histogram(edges, g[i].values), make_histogram(edges, r[i].values));
    e.n_generated = g[i].values.size();
    e.n_reference = r[i].values.size();
    e.excluded_generated = g[i].excluded;
    e.excluded_reference = r[i].excluded;
    rep.entries.push_back(e);
  }
  return rep;
}

inline nlohmann::json to_json(const JsdReport & rep)
{
  nlohmann::json j;
  j["bin_width"] = rep.bin_width;
  j["cross_sections"] = nlohmann::json::array();
  for (const auto & e : rep.entries) {
    j["cross_sections"].push_back(
      {{"s", e.s},
       {"jsd_bits", e.jsd},
       {"n_generated", e.n_generated},
       {"n_reference", e.n_reference},
       {"excluded_generated", e.excluded_generated},
       {"excluded_reference", e.excluded_reference}});
  }
  return j;
}

inline std::string to_text(const JsdReport & rep)
{
  std::ostringstream os;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%8s %10s %8s %8s\n", "s [m]", "JSD [bit]", "n_gen", "n_ref");
  os << buf;
  for (const auto & e : rep.entries) {
    std::snprintf(
      buf, sizeof(buf), "%8.2f %10.4f %8zu %8zu\n", e.s, e.jsd, e.n_generated, e.n_reference);
    os << buf;
  }
  return os.str();
}

}  // namespace scenario_bn::metrics

#endif  // SCENARIO_BN__METRICS__REPORT_HPP_
