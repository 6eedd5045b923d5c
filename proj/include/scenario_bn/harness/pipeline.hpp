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

#ifndef SCENARIO_BN__HARNESS__PIPELINE_HPP_
#define SCENARIO_BN__HARNESS__PIPELINE_HPP_

#include "scenario_bn/bayesnet/hill_climb.hpp"
#include "scenario_bn/bayesnet/network_io.hpp"
#include "scenario_bn/generate/scenario_io.hpp"
#include "scenario_bn/harness/config_io.hpp"
#include "scenario_bn/harness/trajectory_csv.hpp"
#include "scenario_bn/metrics/report.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scenario_bn::harness
{

using bayesnet::CausalNet;

struct ExtractedRecord
{
  std::string intersection_id;
  std::string recording_id;
  std::string track_id;
  std::string arm_id;
  double s_start{0.0};
  ParamVector params;

  friend bool operator==(const ExtractedRecord &, const ExtractedRecord &) = default;
};

struct ExtractFailure
{
  std::string track;
  std::string reason;
};

/// Fits every ingested track and reads its parameter vector.
inline std::pair<std::vector<ExtractedRecord>, std::vector<ExtractFailure>> extract_records(
  const std::vector<IngestedTrack> & tracks, const LaneMap & map)
{
  std::vector<ExtractedRecord> out;
  std::vector<ExtractFailure> failed;
  for (const auto & tr : tracks) {
    try {
      ExtractedRecord r;
      r.intersection_id = tr.intersection_id;
      r.recording_id = tr.recording_id;
      r.track_id = tr.track_id;
      r.arm_id = tr.arm_id;
      r.s_start = tr.trajectory.samples.front().s;
      r.params = extract_param_vector(tr.trajectory, map.arm(tr.arm_id), tr.conflict_present);
      check_param_vector(r.params);
      out.push_back(std::move(r));
    } catch (const std::exception & e) {
      failed.push_back({tr.recording_id + "/" + tr.track_id, e.what()});
    }
  }
  return {std::move(out), std::move(failed)};
}

inline constexpr const char * kParamsFormat = "scenario_bn/params";

inline nlohmann::json records_to_json(const std::vector<ExtractedRecord> & records)
{
  nlohmann::json list = nlohmann::json::array();
  for (const auto & r : records) {
    list.push_back(
      {{"intersection_id", r.intersection_id},
       {"recording_id", r.recording_id},
       {"track_id", r.track_id},
       {"arm_id", r.arm_id},
       {"s_start", r.s_start},
       {"params", generate::params_to_json(r.params)}});
  }
  return {{"format", kParamsFormat}, {"version", 1}, {"records", list}};
}

inline std::vector<ExtractedRecord> records_from_json(const nlohmann::json & j)
{
  if (j.value("format", "") != kParamsFormat) {
    throw std::invalid_argument("not a parameter document (format != scenario_bn/params)");
  }
  std::vector<ExtractedRecord> out;
  for (const auto & e : j.at("records")) {
    ExtractedRecord r;
    r.intersection_id = e.at("intersection_id").get<std::string>();
    r.recording_id = e.at("recording_id").get<std::string>();
    r.track_id = e.at("track_id").get<std::string>();
    r.arm_id = e.at("arm_id").get<std::string>();
    r.s_start = e.at("s_start").get<double>();
    r.params = generate::params_from_json(e.at("params"));
    check_param_vector(r.params);
    out.push_back(std::move(r));
  }
  return out;
}

struct LearnOptions
{
  std::size_t bins{5};
  bayesnet::ScoreType score{bayesnet::ScoreType::bic};
  double ess{1.0};
  double alpha{1.0};
  std::size_t max_iters{1000};
};

struct LearnResult
{
  CausalNet net;
  bayesnet::HillClimbResult search;
};

/// Discretizes the parameter vectors, searches a structure under the
/// constraints and fits the CPTs.
inline LearnResult learn_network(
  const std::vector<ParamVector> & params, const std::optional<nlohmann::json> & constraints,
  const LearnOptions & opts = {})
{
  LearnResult res;
  auto & net = res.net;
  net.spec = bayesnet::build_discretization(params, opts.bins);
  const auto data = bayesnet::discretize(params, net.spec);
  std::vector<std::string> names;
  std::vector<Role> roles;
  for (const auto & f : param_fields()) {
    names.emplace_back(f.name);
    roles.push_back(f.role);
  }
  const auto c = constraints ? constraints_from_json(*constraints, names) : bayesnet::EdgeConstraints{};
  bayesnet::HillClimbOptions hc;
  hc.score = opts.score;
  hc.ess = opts.ess;
  hc.max_iters = opts.max_iters;
  res.search = bayesnet::hill_climb(data, names, roles, c, hc);
  net.dag = res.search.dag;
  net.cpt = bayesnet::fit_cpts(net.dag, data, opts.alpha);
  net.validate();
  return res;
}

/// Raw and discretized reconstruction errors for ingested tracks against the
/// binning of `spec`. Each track gets its own rng stream.
inline std::vector<metrics::ReconstructionRow> evaluate_reconstruction(
  const std::vector<IngestedTrack> & tracks, const LaneMap & map,
  const bayesnet::DiscretizationSpec & spec, const std::uint64_t seed)
{
  std::vector<std::pair<std::pair<std::string, std::string>, metrics::ReconstructionErrors>> items;
  std::uint64_t index = 0;
  for (const auto & tr : tracks) {
    const auto & arm = map.arm(tr.arm_id);
    Rng rng(derive_seed(seed, index++));
    const auto p = extract_param_vector(tr.trajectory, arm, tr.conflict_present);
    items.push_back(
      {{tr.intersection_id, std::string(to_string(tr.trajectory.maneuver))},
       metrics::reconstruction_errors(tr.trajectory, p, spec, arm.centerline, rng)});
  }
  return metrics::summarize_reconstruction(items);
}

}  // namespace scenario_bn::harness

#endif  // SCENARIO_BN__HARNESS__PIPELINE_HPP_
