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

#include "scenario_bn/causal/effect_report.hpp"
#include "scenario_bn/causal/simplify.hpp"
#include "scenario_bn/generate/scenario_io.hpp"
#include "scenario_bn/harness/demo.hpp"
#include "scenario_bn/harness/pipeline.hpp"
#include "scenario_bn/harness/synthetic_world.hpp"

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbn = scenario_bn;
using nlohmann::json;

namespace
{

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

void print_error(const std::string & command, const std::string & type, const std::string & message)
{
  const json e{{"error", {{"command", command}, {"type", type}, {"message", message}}}};
  std::cerr << e.dump() << "\n";
}

std::vector<sbn::LaneMap> load_maps(const std::vector<std::string> & paths)
{
  std::vector<sbn::LaneMap> maps;
  for (const auto & p : paths) {
    maps.push_back(sbn::harness::load_lane_map(p));
  }
  return maps;
}

struct Ingested
{
  std::vector<sbn::harness::IngestedTrack> tracks;
  std::vector<const sbn::LaneMap *> map_of;
  json summary;
};

/// Ingests csv[i] against maps[i].
Ingested ingest_all(
  const std::vector<std::string> & csvs, const std::vector<sbn::LaneMap> & maps, const double frame_rate)
{
  if (csvs.size() != maps.size()) {
    throw UsageError("--csv and --map must be given the same number of times");
  }
  Ingested out;
  out.summary = json::array();
  sbn::harness::IngestOptions opts;
  opts.frame_rate = frame_rate;
  for (std::size_t i = 0; i < csvs.size(); ++i) {
    auto res = sbn::harness::ingest_trajectories(std::filesystem::path(csvs[i]), maps[i], opts);
    json rejects = json::array();
    for (const auto & r : res.rejects) {
      rejects.push_back({{"line", r.line}, {"reason", r.reason}});
    }
    out.summary.push_back(
      {{"csv", csvs[i]},
       {"intersection_id", maps[i].intersection_id},
       {"rows_total", res.rows_total},
       {"rows_accepted", res.rows_accepted},
       {"rows_rejected", res.rows_rejected()},
       {"tracks", res.tracks.size()},
       {"rejects", rejects}});
    for (auto & t : res.tracks) {
      out.tracks.push_back(std::move(t));
      out.map_of.push_back(&maps[i]);
    }
  }
  return out;
}

std::pair<std::string, std::string> parse_edge(const std::string & text)
{
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw UsageError("--edge expects source:target, got '" + text + "'");
  }
  return {text.substr(0, colon), text.substr(colon + 1)};
}

/// name=state, where state is a bin index or a categorical label.
sbn::generate::Evidence parse_evidence(const sbn::bayesnet::CausalNet & net, const std::vector<std::string> & items)
{
  sbn::generate::Evidence ev;
  for (const auto & item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw UsageError("--evidence expects name=state, got '" + item + "'");
    }
    const std::string name = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    const auto v = net.dag.find(name);
    if (!v) {
      throw std::invalid_argument("evidence node '" + name + "' is not in the network");
    }
    std::size_t state = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), state);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      const auto & labels = net.spec.variables[*v].labels;
      const auto it = std::find(labels.begin(), labels.end(), value);
      if (it == labels.end()) {
        throw std::invalid_argument("'" + value + "' is not a state of '" + name + "'");
      }
      state = static_cast<std::size_t>(it - labels.begin());
    }
    if (ev.count(name)) {
      throw UsageError("evidence for '" + name + "' given twice");
    }
    ev[name] = state;
  }
  return ev;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Causal Bayesian network scenario toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out;
  double frame_rate = 25.0;
  std::vector<std::string> csvs;
  std::vector<std::string> map_paths;

  // synth
  auto * synth = app.add_subcommand("synth", "Write a synthetic world (CSV, lane maps, planted net)");
  std::string world_spec_path;
  std::optional<std::size_t> samples;
  std::optional<double> sigma;
  std::optional<std::uint64_t> synth_seed;
  synth->add_option("--spec", world_spec_path, "World spec JSON (default: bundled demo world)")
    ->check(CLI::ExistingFile);
  synth->add_option("--seed", synth_seed, "Override the world seed");
  synth->add_option("--samples", samples, "Trajectories per arm")->check(CLI::PositiveNumber);
  synth->add_option("--sigma", sigma, "Position noise sigma [m]")->check(CLI::NonNegativeNumber);
  synth->add_option("--out", out, "Output directory")->required();

  // extract
  auto * extract = app.add_subcommand("extract", "Ingest trajectory CSVs and extract parameter vectors");
  extract->add_option("--csv", csvs, "Trajectory CSV (repeat, paired with --map)")->required()
    ->check(CLI::ExistingFile);
  extract->add_option("--map", map_paths, "Lane map JSON (repeat)")->required()->check(CLI::ExistingFile);
  extract->add_option("--frame-rate", frame_rate, "CSV frame rate [Hz]")->check(CLI::PositiveNumber);
  extract->add_option("--out", out, "Parameter JSON")->required();

  // learn
  auto * learn = app.add_subcommand("learn", "Learn a causal network from parameter vectors");
  std::vector<std::string> params_paths;
  std::vector<std::string> intersections;
  std::string constraints_path;
  sbn::harness::LearnOptions learn_opts;
  std::string score = "bic";
  learn->add_option("--params", params_paths, "Parameter JSON (repeat)")->required()
    ->check(CLI::ExistingFile);
  learn->add_option("--intersection", intersections, "Only use records from these intersections");
  learn->add_option("--constraints", constraints_path, "Edge constraints JSON")->check(CLI::ExistingFile);
  learn->add_option("--bins", learn_opts.bins, "Equal-frequency bins per continuous node")
    ->check(CLI::Range(1, 1000));
  learn->add_option("--score", score, "Structure score")->check(CLI::IsMember({"bic", "bdeu"}));
  learn->add_option("--ess", learn_opts.ess, "BDeu equivalent sample size")->check(CLI::PositiveNumber);
  learn->add_option("--alpha", learn_opts.alpha, "CPT Dirichlet pseudo-count")
    ->check(CLI::NonNegativeNumber);
  learn->add_option("--max-iters", learn_opts.max_iters, "Hill-climbing move limit");
  learn->add_option("--out", out, "Network JSON")->required();

  // analyze
  auto * analyze = app.add_subcommand("analyze", "Interventional effect reports per edge");
  std::string net_path;
  std::string edge;
  bool as_json = false;
  analyze->add_option("--net", net_path, "Network JSON")->required()->check(CLI::ExistingFile);
  analyze->add_option("--edge", edge, "Single edge source:target (default: all edges)");
  analyze->add_flag("--json", as_json, "Print JSON instead of text");
  analyze->add_option("--out", out, "Also write the reports as JSON");

  // simplify
  auto * simplify = app.add_subcommand("simplify", "Remove or aggregate indirect clusters");
  std::vector<std::string> vary;
  simplify->add_option("--net", net_path, "Network JSON")->required()->check(CLI::ExistingFile);
  simplify->add_option("--vary", vary, "Indirect node to keep individually (repeat)");
  simplify->add_option("--out", out, "Simplified network JSON")->required();

  // generate
  auto * gen = app.add_subcommand("generate", "Generate scenarios for an arm");
  std::string map_path;
  std::string arm_id;
  std::string maneuver;
  std::size_t n = 100;
  std::vector<std::string> evidence;
  std::vector<std::string> allow_direct;
  gen->add_option("--net", net_path, "Network JSON")->required()->check(CLI::ExistingFile);
  gen->add_option("--map", map_path, "Lane map JSON of the target intersection")->required()
    ->check(CLI::ExistingFile);
  gen->add_option("--arm", arm_id, "Target arm id")->required();
  gen->add_option("--maneuver", maneuver, "L, R or S (default: the arm's maneuver)");
  gen->add_option("--n", n, "Number of scenarios")->check(CLI::PositiveNumber);
  gen->add_option("--evidence", evidence, "Extra evidence name=state (repeat)");
  gen->add_option("--allow-direct", allow_direct, "Direct node that may carry evidence (repeat)");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--frame-rate", frame_rate, "Output frame rate [Hz]")->check(CLI::PositiveNumber);
  gen->add_option("--out", out, "Scenario JSON")->required();

  // evaluate
  auto * evaluate = app.add_subcommand("evaluate", "Reconstruction table and cross-section JSD");
  std::vector<std::string> scenario_paths;
  std::vector<double> stations;
  double bin_width = 0.25;
  evaluate->add_option("--csv", csvs, "Reference trajectory CSV (repeat, paired with --map)")->required()
    ->check(CLI::ExistingFile);
  evaluate->add_option("--map", map_paths, "Lane map JSON (repeat)")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--scenarios", scenario_paths, "Generated scenario JSON (repeat)")
    ->check(CLI::ExistingFile);
  evaluate->add_option("--net", net_path, "Network whose binning drives the reconstruction table")
    ->check(CLI::ExistingFile);
  evaluate->add_option("--s", stations, "Cross-section stations [m] (default 5 and 30)");
  evaluate->add_option("--bin-width", bin_width, "Histogram bin width [m]")->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", seed, "Random seed for bin redraws");
  evaluate->add_option("--frame-rate", frame_rate, "CSV frame rate [Hz]")->check(CLI::PositiveNumber);
  evaluate->add_option("--out", out, "Report JSON");

  std::string command = "scenario_bn";
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    for (const auto * sub : app.get_subcommands()) {
      command = sub->get_name();
    }
    print_error(command, "usage", e.what());
    return 2;
  }

  try {
    if (*synth) {
      command = "synth";
      auto spec = world_spec_path.empty()
                    ? sbn::harness::demo_world_spec()
                    : sbn::harness::world_spec_from_json(sbn::read_json_file(world_spec_path));
      if (synth_seed) {
        spec.seed = *synth_seed;
      }
      if (samples) {
        spec.samples_per_arm = *samples;
      }
      if (sigma) {
        spec.noise_sigma = *sigma;
      }
      const auto world = sbn::harness::generate_synthetic_world(spec);
      sbn::harness::write_synthetic_world(spec, world, out);
      std::cout << json{{"out", out},
                        {"tracks", world.tracks.size()},
                        {"rows_drawn", world.rows_drawn},
                        {"rows_rejected", world.rows_rejected}}
                     .dump(2)
                << "\n";
    } else if (*extract) {
      command = "extract";
      const auto maps = load_maps(map_paths);
      const auto ing = ingest_all(csvs, maps, frame_rate);
      std::vector<sbn::harness::ExtractedRecord> records;
      json failures = json::array();
      for (std::size_t i = 0; i < ing.tracks.size(); ++i) {
        auto [rec, failed] = sbn::harness::extract_records({ing.tracks[i]}, *ing.map_of[i]);
        for (auto & r : rec) {
          records.push_back(std::move(r));
        }
        for (const auto & f : failed) {
          failures.push_back({{"intersection_id", ing.tracks[i].intersection_id}, {"track", f.track},
                              {"reason", f.reason}});
        }
      }
      sbn::write_json_file(out, sbn::harness::records_to_json(records));
      std::cout << json{{"out", out}, {"records", records.size()}, {"ingest", ing.summary},
                        {"extract_failures", failures}}
                     .dump(2)
                << "\n";
    } else if (*learn) {
      command = "learn";
      learn_opts.score = sbn::bayesnet::score_type_from_string(score);
      const std::set<std::string> keep(intersections.begin(), intersections.end());
      std::vector<sbn::ParamVector> params;
      for (const auto & p : params_paths) {
        for (const auto & r : sbn::harness::records_from_json(sbn::read_json_file(p))) {
          if (keep.empty() || keep.count(r.intersection_id)) {
            params.push_back(r.params);
          }
        }
      }
      if (params.empty()) {
        throw std::invalid_argument("no parameter records to learn from");
      }
      std::optional<json> constraints;
      if (!constraints_path.empty()) {
        constraints = sbn::read_json_file(constraints_path);
      }
      const auto res = sbn::harness::learn_network(params, constraints, learn_opts);
      sbn::write_json_file(out, sbn::bayesnet::to_json(res.net));
      json edges = json::array();
      for (const auto & [a, b] : res.net.dag.edges()) {
        edges.push_back({res.net.dag.name(a), res.net.dag.name(b)});
      }
      json reductions = json::array();
      for (const auto & r : res.net.spec.reductions) {
        reductions.push_back({{"variable", r.variable}, {"requested", r.requested}, {"used", r.used}});
      }
      std::cout << json{{"out", out},
                        {"records", params.size()},
                        {"score", score},
                        {"initial_score", res.search.initial_score},
                        {"final_score", res.search.score},
                        {"iterations", res.search.iterations},
                        {"edges", edges},
                        {"bin_reductions", reductions}}
                     .dump(2)
                << "\n";
    } else if (*analyze) {
      command = "analyze";
      const auto net = sbn::bayesnet::network_from_json(sbn::read_json_file(net_path));
      std::vector<sbn::causal::EffectReport> reports;
      if (edge.empty()) {
        reports = sbn::causal::all_edge_reports(net);
      } else {
        const auto [a, b] = parse_edge(edge);
        reports.push_back(sbn::causal::edge_effect_report(net, a, b));
      }
      json j = json::array();
      for (const auto & r : reports) {
        j.push_back(sbn::causal::to_json(r));
      }
      if (!out.empty()) {
        sbn::write_json_file(out, j);
      }
      if (as_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto & r : reports) {
          std::cout << sbn::causal::to_text(r) << "\n";
        }
      }
    } else if (*simplify) {
      command = "simplify";
      const auto net = sbn::bayesnet::network_from_json(sbn::read_json_file(net_path));
      const auto res = sbn::causal::simplify_network(net, std::set<std::string>(vary.begin(), vary.end()));
      sbn::write_json_file(out, sbn::bayesnet::to_json(res.net));
      auto summary = sbn::causal::to_json(res);
      summary["out"] = out;
      std::cout << summary.dump(2) << "\n";
    } else if (*gen) {
      command = "generate";
      const auto net = sbn::bayesnet::network_from_json(sbn::read_json_file(net_path));
      const auto map = sbn::harness::load_lane_map(map_path);
      const auto & arm = map.arm(arm_id);
      const auto m = maneuver.empty() ? sbn::harness::maneuver_of(arm) : sbn::maneuver_from_string(maneuver);
      sbn::generate::GenerationOptions opts;
      opts.frame_rate = frame_rate;
      opts.whitelist.insert(allow_direct.begin(), allow_direct.end());
      const auto res =
        sbn::generate::generate_scenarios(net, arm, m, parse_evidence(net, evidence), n, seed, opts);
      sbn::generate::export_scenarios(res.scenarios, out);
      json ev = json::object();
      for (const auto & [k, v] : res.evidence) {
        ev[k] = v;
      }
      std::cout << json{{"out", out},
                        {"scenarios", res.scenarios.size()},
                        {"rows_drawn", res.rows_drawn},
                        {"rows_rejected", res.rows_rejected},
                        {"evidence", ev}}
                     .dump(2)
                << "\n";
    } else if (*evaluate) {
      command = "evaluate";
      if (scenario_paths.empty() && net_path.empty()) {
        throw UsageError("evaluate needs --scenarios, --net or both");
      }
      if (stations.empty()) {
        stations = {5.0, 30.0};
      }
      const auto maps = load_maps(map_paths);
      const auto ing = ingest_all(csvs, maps, frame_rate);
      json report{{"ingest", ing.summary}};
      std::string text;

      if (!net_path.empty()) {
        const auto net = sbn::bayesnet::network_from_json(sbn::read_json_file(net_path));
        std::vector<std::pair<std::pair<std::string, std::string>, sbn::metrics::ReconstructionErrors>> items;
        for (std::size_t i = 0; i < ing.tracks.size(); ++i) {
          const auto & tr = ing.tracks[i];
          const auto & arm = ing.map_of[i]->arm(tr.arm_id);
          sbn::Rng rng(sbn::derive_seed(seed, i));
          const auto p = sbn::extract_param_vector(tr.trajectory, arm, tr.conflict_present);
          items.push_back(
            {{tr.intersection_id, std::string(sbn::to_string(tr.trajectory.maneuver))},
             sbn::metrics::reconstruction_errors(tr.trajectory, p, net.spec, arm.centerline, rng)});
        }
        const auto table = sbn::metrics::summarize_reconstruction(items);
        report["reconstruction"] = sbn::metrics::to_json(table);
        text += sbn::metrics::to_text(table) + "\n";
      }

      if (!scenario_paths.empty()) {
        std::vector<sbn::FrenetTrajectory> generated;
        std::set<std::string> arms;
        for (const auto & p : scenario_paths) {
          for (const auto & sc : sbn::generate::import_scenarios(p)) {
            arms.insert(sc.provenance.arm_id);
            generated.push_back(sc.trajectory);
          }
        }
        // Reference tracks on the generated arms, stations counted from the
        // first sample as for generated trajectories.
        std::vector<sbn::FrenetTrajectory> reference;
        for (const auto & tr : ing.tracks) {
          if (!arms.count(tr.arm_id)) {
            continue;
          }
          auto traj = tr.trajectory;
          const double s0 = traj.samples.front().s;
          for (auto & smp : traj.samples) {
            smp.s -= s0;
          }
          reference.push_back(std::move(traj));
        }
        if (reference.empty()) {
          throw std::invalid_argument("no reference tracks on the generated arms");
        }
        const auto rep = sbn::metrics::jsd_report(generated, reference, stations, bin_width);
        report["jsd"] = sbn::metrics::to_json(rep);
        text += sbn::metrics::to_text(rep);
      }
      if (!out.empty()) {
        sbn::write_json_file(out, report);
      }
      std::cout << text;
    }
  } catch (const UsageError & e) {
    print_error(command, "usage", e.what());
    return 2;
  } catch (const nlohmann::json::exception & e) {
    print_error(command, "format", e.what());
    return 1;
  } catch (const std::filesystem::filesystem_error & e) {
    print_error(command, "io", e.what());
    return 1;
  } catch (const std::logic_error & e) {
    print_error(command, "invalid_input", e.what());
    return 1;
  } catch (const std::exception & e) {
    print_error(command, "runtime", e.what());
    return 1;
  }
  return 0;
}
