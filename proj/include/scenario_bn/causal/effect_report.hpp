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

#ifndef SCENARIO_BN__CAUSAL__EFFECT_REPORT_HPP_
#define SCENARIO_BN__CAUSAL__EFFECT_REPORT_HPP_

#include "scenario_bn/causal/inference.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scenario_bn::causal
{

enum class Verdict { keep, review, remove };

inline std::string_view to_string(const Verdict v)
{
  switch (v) {
    case Verdict::keep:
      return "keep";
    case Verdict::review:
      return "review";
    case Verdict::remove:
      return "remove";
  }
  return "review";
}

struct VerdictThresholds
{
  double remove_below{0.02};
  double keep_above{0.1};
};

/// Advisory hint from the largest pairwise TV between intervention levels.
/// Values exactly at a threshold land in review.
inline Verdict verdict_for(const double max_tv, const VerdictThresholds & th = {})
{
  if (max_tv < th.remove_below) {
    return Verdict::remove;
  }
  if (max_tv > th.keep_above) {
    return Verdict::keep;
  }
  return Verdict::review;
}

inline double total_variation(const std::vector<double> & a, const std::vector<double> & b)
{
  if (a.size() != b.size()) {
    throw std::invalid_argument("distributions differ in support size");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += std::abs(a[i] - b[i]);
  }
  return 0.5 * d;
}

struct EffectReport
{
  std::string source;
  std::string target;
  std::vector<std::string> source_levels;
  std::vector<std::string> target_levels;
  /// P(target | do(source = level)) per source level.
  std::vector<std::vector<double>> interventional;
  /// P(target | source = level); empty when the level has zero probability.
  std::vector<std::optional<std::vector<double>>> observational;
  /// Expected target value per intervention level (continuous targets only).
  std::vector<double> expected_target;
  double max_tv{0.0};
  Verdict verdict{Verdict::review};
  bool exact{true};
};

namespace detail
{

inline std::vector<std::string> level_labels(const bayesnet::VariableSpec & v)
{
  if (v.categorical) {
    return v.labels;
  }
  std::vector<std::string> out;
  for (std::size_t b = 0; b < v.cardinality(); ++b) {
    const auto [lo, hi] = bayesnet::bin_range(v, b);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "(%.3g,%.3g]", lo, hi);
    out.emplace_back(buf);
  }
  return out;
}

}  // namespace detail

/// Interventional and observational contrast for an existing edge.
inline EffectReport edge_effect_report(
  const CausalNet & net, const std::string & source, const std::string & target,
  const VerdictThresholds & th = {}, const InferenceOptions & opts = {})
{
  const auto x = net.dag.index_of(source);
  const auto y = net.dag.index_of(target);
  if (!net.dag.has_edge(x, y)) {
    throw std::invalid_argument("edge " + source + " -> " + target + " is not in the network");
  }
  EffectReport r;
  r.source = source;
  r.target = target;
  r.source_levels = detail::level_labels(net.spec.variables[x]);
  r.target_levels = detail::level_labels(net.spec.variables[y]);
  const auto & ty = net.spec.variables[y];
  for (std::size_t level = 0; level < net.cardinality(x); ++level) {
    const auto d = query(net, y, {}, {{x, level}}, opts);
    r.exact = r.exact && d.exact;
    r.interventional.push_back(d.p);
    if (!ty.categorical) {
      double e = 0.0;
      for (std::size_t s = 0; s < d.p.size(); ++s) {
        e += d.p[s] * ty.bin_means[s];
      }
      r.expected_target.push_back(e);
    }
    try {
      r.observational.emplace_back(query(net, y, {{x, level}}, {}, opts).p);
    } catch (const std::domain_error &) {
      r.observational.emplace_back(std::nullopt);
    }
  }
  for (std::size_t a = 0; a < r.interventional.size(); ++a) {
    for (std::size_t b = a + 1; b < r.interventional.size(); ++b) {
      r.max_tv = std::max(r.max_tv, total_variation(r.interventional[a], r.interventional[b]));
    }
  }
  r.verdict = verdict_for(r.max_tv, th);
  return r;
}

/// Reports for every edge of the network, in edge-list order.
inline std::vector<EffectReport> all_edge_reports(
  const CausalNet & net, const VerdictThresholds & th = {}, const InferenceOptions & opts = {})
{
  std::vector<EffectReport> out;
  for (const auto & [a, b] : net.dag.edges()) {
    out.push_back(edge_effect_report(net, net.dag.name(a), net.dag.name(b), th, opts));
  }
  return out;
}

inline nlohmann::json to_json(const EffectReport & r)
{
  nlohmann::json j;
  j["edge"] = {r.source, r.target};
  j["source_levels"] = r.source_levels;
  j["target_levels"] = r.target_levels;
  j["interventional"] = r.interventional;
  j["observational"] = nlohmann::json::array();
  for (const auto & o : r.observational) {
    j["observational"].push_back(o ? nlohmann::json(*o) : nlohmann::json(nullptr));
  }
  if (!r.expected_target.empty()) {
    j["expected_target"] = r.expected_target;
  }
  j["max_tv"] = r.max_tv;
  j["verdict"] = std::string(to_string(r.verdict));
  j["exact"] = r.exact;
  return j;
}

/// Plain-text table: one row per source level.
inline std::string to_text(const EffectReport & r)
{
  std::ostringstream os;
  os << r.source << " -> " << r.target << "  max TV " << r.max_tv << "  hint "
     << to_string(r.verdict) << (r.exact ? "" : "  (Monte Carlo)") << "\n";
  const auto fmt = [](const std::vector<double> & p) {
    std::string s;
    char buf[32];
    for (const double x : p) {
      std::snprintf(buf, sizeof(buf), " %.4f", x);
      s += buf;
    }
    return s;
  };
  os << "  target levels:";
  for (const auto & l : r.target_levels) {
    os << " " << l;
  }
  os << "\n";
  for (std::size_t i = 0; i < r.interventional.size(); ++i) {
    os << "  do(" << r.source << "=" << r.source_levels[i] << "):" << fmt(r.interventional[i]);
    if (!r.expected_target.empty()) {
      os << "  E=" << r.expected_target[i];
    }
    os << "\n";
    os << "  given " << r.source << "=" << r.source_levels[i] << ":";
    os << (r.observational[i] ? fmt(*r.observational[i]) : std::string(" n/a")) << "\n";
  }
  return os.str();
}

}  // namespace scenario_bn::causal

#endif  // SCENARIO_BN__CAUSAL__EFFECT_REPORT_HPP_
