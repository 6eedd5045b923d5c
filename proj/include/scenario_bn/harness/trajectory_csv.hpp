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

#ifndef SCENARIO_BN__HARNESS__TRAJECTORY_CSV_HPP_
#define SCENARIO_BN__HARNESS__TRAJECTORY_CSV_HPP_

#include "scenario_bn/geometry/frenet.hpp"
#include "scenario_bn/harness/config_io.hpp"
#include "scenario_bn/io.hpp"
#include "scenario_bn/trajectory/frenet_trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scenario_bn::harness
{

inline constexpr std::string_view kCsvHeader =
  "recording_id,track_id,frame,x_center,y_center,x_velocity,y_velocity,conflict_present,maneuver,"
  "arm_id";

struct TrajectoryCsvRow
{
  std::string recording_id;
  std::string track_id;
  std::int64_t frame{0};
  double x_center{0.0};
  double y_center{0.0};
  double x_velocity{0.0};
  double y_velocity{0.0};
  bool conflict_present{false};
  Maneuver maneuver{Maneuver::straight};
  std::string arm_id;

  friend bool operator==(const TrajectoryCsvRow &, const TrajectoryCsvRow &) = default;
};

inline std::string to_csv(const std::vector<TrajectoryCsvRow> & rows)
{
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto & r : rows) {
    out += r.recording_id + ',' + r.track_id + ',' + std::to_string(r.frame) + ',' +
           format_double(r.x_center) + ',' + format_double(r.y_center) + ',' +
           format_double(r.x_velocity) + ',' + format_double(r.y_velocity) + ',' +
           (r.conflict_present ? "1" : "0") + ',' + maneuver_letter(r.maneuver) + ',' + r.arm_id +
           '\n';
  }
  return out;
}

struct RowReject
{
  /// 1-based line number in the file (the header is line 1).
  std::size_t line{0};
  std::string reason;
};

struct IngestedTrack
{
  std::string intersection_id;
  std::string recording_id;
  std::string track_id;
  std::string arm_id;
  bool conflict_present{false};
  FrenetTrajectory trajectory;
};

struct IngestOptions
{
  double frame_rate{25.0};
  /// Largest backward step in s tolerated between samples (position noise).
  double s_tolerance{0.5};
  std::size_t min_samples{4};
};

struct IngestResult
{
  std::vector<IngestedTrack> tracks;
  std::vector<RowReject> rejects;
  std::size_t rows_total{0};
  std::size_t rows_accepted{0};

  std::size_t rows_rejected() const { return rows_total - rows_accepted; }
};

namespace detail
{

inline std::vector<std::string_view> split_csv_line(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
bool parse_number(const std::string_view text, T & out)
{
  const auto * end = text.data() + text.size();
  const auto r = std::from_chars(text.data(), end, out);
  return r.ec == std::errc() && r.ptr == end;
}

struct ParsedRow
{
  std::size_t line;
  TrajectoryCsvRow row;
};

}  // namespace detail

/// Parses a trajectory CSV. A wrong header throws; bad rows are collected as
/// rejects with their line numbers.
inline std::pair<std::vector<detail::ParsedRow>, std::vector<RowReject>> parse_trajectory_csv(
  const std::string & text)
{
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("trajectory CSV is empty");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);
  }
  if (line != kCsvHeader) {
    std::string missing;
    const auto have = detail::split_csv_line(line);
    for (const auto col : detail::split_csv_line(kCsvHeader)) {
      if (std::find(have.begin(), have.end(), col) == have.end()) {
        missing += (missing.empty() ? "" : ", ") + std::string(col);
      }
    }
    throw std::invalid_argument(
      "trajectory CSV header mismatch" +
      (missing.empty() ? std::string(" (columns out of order)") : " (missing: " + missing + ")"));
  }
  std::vector<detail::ParsedRow> rows;
  std::vector<RowReject> rejects;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto f = detail::split_csv_line(line);
    if (f.size() != 10) {
      rejects.push_back({lineno, "expected 10 fields, found " + std::to_string(f.size())});
      continue;
    }
    TrajectoryCsvRow r;
    r.recording_id = std::string(f[0]);
    r.track_id = std::string(f[1]);
    r.arm_id = std::string(f[9]);
    double nums[4];
    bool ok = detail::parse_number(f[2], r.frame) && r.frame >= 0;
    for (std::size_t i = 0; i < 4 && ok; ++i) {
      ok = detail::parse_number(f[3 + i], nums[i]) && std::isfinite(nums[i]);
    }
    if (!ok) {
      rejects.push_back({lineno, "non-numeric or non-finite frame/position/velocity"});
      continue;
    }
    r.x_center = nums[0];
    r.y_center = nums[1];
    r.x_velocity = nums[2];
    r.y_velocity = nums[3];
    if (f[7] != "0" && f[7] != "1") {
      rejects.push_back({lineno, "conflict_present must be 0 or 1"});
      continue;
    }
    r.conflict_present = f[7] == "1";
    if (f[8] != "L" && f[8] != "R" && f[8] != "S") {
      rejects.push_back({lineno, "maneuver must be L, R or S"});
      continue;
    }
    r.maneuver = maneuver_from_string(f[8]);
    if (r.recording_id.empty() || r.track_id.empty() || r.arm_id.empty()) {
      rejects.push_back({lineno, "empty identifier"});
      continue;
    }
    rows.push_back({lineno, std::move(r)});
  }
  return {std::move(rows), std::move(rejects)};
}

/// Groups rows into tracks (first-appearance order) and maps each track onto
/// its arm's reference path. Speed is the velocity component along the path
/// tangent, clamped at zero. Rejected rows are reported, never dropped
/// silently: accepted + rejected always equals the number of data rows.
inline IngestResult ingest_trajectories(
  const std::string & csv_text, const LaneMap & map, const IngestOptions & opts = {})
{
  auto [rows, rejects] = parse_trajectory_csv(csv_text);
  IngestResult res;
  res.rejects = std::move(rejects);
  res.rows_total = rows.size() + res.rejects.size();

  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const detail::ParsedRow *>> groups;
  for (const auto & r : rows) {
    const auto key = std::make_pair(r.row.recording_id, r.row.track_id);
    auto & g = groups[key];
    if (g.empty()) {
      order.push_back(key);
    }
    g.push_back(&r);
  }

  for (const auto & key : order) {
    const auto & g = groups[key];
    const auto reject_all = [&](const std::string & why) {
      for (const auto * r : g) {
        res.rejects.push_back({r->line, why});
      }
    };
    const auto & first = g.front()->row;
    const std::string track_name = "track " + key.first + "/" + key.second;
    bool consistent = true;
    for (const auto * r : g) {
      consistent = consistent && r->row.arm_id == first.arm_id && r->row.maneuver == first.maneuver;
    }
    if (!consistent) {
      reject_all(track_name + ": arm or maneuver changes within the track");
      continue;
    }
    const ArmGeometry * arm = map.find_arm(first.arm_id);
    if (!arm) {
      reject_all(track_name + ": unknown arm_id '" + first.arm_id + "'");
      continue;
    }
    if (arm->maneuver && *arm->maneuver != first.maneuver) {
      reject_all(track_name + ": maneuver disagrees with arm '" + arm->id + "'");
      continue;
    }
    bool monotone = true;
    for (std::size_t i = 1; i < g.size(); ++i) {
      monotone = monotone && g[i]->row.frame > g[i - 1]->row.frame;
    }
    if (!monotone) {
      reject_all(track_name + ": frames not strictly increasing");
      continue;
    }
    if (g.size() < opts.min_samples) {
      reject_all(track_name + ": fewer than " + std::to_string(opts.min_samples) + " samples");
      continue;
    }

    IngestedTrack tr;
    tr.intersection_id = map.intersection_id;
    tr.recording_id = key.first;
    tr.track_id = key.second;
    tr.arm_id = first.arm_id;
    tr.trajectory.maneuver = first.maneuver;
    const auto & path = arm->centerline;
    for (const auto * r : g) {
      const auto pose = geometry::project_to_frenet(path, {r->row.x_center, r->row.y_center});
      const auto tangent = geometry::tangent_at(path, pose.s);
      const double v = std::max(0.0, r->row.x_velocity * tangent.x + r->row.y_velocity * tangent.y);
      const double time = static_cast<double>(r->row.frame - first.frame) / opts.frame_rate;
      tr.trajectory.samples.push_back({time, pose.s, pose.t, v});
      tr.conflict_present = tr.conflict_present || r->row.conflict_present;
    }
    try {
      check_trajectory(tr.trajectory, opts.s_tolerance);
    } catch (const std::invalid_argument & e) {
      reject_all(track_name + ": " + e.what());
      continue;
    }
    res.rows_accepted += g.size();
    res.tracks.push_back(std::move(tr));
  }
  std::sort(res.rejects.begin(), res.rejects.end(), [](const auto & a, const auto & b) {
    return a.line < b.line;
  });
  return res;
}

inline IngestResult ingest_trajectories(
  const std::filesystem::path & csv_path, const LaneMap & map, const IngestOptions & opts = {})
{
  return ingest_trajectories(read_text_file(csv_path), map, opts);
}

}  // namespace scenario_bn::harness

#endif  // SCENARIO_BN__HARNESS__TRAJECTORY_CSV_HPP_
