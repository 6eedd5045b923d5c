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

#ifndef SCENARIO_BN__TRAJECTORY__SPLINE_HPP_
#define SCENARIO_BN__TRAJECTORY__SPLINE_HPP_

#include "scenario_bn/trajectory/frenet_trajectory.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace scenario_bn
{

/// Value and tangent of both Frenet coordinates at one knot. Tangents are
/// derivatives with respect to normalized time tau in [0, 1].
struct Knot
{
  double tau{0.0};
  double s{0.0};
  double t{0.0};
  double ds{0.0};
  double dt{0.0};

  friend bool operator==(const Knot &, const Knot &) = default;
};

/// Three-knot (start, apex, end) time-parametrized cubic Hermite model of a
/// maneuver in Frenet space.
struct SplineKnots
{
  Knot start;
  Knot apex;
  Knot end;
  double duration{1.0};

  void validate() const
  {
    if (!(apex.tau > 0.0 && apex.tau < 1.0)) {
      throw std::invalid_argument("apex tau must lie in (0, 1)");
    }
    if (start.tau != 0.0 || end.tau != 1.0) {
      throw std::invalid_argument("start/end tau must be 0 and 1");
    }
    if (!(duration > 0.0) || !std::isfinite(duration)) {
      throw std::invalid_argument("spline duration must be positive");
    }
  }

  friend bool operator==(const SplineKnots &, const SplineKnots &) = default;
};

namespace hermite
{
inline double h00(const double u) { return (2.0 * u - 3.0) * u * u + 1.0; }
inline double h10(const double u) { return ((u - 2.0) * u + 1.0) * u; }
inline double h01(const double u) { return (3.0 - 2.0 * u) * u * u; }
inline double h11(const double u) { return (u - 1.0) * u * u; }

inline double dh00(const double u) { return 6.0 * u * u - 6.0 * u; }
inline double dh10(const double u) { return 3.0 * u * u - 4.0 * u + 1.0; }
inline double dh01(const double u) { return -6.0 * u * u + 6.0 * u; }
inline double dh11(const double u) { return 3.0 * u * u - 2.0 * u; }
}  // namespace hermite

struct SplineState
{
  double s{0.0};
  double t{0.0};
  double ds{0.0};  // d s / d tau
  double dt{0.0};  // d t / d tau
};

/// Evaluates the two-segment spline at normalized time tau.
inline SplineState evaluate(const SplineKnots & knots, const double tau)
{
  const bool first = tau <= knots.apex.tau;
  const Knot & a = first ? knots.start : knots.apex;
  const Knot & b = first ? knots.apex : knots.end;
  const double w = b.tau - a.tau;
  const double u = std::clamp((tau - a.tau) / w, 0.0, 1.0);
  using namespace hermite;
  SplineState out;
  out.s = h00(u) * a.s + h10(u) * w * a.ds + h01(u) * b.s + h11(u) * w * b.ds;
  out.t = h00(u) * a.t + h10(u) * w * a.dt + h01(u) * b.t + h11(u) * w * b.dt;
  out.ds = (dh00(u) * a.s + dh10(u) * w * a.ds + dh01(u) * b.s + dh11(u) * w * b.ds) / w;
  out.dt = (dh00(u) * a.t + dh10(u) * w * a.dt + dh01(u) * b.t + dh11(u) * w * b.dt) / w;
  return out;
}

/// Samples the spline on a uniform tau grid; speed is ds/dtau over the
/// duration, clamped at zero.
inline FrenetTrajectory reconstruct_trajectory(
  const SplineKnots & knots, const std::size_t n_samples, const Maneuver maneuver = Maneuver::straight)
{
  if (n_samples < 2) {
    throw std::invalid_argument("reconstruction needs at least 2 samples");
  }
  knots.validate();
  FrenetTrajectory out;
  out.maneuver = maneuver;
  out.samples.reserve(n_samples);
  const double last = static_cast<double>(n_samples - 1);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double tau = i + 1 == n_samples ? 1.0 : static_cast<double>(i) / last;
    const SplineState st = evaluate(knots, tau);
    out.samples.push_back({tau * knots.duration, st.s, st.t, std::max(0.0, st.ds / knots.duration)});
  }
  return out;
}

/// True when ds/dtau stays non-negative on both segments. The derivative is
/// quadratic in the local parameter, so its minimum is at an end or at the
/// vertex.
inline bool moves_forward(const SplineKnots & knots)
{
  using namespace hermite;
  for (const auto & [a, b] : {std::pair{&knots.start, &knots.apex}, std::pair{&knots.apex, &knots.end}}) {
    const double w = b->tau - a->tau;
    const auto d = [&](const double u) {
      return dh00(u) * a->s + dh10(u) * w * a->ds + dh01(u) * b->s + dh11(u) * w * b->ds;
    };
    const double q0 = d(0.0);
    const double qh = d(0.5);
    const double q1 = d(1.0);
    double lowest = std::min(q0, q1);
    const double c = 2.0 * (q0 - 2.0 * qh + q1);
    const double bcoef = q1 - q0 - c;
    if (c > 0.0) {
      const double u = -bcoef / (2.0 * c);
      if (u > 0.0 && u < 1.0) {
        lowest = std::min(lowest, d(u));
      }
    }
    if (lowest < 0.0) {
      return false;
    }
  }
  return true;
}

namespace detail
{

/// Index of the apex sample: slowest interior sample for turns (first on
/// ties); straight maneuvers have no apex sample.
inline std::size_t slowest_interior_sample(const FrenetTrajectory & traj)
{
  std::size_t best = 1;
  for (std::size_t i = 2; i + 1 < traj.samples.size(); ++i) {
    if (traj.samples[i].v < traj.samples[best].v) {
      best = i;
    }
  }
  return best;
}

inline double interpolate_at(
  const std::vector<double> & tau, const std::vector<double> & values, const double x)
{
  const auto it = std::lower_bound(tau.begin(), tau.end(), x);
  if (it == tau.begin()) {
    return values.front();
  }
  if (it == tau.end()) {
    return values.back();
  }
  const auto j = static_cast<std::size_t>(it - tau.begin());
  const double r = (x - tau[j - 1]) / (tau[j] - tau[j - 1]);
  return values[j - 1] + r * (values[j] - values[j - 1]);
}

inline double slope_near(
  const std::vector<double> & tau, const std::vector<double> & values, const double x)
{
  const std::size_t n = tau.size();
  auto j = static_cast<std::size_t>(std::lower_bound(tau.begin(), tau.end(), x) - tau.begin());
  j = std::clamp<std::size_t>(j, 1, n - 1);
  const std::size_t lo = j - 1;
  const std::size_t hi = std::min(j + 1, n - 1);
  return (values[hi] - values[lo]) / (tau[hi] - tau[lo]);
}

struct CoordinateFit
{
  double apex{0.0};
  double d_start{0.0};
  double d_apex{0.0};
  double d_end{0.0};
};

/// Least squares for one coordinate with the end values pinned to the first
/// and last sample. Unknowns: apex value and the three tangents. A weak
/// ridge pull towards finite-difference estimates keeps short trajectories
/// well-posed without measurably biasing determined fits.
inline CoordinateFit fit_coordinate(
  const std::vector<double> & tau, const std::vector<double> & values, const double tau_apex)
{
  constexpr double kRidge = 1e-6;
  const std::size_t n = tau.size();
  const double c0 = values.front();
  const double c1 = values.back();
  const double w1 = tau_apex;
  const double w2 = 1.0 - tau_apex;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n + 4), 4);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n + 4));
  using namespace hermite;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    if (tau[i] <= tau_apex) {
      const double u = std::clamp(tau[i] / w1, 0.0, 1.0);
      a(r, 0) = h01(u);
      a(r, 1) = h10(u) * w1;
      a(r, 2) = h11(u) * w1;
      b(r) = values[i] - h00(u) * c0;
    } else {
      const double u = std::clamp((tau[i] - tau_apex) / w2, 0.0, 1.0);
      a(r, 0) = h00(u);
      a(r, 2) = h10(u) * w2;
      a(r, 3) = h11(u) * w2;
      b(r) = values[i] - h01(u) * c1;
    }
  }
  const std::array<double, 4> prior{
    interpolate_at(tau, values, tau_apex), slope_near(tau, values, 0.0),
    slope_near(tau, values, tau_apex), slope_near(tau, values, 1.0)};
  for (Eigen::Index k = 0; k < 4; ++k) {
    const auto r = static_cast<Eigen::Index>(n) + k;
    a(r, k) = kRidge;
    b(r) = kRidge * prior[static_cast<std::size_t>(k)];
  }
  const Eigen::Vector4d x = a.colPivHouseholderQr().solve(b);
  return {x(0), x(1), x(2), x(3)};
}

}  // namespace detail

/// Fits the three-knot Hermite model to a trajectory by least squares.
/// The apex sits at the slowest interior sample for turns and at tau = 0.5
/// for straight maneuvers.
inline SplineKnots fit_trajectory_splines(const FrenetTrajectory & traj)
{
  if (traj.samples.size() < 4) {
    throw std::invalid_argument("spline fit needs at least 4 samples");
  }
  const double t0 = traj.samples.front().time;
  const double duration = traj.samples.back().time - t0;
  if (!(duration > 0.0)) {
    throw std::invalid_argument("trajectory has zero duration");
  }

  const std::size_t n = traj.samples.size();
  std::vector<double> tau(n);
  std::vector<double> s(n);
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    tau[i] = (traj.samples[i].time - t0) / duration;
    s[i] = traj.samples[i].s;
    t[i] = traj.samples[i].t;
  }
  tau.back() = 1.0;

  const double tau_apex = traj.maneuver == Maneuver::straight
                            ? 0.5
                            : tau[detail::slowest_interior_sample(traj)];

  const auto fs = detail::fit_coordinate(tau, s, tau_apex);
  const auto ft = detail::fit_coordinate(tau, t, tau_apex);

  SplineKnots knots;
  knots.duration = duration;
  knots.start = {0.0, s.front(), t.front(), fs.d_start, ft.d_start};
  knots.apex = {tau_apex, fs.apex, ft.apex, fs.d_apex, ft.d_apex};
  knots.end = {1.0, s.back(), t.back(), fs.d_end, ft.d_end};
  return knots;
}

}  // namespace scenario_bn

#endif  // SCENARIO_BN__TRAJECTORY__SPLINE_HPP_
