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

#ifndef SCENARIO_BN__METRICS__HISTOGRAM_HPP_
#define SCENARIO_BN__METRICS__HISTOGRAM_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scenario_bn::metrics
{

/// Counts over shared bin edges. Bin i covers [edges[i], edges[i+1]); the
/// last bin is closed.
struct Histogram
{
  std::vector<double> edges;
  std::vector<double> counts;

  std::size_t bins() const { return counts.size(); }

  double total() const
  {
    double n = 0.0;
    for (const double c : counts) {
      n += c;
    }
    return n;
  }

  std::vector<double> mass() const
  {
    const double n = total();
    std::vector<double> out(counts.size(), 0.0);
    if (n > 0.0) {
      for (std::size_t i = 0; i < counts.size(); ++i) {
        out[i] = counts[i] / n;
      }
    }
    return out;
  }
};

inline void check_edges(const std::vector<double> & edges)
{
  if (edges.size() < 2) {
    throw std::invalid_argument("histogram needs at least one bin");
  }
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i - 1] < edges[i])) {
      throw std::invalid_argument("histogram edges must be strictly increasing");
    }
  }
}

/// Bin holding x; values outside the edges go to the end bins.
inline std::size_t bin_of(const std::vector<double> & edges, const double x)
{
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  const auto i = static_cast<std::ptrdiff_t>(it - edges.begin()) - 1;
  return static_cast<std::size_t>(
    std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(edges.size()) - 2));
}

inline Histogram make_histogram(const std::vector<double> & edges, const std::vector<double> & values)
{
  check_edges(edges);
  Histogram h{edges, std::vector<double>(edges.size() - 1, 0.0)};
  for (const double x : values) {
    h.counts[bin_of(edges, x)] += 1.0;
  }
  return h;
}

/// Edges at multiples of `width` covering [lo, hi].
inline std::vector<double> uniform_edges(const double lo, const double hi, const double width)
{
  if (!(width > 0.0) || !(lo <= hi)) {
    throw std::invalid_argument("uniform_edges needs width > 0 and lo <= hi");
  }
  const auto first = static_cast<long long>(std::floor(lo / width));
  auto last = static_cast<long long>(std::floor(hi / width)) + 1;
  std::vector<double> edges;
  for (long long k = first; k <= last; ++k) {
    edges.push_back(static_cast<double>(k) * width);
  }
  return edges;
}

namespace detail
{

inline double kl_to_mixture(const std::vector<double> & p, const std::vector<double> & m)
{
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      d += p[i] * std::log2(p[i] / m[i]);
    }
  }
  return d;
}

}  // namespace detail

/// Jensen-Shannon divergence in bits between two probability vectors.
inline double jsd(const std::vector<double> & p, const std::vector<double> & q)
{
  if (p.size() != q.size() || p.empty()) {
    throw std::invalid_argument("JSD needs two distributions over the same bins");
  }
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    m[i] = 0.5 * (p[i] + q[i]);
  }
  const double d = 0.5 * detail::kl_to_mixture(p, m) + 0.5 * detail::kl_to_mixture(q, m);
  return std::clamp(d, 0.0, 1.0);
}

inline double jsd(const Histogram & p, const Histogram & q)
{
  if (p.edges != q.edges) {
    throw std::invalid_argument("JSD of histograms with different bin edges");
  }
  if (!(p.total() > 0.0) || !(q.total() > 0.0)) {
    throw std::invalid_argument("JSD of an empty histogram");
  }
  return jsd(p.mass(), q.mass());
}

}  // namespace scenario_bn::metrics

#endif  // SCENARIO_BN__METRICS__HISTOGRAM_HPP_
