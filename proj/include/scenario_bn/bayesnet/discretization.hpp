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

#ifndef SCENARIO_BN__BAYESNET__DISCRETIZATION_HPP_
#define SCENARIO_BN__BAYESNET__DISCRETIZATION_HPP_

#include "scenario_bn/bayesnet/dataset.hpp"
#include "scenario_bn/random.hpp"
#include "scenario_bn/trajectory/param_vector.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scenario_bn::bayesnet
{

/// Binning of one variable. Categorical variables keep their label list and
/// map code k to bin k; continuous ones carry strictly increasing boundaries
/// (value == boundary goes to the lower bin) plus the observed range and the
/// mean training value of every bin.
struct VariableSpec
{
  std::string name;
  bool categorical{false};
  std::vector<std::string> labels;
  std::vector<double> boundaries;
  double min{0.0};
  double max{0.0};
  std::vector<double> bin_means;

  std::size_t cardinality() const
  {
    return categorical ? labels.size() : boundaries.size() + 1;
  }

  /// Representative value of a bin: the category code or the training mean.
  double bin_value(const std::size_t bin) const
  {
    return categorical ? static_cast<double>(bin) : bin_means.at(bin);
  }

  friend bool operator==(const VariableSpec &, const VariableSpec &) = default;
};

struct BinReduction
{
  std::string variable;
  std::size_t requested{0};
  std::size_t used{0};

  friend bool operator==(const BinReduction &, const BinReduction &) = default;
};

struct DiscretizationSpec
{
  std::vector<VariableSpec> variables;
  /// Continuous variables that got fewer bins than requested.
  std::vector<BinReduction> reductions;

  std::optional<std::size_t> find(const std::string_view name) const
  {
    for (std::size_t i = 0; i < variables.size(); ++i) {
      if (variables[i].name == name) {
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
    throw std::out_of_range("unknown variable '" + std::string(name) + "'");
  }

  std::vector<std::size_t> cardinalities() const
  {
    std::vector<std::size_t> out;
    out.reserve(variables.size());
    for (const auto & v : variables) {
      out.push_back(v.cardinality());
    }
    return out;
  }

  friend bool operator==(const DiscretizationSpec &, const DiscretizationSpec &) = default;
};

/// Column description for build_discretization: empty labels = continuous.
struct ColumnInfo
{
  std::string name;
  std::vector<std::string> labels;
};

namespace detail
{

inline VariableSpec equal_frequency_bins(
  const std::string & name, std::vector<double> values, const std::size_t bins)
{
  VariableSpec spec;
  spec.name = name;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  spec.min = values.front();
  spec.max = values.back();

  std::vector<std::size_t> cuts;
  for (std::size_t k = 1; k < bins; ++k) {
    const auto target = static_cast<std::size_t>(
      std::llround(static_cast<double>(k) * static_cast<double>(n) / static_cast<double>(bins)));
    // Move the cut to the nearest position between two distinct values.
    std::optional<std::size_t> cut;
    for (std::size_t off = 0; off < n && !cut; ++off) {
      for (const std::size_t c : {target - std::min(off, target), target + off}) {
        if (c > 0 && c < n && values[c - 1] < values[c]) {
          cut = c;
          break;
        }
      }
    }
    if (cut && (cuts.empty() || *cut > cuts.back())) {
      cuts.push_back(*cut);
    }
  }

  for (const std::size_t c : cuts) {
    const double lo = values[c - 1];
    const double hi = values[c];
    double b = lo + 0.5 * (hi - lo);
    if (!(b < hi)) {
      b = lo;
    }
    spec.boundaries.push_back(b);
  }

  std::vector<double> sums(spec.boundaries.size() + 1, 0.0);
  std::vector<std::size_t> counts(sums.size(), 0);
  for (const double v : values) {
    const auto bin = static_cast<std::size_t>(
      std::lower_bound(spec.boundaries.begin(), spec.boundaries.end(), v) -
      spec.boundaries.begin());
    sums[bin] += v;
    ++counts[bin];
  }
  for (std::size_t b = 0; b < sums.size(); ++b) {
    spec.bin_means.push_back(sums[b] / static_cast<double>(counts[b]));
  }
  return spec;
}

}  // namespace detail

/// Equal-frequency (quantile) bins for every continuous column; categorical
/// columns pass through. A column with fewer distinct values than bins gets
/// fewer bins and the reduction is recorded.
inline DiscretizationSpec build_discretization(
  const std::vector<std::vector<double>> & rows, const std::vector<ColumnInfo> & columns,
  const std::size_t bins_per_var)
{
  if (bins_per_var < 2) {
    throw std::invalid_argument("bins_per_var must be >= 2");
  }
  if (rows.empty()) {
    throw std::invalid_argument("cannot discretize an empty dataset");
  }
  DiscretizationSpec spec;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (!columns[c].labels.empty()) {
      VariableSpec v;
      v.name = columns[c].name;
      v.categorical = true;
      v.labels = columns[c].labels;
      spec.variables.push_back(std::move(v));
      continue;
    }
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto & r : rows) {
      if (!std::isfinite(r.at(c))) {
        throw std::invalid_argument("non-finite value in column '" + columns[c].name + "'");
      }
      values.push_back(r[c]);
    }
    auto v = detail::equal_frequency_bins(columns[c].name, std::move(values), bins_per_var);
    if (v.cardinality() < bins_per_var) {
      spec.reductions.push_back({v.name, bins_per_var, v.cardinality()});
    }
    spec.variables.push_back(std::move(v));
  }
  return spec;
}

inline std::vector<ColumnInfo> param_columns()
{
  std::vector<ColumnInfo> cols;
  for (const auto & f : param_fields()) {
    ColumnInfo c;
    c.name = std::string(f.name);
    for (const auto l : f.labels) {
      c.labels.emplace_back(l);
    }
    cols.push_back(std::move(c));
  }
  return cols;
}

inline DiscretizationSpec build_discretization(
  const std::vector<ParamVector> & data, const std::size_t bins_per_var)
{
  std::vector<std::vector<double>> rows;
  rows.reserve(data.size());
  for (const auto & p : data) {
    rows.push_back(to_row(p));
  }
  return build_discretization(rows, param_columns(), bins_per_var);
}

inline int discretize_value(const VariableSpec & var, const double value)
{
  if (var.categorical) {
    const auto code = std::llround(value);
    if (code < 0 || static_cast<std::size_t>(code) >= var.labels.size() ||
        static_cast<double>(code) != value) {
      throw std::out_of_range("invalid category code for '" + var.name + "'");
    }
    return static_cast<int>(code);
  }
  if (std::isnan(value)) {
    throw std::invalid_argument("NaN value for '" + var.name + "'");
  }
  return static_cast<int>(
    std::lower_bound(var.boundaries.begin(), var.boundaries.end(), value) -
    var.boundaries.begin());
}

inline std::vector<int> discretize_row(const DiscretizationSpec & spec, const std::vector<double> & row)
{
  if (row.size() != spec.variables.size()) {
    throw std::invalid_argument("row width does not match discretization");
  }
  std::vector<int> out(row.size());
  for (std::size_t c = 0; c < row.size(); ++c) {
    out[c] = discretize_value(spec.variables[c], row[c]);
  }
  return out;
}

inline DiscreteDataset discretize(
  const std::vector<std::vector<double>> & rows, const DiscretizationSpec & spec)
{
  DiscreteDataset out(spec.cardinalities());
  out.reserve(rows.size());
  for (const auto & r : rows) {
    out.add_row(discretize_row(spec, r));
  }
  return out;
}

inline DiscreteDataset discretize(const std::vector<ParamVector> & data, const DiscretizationSpec & spec)
{
  DiscreteDataset out(spec.cardinalities());
  out.reserve(data.size());
  for (const auto & p : data) {
    out.add_row(discretize_row(spec, to_row(p)));
  }
  return out;
}

/// Range (lo, hi] covered by a continuous bin; outer bins end at the
/// observed extremes.
inline std::pair<double, double> bin_range(const VariableSpec & var, const std::size_t bin)
{
  if (bin >= var.cardinality()) {
    throw std::out_of_range("bin index out of range for '" + var.name + "'");
  }
  const double lo = bin == 0 ? var.min : var.boundaries[bin - 1];
  const double hi = bin + 1 == var.cardinality() ? var.max : var.boundaries[bin];
  return {lo, hi};
}

/// Draws a value uniformly inside the bin so that it discretizes back to the
/// same bin. Categorical variables return the category code.
inline double continuous_from_bin(const VariableSpec & var, const std::size_t bin, Rng & rng)
{
  if (var.categorical) {
    if (bin >= var.labels.size()) {
      throw std::out_of_range("bin index out of range for '" + var.name + "'");
    }
    return static_cast<double>(bin);
  }
  const auto [lo, hi] = bin_range(var, bin);
  const double u = unit_uniform(rng);
  double x = hi - u * (hi - lo);
  if (bin > 0 && x <= lo) {
    x = std::nextafter(lo, hi);
  }
  return x;
}

inline double continuous_from_bin(
  const DiscretizationSpec & spec, const std::string_view var, const std::size_t bin, Rng & rng)
{
  return continuous_from_bin(spec.variables[spec.index_of(var)], bin, rng);
}

}  // namespace scenario_bn::bayesnet

#endif  // SCENARIO_BN__BAYESNET__DISCRETIZATION_HPP_
