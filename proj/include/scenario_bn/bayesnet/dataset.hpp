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

#ifndef SCENARIO_BN__BAYESNET__DATASET_HPP_
#define SCENARIO_BN__BAYESNET__DATASET_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scenario_bn::bayesnet
{

/// Row-major table of bin indices, one column per network node.
class DiscreteDataset
{
public:
  DiscreteDataset() = default;

  explicit DiscreteDataset(std::vector<std::size_t> cardinalities)
  : cardinalities_(std::move(cardinalities))
  {
  }

  std::size_t rows() const { return cardinalities_.empty() ? 0 : values_.size() / cardinalities_.size(); }
  std::size_t columns() const { return cardinalities_.size(); }
  const std::vector<std::size_t> & cardinalities() const { return cardinalities_; }
  std::size_t cardinality(const std::size_t col) const { return cardinalities_[col]; }

  int at(const std::size_t row, const std::size_t col) const
  {
    return values_[row * cardinalities_.size() + col];
  }

  const int * row(const std::size_t r) const { return values_.data() + r * cardinalities_.size(); }

  void add_row(const std::vector<int> & row)
  {
    if (row.size() != cardinalities_.size()) {
      throw std::invalid_argument(
        "row has " + std::to_string(row.size()) + " values, expected " +
        std::to_string(cardinalities_.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] < 0 || static_cast<std::size_t>(row[c]) >= cardinalities_[c]) {
        throw std::out_of_range(
          "value " + std::to_string(row[c]) + " outside cardinality of column " +
          std::to_string(c));
      }
    }
    values_.insert(values_.end(), row.begin(), row.end());
  }

  void reserve(const std::size_t n_rows) { values_.reserve(n_rows * cardinalities_.size()); }

  std::vector<int> row_vector(const std::size_t r) const
  {
    return {row(r), row(r) + cardinalities_.size()};
  }

  friend bool operator==(const DiscreteDataset &, const DiscreteDataset &) = default;

private:
  std::vector<std::size_t> cardinalities_;
  std::vector<int> values_;
};

}  // namespace scenario_bn::bayesnet

#endif  // SCENARIO_BN__BAYESNET__DATASET_HPP_
