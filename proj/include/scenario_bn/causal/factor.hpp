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

#ifndef SCENARIO_BN__CAUSAL__FACTOR_HPP_
#define SCENARIO_BN__CAUSAL__FACTOR_HPP_

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace scenario_bn::causal
{

/// Non-negative table over a set of discrete variables; the last variable
/// varies fastest.
struct Factor
{
  std::vector<std::size_t> vars;
  std::vector<std::size_t> cards;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }

  bool contains(const std::size_t v) const
  {
    return std::find(vars.begin(), vars.end(), v) != vars.end();
  }

  std::size_t position(const std::size_t v) const
  {
    return static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin());
  }
};

inline std::size_t table_size(const std::vector<std::size_t> & cards)
{
  std::size_t n = 1;
  for (const auto c : cards) {
    n *= c;
  }
  return n;
}

namespace detail
{

/// Strides of `f`'s variables laid out against `vars` (0 when absent).
inline std::vector<std::size_t> strides_in(const Factor & f, const std::vector<std::size_t> & vars)
{
  std::vector<std::size_t> own(f.vars.size());
  std::size_t s = 1;
  for (std::size_t i = f.vars.size(); i-- > 0;) {
    own[i] = s;
    s *= f.cards[i];
  }
  std::vector<std::size_t> out(vars.size(), 0);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t k = 0; k < f.vars.size(); ++k) {
      if (f.vars[k] == vars[i]) {
        out[i] = own[k];
      }
    }
  }
  return out;
}

}  // namespace detail

inline Factor multiply(const Factor & a, const Factor & b)
{
  Factor out;
  out.vars = a.vars;
  out.cards = a.cards;
  for (std::size_t i = 0; i < b.vars.size(); ++i) {
    if (!a.contains(b.vars[i])) {
      out.vars.push_back(b.vars[i]);
      out.cards.push_back(b.cards[i]);
    }
  }
  out.values.assign(table_size(out.cards), 0.0);
  const auto sa = detail::strides_in(a, out.vars);
  const auto sb = detail::strides_in(b, out.vars);
  std::vector<std::size_t> assign(out.vars.size(), 0);
  std::size_t ia = 0;
  std::size_t ib = 0;
  for (std::size_t idx = 0; idx < out.values.size(); ++idx) {
    out.values[idx] = a.values[ia] * b.values[ib];
    // Odometer increment, last variable fastest.
    for (std::size_t d = out.vars.size(); d-- > 0;) {
      if (++assign[d] < out.cards[d]) {
        ia += sa[d];
        ib += sb[d];
        break;
      }
      ia -= sa[d] * (out.cards[d] - 1);
      ib -= sb[d] * (out.cards[d] - 1);
      assign[d] = 0;
    }
  }
  return out;
}

inline Factor sum_out(const Factor & f, const std::size_t var)
{
  const std::size_t pos = f.position(var);
  if (pos == f.vars.size()) {
    return f;
  }
  Factor out;
  for (std::size_t i = 0; i < f.vars.size(); ++i) {
    if (i != pos) {
      out.vars.push_back(f.vars[i]);
      out.cards.push_back(f.cards[i]);
    }
  }
  out.values.assign(table_size(out.cards), 0.0);
  std::size_t inner = 1;
  for (std::size_t i = pos + 1; i < f.vars.size(); ++i) {
    inner *= f.cards[i];
  }
  const std::size_t k = f.cards[pos];
  const std::size_t outer = f.values.size() / (inner * k);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t i = 0; i < inner; ++i) {
        out.values[o * inner + i] += f.values[(o * k + x) * inner + i];
      }
    }
  }
  return out;
}

/// Slice of `f` with `var` fixed to `value` (variable dropped).
inline Factor restrict(const Factor & f, const std::size_t var, const std::size_t value)
{
  const std::size_t pos = f.position(var);
  if (pos == f.vars.size()) {
    return f;
  }
  if (value >= f.cards[pos]) {
    throw std::out_of_range("restriction value outside cardinality");
  }
  Factor out;
  for (std::size_t i = 0; i < f.vars.size(); ++i) {
    if (i != pos) {
      out.vars.push_back(f.vars[i]);
      out.cards.push_back(f.cards[i]);
    }
  }
  out.values.assign(table_size(out.cards), 0.0);
  std::size_t inner = 1;
  for (std::size_t i = pos + 1; i < f.vars.size(); ++i) {
    inner *= f.cards[i];
  }
  const std::size_t k = f.cards[pos];
  const std::size_t outer = f.values.size() / (inner * k);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < inner; ++i) {
      out.values[o * inner + i] = f.values[(o * k + value) * inner + i];
    }
  }
  return out;
}

}  // namespace scenario_bn::causal

#endif  // SCENARIO_BN__CAUSAL__FACTOR_HPP_
