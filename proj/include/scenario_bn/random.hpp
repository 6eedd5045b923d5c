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

#ifndef SCENARIO_BN__RANDOM_HPP_
#define SCENARIO_BN__RANDOM_HPP_

#include <cstdint>
#include <random>

namespace scenario_bn
{

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits, identical on every
/// platform for a given engine state.
inline double unit_uniform(Rng & rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Seed for an independent stream derived from a base seed and an index
/// (splitmix64 finalizer).
inline std::uint64_t derive_seed(const std::uint64_t seed, const std::uint64_t index)
{
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace scenario_bn

#endif  // SCENARIO_BN__RANDOM_HPP_
