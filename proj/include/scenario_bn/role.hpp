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

#ifndef SCENARIO_BN__ROLE_HPP_
#define SCENARIO_BN__ROLE_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace scenario_bn
{

/// Direct parameters are rendered into executable scenarios; indirect ones
/// only carry causal influence on the direct ones.
enum class Role { direct, indirect };

inline std::string_view to_string(const Role r) { return r == Role::direct ? "direct" : "indirect"; }

inline Role role_from_string(const std::string_view s)
{
  if (s == "direct") return Role::direct;
  if (s == "indirect") return Role::indirect;
  throw std::invalid_argument("unknown role '" + std::string(s) + "'");
}

}  // namespace scenario_bn

#endif  // SCENARIO_BN__ROLE_HPP_
