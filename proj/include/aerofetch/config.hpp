// Copyright 2026 The aerofetch Authors
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

#ifndef AEROFETCH__CONFIG_HPP_
#define AEROFETCH__CONFIG_HPP_

#include "aerofetch/mission.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace aerofetch
{

/// Sets one parameter by dotted key, e.g. "gains.kp" = "0.6" or
/// "mission.timeout.Grasp" = "30". Unknown keys and unparsable values
/// raise ConfigError.
void apply_override(MissionParams & params, std::string_view key, std::string_view value);

/// Same, for a "key=value" string.
void apply_assignment(MissionParams & params, std::string_view assignment);

/// Every accepted key, sorted.
std::vector<std::string> config_keys();

/// Range checks on a parameter set; one message per violation.
std::vector<std::string> validate_params(const MissionParams & params);

}  // namespace aerofetch

#endif  // AEROFETCH__CONFIG_HPP_
