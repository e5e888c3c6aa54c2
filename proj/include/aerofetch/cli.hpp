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

#ifndef AEROFETCH__CLI_HPP_
#define AEROFETCH__CLI_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace aerofetch
{

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitPrompt = 3,
  kExitPlanning = 4,
};

inline constexpr const char * kDefaultPrompt = "pick up the red cup";

struct RunSpec
{
  /// Built-in lab scene when empty.
  std::optional<std::string> scene_path;
  std::string prompt{kDefaultPrompt};
  std::uint64_t seed{0};
  int trials{1};
  std::string out_dir{"out"};
  std::optional<std::string> handover_mode;
  /// "dotted.key=value", applied after the scene's own config section.
  std::vector<std::string> overrides;
};

struct PlanSpec
{
  std::optional<std::string> scene_path;
  /// home | human | object:<id> | xy:<x>,<y>
  std::string from{"home"};
  std::string to{"human"};
  std::string out_dir{"out"};
  std::vector<std::string> overrides;
};

/// Runs one mission or a randomized batch and writes trial_NNN.json,
/// trial_NNN_trajectory.csv, trial_NNN.svg, plus aggregate_metrics.csv
/// when trials > 1.
int cmd_run(const RunSpec & request, std::ostream & out, std::ostream & err);

/// Plans a single leg and writes plan_waypoints.csv, plan_grid.pgm and
/// plan.svg.
int cmd_plan(const PlanSpec & request, std::ostream & out, std::ostream & err);

/// Schema and invariant check of a scene file.
int cmd_validate(const std::string & scene_path, std::ostream & out, std::ostream & err);

/// Full command line: `run`, `plan` and `validate` subcommands. Every
/// option also reads an AEROFETCH_* environment variable.
int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

}  // namespace aerofetch

#endif  // AEROFETCH__CLI_HPP_
