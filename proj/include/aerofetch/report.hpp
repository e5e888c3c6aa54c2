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

#ifndef AEROFETCH__REPORT_HPP_
#define AEROFETCH__REPORT_HPP_

#include "aerofetch/batch.hpp"
#include "aerofetch/mission.hpp"
#include "aerofetch/planner.hpp"

#include <span>
#include <string>
#include <vector>

namespace aerofetch
{

/// Top-level keys of the trial report, in output order.
std::vector<std::string> report_keys();

/// Trial report: outcome, metrics, tasks, legs, transitions and events.
std::string report_json(
  const TrialResult & trial, const std::string & prompt, const MissionParams & params);

/// Header `t,x,y,z,yaw,state,gripper`, one row per tick.
std::string trajectory_csv(const MissionLog & log);

/// Top-down view: room, table, objects, human with planning ring, the
/// reference path of each leg and the flown trajectory.
std::string mission_svg(const Scene & scene, const MissionLog & log, const MissionParams & params);

/// One row per trial plus an `aggregate` row pooled over all samples.
std::string aggregate_csv(std::span<const TrialResult> trials);

/// Header `index,x,y`.
std::string waypoints_csv(const PlannedPath & path);

/// Plain PGM (P2): free cells 255, occupied 0, north up.
std::string grid_pgm(const OccupancyGrid & grid);

/// Single-leg view with occupied cells, raw and smoothed paths.
std::string plan_svg(
  const Scene & scene, const OccupancyGrid & grid, const PlannedPath & raw,
  const PlannedPath & smoothed, const MissionParams & params);

}  // namespace aerofetch

#endif  // AEROFETCH__REPORT_HPP_
