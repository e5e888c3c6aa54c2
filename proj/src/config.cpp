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

#include "aerofetch/config.hpp"

#include "aerofetch/errors.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <functional>
#include <map>

namespace aerofetch
{
namespace
{

std::string trimmed(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view key, std::string_view text)
{
  const std::string t = trimmed(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v)) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, text));
  }
  return v;
}

long long to_integer(std::string_view key, std::string_view text)
{
  const std::string t = trimmed(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(fmt::format("{}: expected an integer, got '{}'", key, text));
  }
  return v;
}

bool to_bool(std::string_view key, std::string_view text)
{
  const std::string t = trimmed(text);
  if (t == "true" || t == "1") {
    return true;
  }
  if (t == "false" || t == "0") {
    return false;
  }
  throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, text));
}

MissionState to_state(std::string_view key, std::string_view text)
{
  const std::string t = trimmed(text);
  for (std::size_t k = 0; k < kMissionStateCount; ++k) {
    const auto s = static_cast<MissionState>(k);
    if (to_string(s) == t) {
      return s;
    }
  }
  throw ConfigError(fmt::format("{}: unknown mission state '{}'", key, text));
}

using Setter = std::function<void(MissionParams &, std::string_view key, std::string_view value)>;

template <typename F>
Setter real_field(F accessor)
{
  return [accessor](MissionParams & p, std::string_view key, std::string_view value) {
    accessor(p) = to_double(key, value);
  };
}

template <typename F>
Setter int_field(F accessor)
{
  return [accessor](MissionParams & p, std::string_view key, std::string_view value) {
    accessor(p) = static_cast<int>(to_integer(key, value));
  };
}

const std::map<std::string, Setter, std::less<>> & setters()
{
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    // mission
    t["mission.cruise_altitude"] =
      real_field([](MissionParams & p) -> double & { return p.mission.cruise_altitude; });
    t["mission.max_recoveries"] =
      int_field([](MissionParams & p) -> int & { return p.mission.max_recoveries; });
    t["mission.seed"] = [](MissionParams & p, std::string_view key, std::string_view value) {
      const long long v = to_integer(key, value);
      if (v < 0) {
        throw ConfigError(fmt::format("{}: expected a non-negative integer", key));
      }
      p.mission.seed = static_cast<std::uint64_t>(v);
    };
    t["mission.dt"] = real_field([](MissionParams & p) -> double & { return p.mission.dt; });
    t["mission.perception_rate_hz"] =
      real_field([](MissionParams & p) -> double & { return p.mission.perception_rate_hz; });
    t["mission.survey_dwell"] =
      real_field([](MissionParams & p) -> double & { return p.mission.survey_dwell; });
    t["mission.handover_dwell"] =
      real_field([](MissionParams & p) -> double & { return p.mission.handover_dwell; });
    t["mission.grasp_hold"] =
      real_field([](MissionParams & p) -> double & { return p.mission.grasp_hold; });
    t["mission.recovery_hover"] =
      real_field([](MissionParams & p) -> double & { return p.mission.recovery_hover; });
    t["mission.lost_ticks"] =
      int_field([](MissionParams & p) -> int & { return p.mission.lost_ticks; });
    t["mission.proximity_floor"] =
      real_field([](MissionParams & p) -> double & { return p.mission.proximity_floor; });
    t["mission.waypoint_tolerance"] =
      real_field([](MissionParams & p) -> double & { return p.mission.waypoint_tolerance; });
    t["mission.arrival_tolerance"] =
      real_field([](MissionParams & p) -> double & { return p.mission.arrival_tolerance; });
    t["mission.max_mission_time"] =
      real_field([](MissionParams & p) -> double & { return p.mission.max_mission_time; });
    t["mission.blackout.state"] = [](MissionParams & p, std::string_view key,
                                     std::string_view value) {
      p.mission.blackout.state = to_state(key, value);
    };
    t["mission.blackout.delay"] =
      real_field([](MissionParams & p) -> double & { return p.mission.blackout.delay; });
    t["mission.blackout.duration"] =
      real_field([](MissionParams & p) -> double & { return p.mission.blackout.duration; });
    for (std::size_t k = 0; k < kMissionStateCount; ++k) {
      const auto s = static_cast<MissionState>(k);
      t[fmt::format("mission.timeout.{}", to_string(s))] =
        [s](MissionParams & p, std::string_view key, std::string_view value) {
          p.mission.timeout(s) = to_double(key, value);
        };
    }
    // perception
    t["noise.sigma_px"] = real_field([](MissionParams & p) -> double & { return p.noise.sigma_px; });
    t["noise.sigma_depth"] =
      real_field([](MissionParams & p) -> double & { return p.noise.sigma_depth; });
    t["noise.conf_lo"] = real_field([](MissionParams & p) -> double & { return p.noise.conf_lo; });
    t["noise.max_range"] =
      real_field([](MissionParams & p) -> double & { return p.noise.max_range; });
    t["camera.fx"] = real_field([](MissionParams & p) -> double & { return p.camera.fx; });
    t["camera.fy"] = real_field([](MissionParams & p) -> double & { return p.camera.fy; });
    t["camera.cx"] = real_field([](MissionParams & p) -> double & { return p.camera.cx; });
    t["camera.cy"] = real_field([](MissionParams & p) -> double & { return p.camera.cy; });
    t["camera.width"] = int_field([](MissionParams & p) -> int & { return p.camera.width; });
    t["camera.height"] = int_field([](MissionParams & p) -> int & { return p.camera.height; });
    t["mount.yaw"] = real_field([](MissionParams & p) -> double & { return p.mount.yaw; });
    t["mount.x"] = real_field([](MissionParams & p) -> double & { return p.mount.translation.x; });
    t["mount.y"] = real_field([](MissionParams & p) -> double & { return p.mount.translation.y; });
    t["mount.z"] = real_field([](MissionParams & p) -> double & { return p.mount.translation.z; });
    // planner
    t["planner.resolution"] =
      real_field([](MissionParams & p) -> double & { return p.planner.resolution; });
    t["planner.safety_margin"] =
      real_field([](MissionParams & p) -> double & { return p.planner.safety_margin; });
    t["planner.drone_radius"] =
      real_field([](MissionParams & p) -> double & { return p.planner.drone_radius; });
    t["planner.human_on_all_legs"] = [](MissionParams & p, std::string_view key,
                                        std::string_view value) {
      p.planner.human_on_all_legs = to_bool(key, value);
    };
    // control
    t["limits.v_max"] = real_field([](MissionParams & p) -> double & { return p.limits.v_max; });
    t["limits.yaw_rate_max"] =
      real_field([](MissionParams & p) -> double & { return p.limits.yaw_rate_max; });
    t["limits.tau"] = real_field([](MissionParams & p) -> double & { return p.limits.tau; });
    t["gains.kp"] = real_field([](MissionParams & p) -> double & { return p.gains.kp; });
    t["gains.k_yaw"] = real_field([](MissionParams & p) -> double & { return p.gains.k_yaw; });
    t["gains.ibvs_lambda"] =
      real_field([](MissionParams & p) -> double & { return p.gains.ibvs_lambda; });
    t["gains.k_forward"] =
      real_field([](MissionParams & p) -> double & { return p.gains.k_forward; });
    t["gripper.grasp_radius"] =
      real_field([](MissionParams & p) -> double & { return p.gripper.grasp_radius; });
    t["gripper.align_tol"] =
      real_field([](MissionParams & p) -> double & { return p.gripper.align_tol; });
    t["gripper.offset_x"] =
      real_field([](MissionParams & p) -> double & { return p.gripper.offset.x; });
    t["gripper.offset_y"] =
      real_field([](MissionParams & p) -> double & { return p.gripper.offset.y; });
    t["gripper.offset_z"] =
      real_field([](MissionParams & p) -> double & { return p.gripper.offset.z; });
    t["servo.switch_radius"] =
      real_field([](MissionParams & p) -> double & { return p.servo_switch.switch_radius; });
    t["servo.hysteresis"] =
      real_field([](MissionParams & p) -> double & { return p.servo_switch.hysteresis; });
    // handover
    t["handover.distance"] =
      real_field([](MissionParams & p) -> double & { return p.handover.d_handover; });
    t["handover.chest_height"] =
      real_field([](MissionParams & p) -> double & { return p.handover.h_chest; });
    t["handover.mode"] = [](MissionParams & p, std::string_view key, std::string_view value) {
      try {
        p.handover.mode = parse_handover_mode(trimmed(value));
      } catch (const InvalidParameterError & e) {
        throw ConfigError(fmt::format("{}: {}", key, e.what()));
      }
    };
    return t;
  }();
  return table;
}

}  // namespace

void apply_override(MissionParams & params, std::string_view key, std::string_view value)
{
  const std::string k = trimmed(key);
  const auto it = setters().find(k);
  if (it == setters().end()) {
    throw ConfigError(fmt::format("unknown config key '{}'", k));
  }
  it->second(params, k, value);
}

void apply_assignment(MissionParams & params, std::string_view assignment)
{
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(
      fmt::format("expected key=value, got '{}'", std::string(assignment)));
  }
  apply_override(params, assignment.substr(0, eq), assignment.substr(eq + 1));
}

std::vector<std::string> config_keys()
{
  std::vector<std::string> keys;
  for (const auto & [k, _] : setters()) {
    keys.push_back(k);
  }
  return keys;
}

std::vector<std::string> validate_params(const MissionParams & p)
{
  std::vector<std::string> v;
  auto positive = [&](double x, std::string_view name) {
    if (!(x > 0.0)) {
      v.push_back(fmt::format("{} must be positive", name));
    }
  };
  const MissionConfig & m = p.mission;
  positive(m.cruise_altitude, "mission.cruise_altitude");
  positive(m.dt, "mission.dt");
  positive(m.perception_rate_hz, "mission.perception_rate_hz");
  positive(m.survey_dwell, "mission.survey_dwell");
  positive(m.waypoint_tolerance, "mission.waypoint_tolerance");
  positive(m.arrival_tolerance, "mission.arrival_tolerance");
  positive(m.max_mission_time, "mission.max_mission_time");
  if (m.handover_dwell < 0.0 || m.grasp_hold < 0.0 || m.recovery_hover < 0.0) {
    v.push_back("mission dwell and hover times must be non-negative");
  }
  if (m.max_recoveries < 0) {
    v.push_back("mission.max_recoveries must be non-negative");
  }
  if (m.lost_ticks < 1) {
    v.push_back("mission.lost_ticks must be at least 1");
  }
  for (std::size_t k = 0; k < kMissionStateCount; ++k) {
    if (!(m.timeouts[k] > 0.0)) {
      v.push_back(fmt::format(
        "mission.timeout.{} must be positive", to_string(static_cast<MissionState>(k))));
    }
  }
  if (p.noise.sigma_px < 0.0 || p.noise.sigma_depth < 0.0) {
    v.push_back("noise sigmas must be non-negative");
  }
  if (p.noise.conf_lo < 0.0 || p.noise.conf_lo > 1.0) {
    v.push_back("noise.conf_lo must lie in [0, 1]");
  }
  positive(p.noise.max_range, "noise.max_range");
  if (!p.camera.valid()) {
    v.push_back("camera intrinsics invalid (need fx, fy > 0 and principal point in the image)");
  }
  positive(p.planner.resolution, "planner.resolution");
  if (p.planner.safety_margin < 0.0 || p.planner.drone_radius < 0.0) {
    v.push_back("planner margins must be non-negative");
  }
  positive(p.limits.v_max, "limits.v_max");
  positive(p.limits.yaw_rate_max, "limits.yaw_rate_max");
  positive(p.limits.tau, "limits.tau");
  positive(p.gains.kp, "gains.kp");
  positive(p.gains.k_yaw, "gains.k_yaw");
  positive(p.gains.ibvs_lambda, "gains.ibvs_lambda");
  positive(p.gains.k_forward, "gains.k_forward");
  positive(p.gripper.grasp_radius, "gripper.grasp_radius");
  positive(p.gripper.align_tol, "gripper.align_tol");
  positive(p.servo_switch.switch_radius, "servo.switch_radius");
  if (p.servo_switch.hysteresis < 0.0) {
    v.push_back("servo.hysteresis must be non-negative");
  }
  if (!p.handover.valid()) {
    v.push_back(fmt::format(
      "handover distance must lie in [{}, {}] m and chest height in [{}, {}] m",
      HandoverParams::kMinDistance, HandoverParams::kMaxDistance, HandoverParams::kMinHeight,
      HandoverParams::kMaxHeight));
  }
  return v;
}

}  // namespace aerofetch
