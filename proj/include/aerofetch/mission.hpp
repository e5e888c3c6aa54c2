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

#ifndef AEROFETCH__MISSION_HPP_
#define AEROFETCH__MISSION_HPP_

#include "aerofetch/control.hpp"
#include "aerofetch/geometry.hpp"
#include "aerofetch/handover.hpp"
#include "aerofetch/perception.hpp"
#include "aerofetch/planner.hpp"
#include "aerofetch/scene.hpp"
#include "aerofetch/task_grammar.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aerofetch
{

enum class MissionState {
  Idle,
  Takeoff,
  Survey,
  Localize,
  PlanToObject,
  NavigateToObject,
  Grasp,
  PlanToHuman,
  NavigateToHuman,
  Handover,
  PlanToHome,
  ReturnHome,
  Land,
  Recovering,
  Aborted,
  Completed,
};

inline constexpr std::size_t kMissionStateCount = 16;

std::string_view to_string(MissionState s);
bool is_terminal(MissionState s);
bool is_navigation(MissionState s);

/// Edges of the mission state graph:
///
///   Idle -> Takeoff -> Survey -> Localize -> PlanToObject -> NavigateToObject
///   -> Grasp -> PlanToHuman -> NavigateToHuman -> Handover -> PlanToHome
///   -> ReturnHome -> Land -> {Takeoff (next task), Completed, Aborted}
///
/// Every non-terminal state may enter Recovering or Aborted. Recovering
/// resumes at Takeoff, Survey, Localize, any Plan* state, Grasp, Handover
/// or Land.
bool is_valid_transition(MissionState from, MissionState to);

// Failure modes, as logged.
inline constexpr std::string_view kFailObjectNotFound = "object-not-found";
inline constexpr std::string_view kFailTargetLost = "target-lost";
inline constexpr std::string_view kFailStateTimeout = "state-timeout";
inline constexpr std::string_view kFailHumanProximity = "human-proximity";
inline constexpr std::string_view kFailNoPath = "no-path";
inline constexpr std::string_view kFailGraspMiss = "grasp-miss";
inline constexpr std::string_view kFailMissionTimeout = "mission-timeout";

/// Scripted perception dropout, applied once on the first entry into
/// `state`, starting `delay` seconds after entry.
struct PerceptionBlackout
{
  std::optional<MissionState> state;
  double delay{0.0};
  double duration{2.0};
};

struct MissionConfig
{
  double cruise_altitude{1.2};
  /// Empty means the default pattern (see default_survey_poses).
  std::vector<Pose> survey_poses;
  std::array<double, kMissionStateCount> timeouts{default_timeouts()};
  int max_recoveries{2};
  std::uint64_t seed{0};

  double dt{0.02};
  double perception_rate_hz{15.0};
  double survey_dwell{1.0};
  double handover_dwell{2.0};
  double grasp_hold{0.5};
  double recovery_hover{1.0};
  /// Consecutive perception ticks without the target before target-lost.
  int lost_ticks{10};
  double proximity_floor{0.8};
  /// Distance at which intermediate path waypoints count as reached.
  double waypoint_tolerance{0.05};
  /// Final-setpoint tolerance for every move.
  double arrival_tolerance{0.03};
  double max_mission_time{1800.0};
  PerceptionBlackout blackout{};

  double timeout(MissionState s) const { return timeouts[static_cast<std::size_t>(s)]; }
  double & timeout(MissionState s) { return timeouts[static_cast<std::size_t>(s)]; }

  static std::array<double, kMissionStateCount> default_timeouts();
};

/// Everything a mission run needs besides the scene and the queue.
struct MissionParams
{
  MissionConfig mission{};
  NoiseParams noise{};
  CameraIntrinsics camera{};
  RigidTransform mount{};
  PlannerParams planner{};
  ControlLimits limits{};
  ServoGains gains{};
  GripperParams gripper{};
  ServoSwitchParams servo_switch{};
  HandoverParams handover{};
};

/// Home raised to cruise altitude, then two vantage poses on the home side
/// of the table, each facing the table center.
std::vector<Pose> default_survey_poses(const Scene & scene, double cruise_altitude);

struct TickRecord
{
  double t{0.0};
  MissionState state{MissionState::Idle};
  /// Index into MissionLog::legs while navigating, -1 otherwise.
  int leg{-1};
  Pose pose{};
  Vec3 velocity{};
  GripperState gripper{GripperState::Open};
  VelocityCommand command{};
};

struct MissionEvent
{
  double t{0.0};
  std::string kind;
  MissionState state{MissionState::Idle};
  std::string detail;
};

struct StateTransition
{
  double t{0.0};
  MissionState from{MissionState::Idle};
  MissionState to{MissionState::Idle};
  std::string reason;
};

enum class LegKind { HomeToObject, ObjectToHuman, HumanToHome };
std::string_view to_string(LegKind k);

struct LegRecord
{
  int task{0};
  LegKind kind{LegKind::HomeToObject};
  double altitude{0.0};
  PlannedPath reference;
  PlannedPath raw;
};

struct GripperEvent
{
  double t{0.0};
  int task{0};
  GripperAction action{GripperAction::Open};
  /// "object", "human" or "elsewhere".
  std::string where;
  std::optional<std::string> object_id;
};

struct TaskRecord
{
  int priority{0};
  std::string descriptor;
  std::optional<Vec3> grounded;
  std::optional<HandoverPose> handover;
  std::optional<std::string> picked_object;
  bool delivered{false};
};

struct MissionOutcome
{
  bool success{false};
  std::string failure_mode;
};

struct MissionLog
{
  std::vector<TickRecord> ticks;
  std::vector<MissionEvent> events;
  std::vector<StateTransition> transitions;
  std::vector<LegRecord> legs;
  std::vector<GripperEvent> gripper_events;
  std::vector<TaskRecord> tasks;
  MissionOutcome outcome;
  MissionState final_state{MissionState::Idle};
  /// True human position, used for clearance.
  Vec3 human_center{};
  double human_planning_radius{0.0};
};

MissionLog run_mission(const Scene & scene, const TaskQueue & queue, const MissionParams & params);

enum class SafetyEventKind { TargetLost, StateTimeout, HumanProximity };
std::string_view to_string(SafetyEventKind k);

struct SafetyContext
{
  MissionState state{MissionState::Idle};
  double time_in_state{0.0};
  double timeout{0.0};
  bool ibvs_active{false};
  int consecutive_lost{0};
  int lost_threshold{10};
  double human_distance{0.0};
  double proximity_floor{0.8};
};

struct SafetyEvent
{
  SafetyEventKind kind{SafetyEventKind::StateTimeout};
  std::string detail;
};

/// Human proximity (not checked in Handover or Recovering) takes priority
/// over target loss, which takes priority over state timeout.
std::optional<SafetyEvent> check_safety(const SafetyContext & ctx);

struct ErrorStats
{
  double max{0.0};
  double mean{0.0};
  double rmse{0.0};
  std::size_t samples{0};
};

/// Point-to-polyline distance of each achieved sample.
ErrorStats trajectory_errors(std::span<const Vec3> reference, std::span<const Vec3> achieved);

struct LegMetrics
{
  int task{0};
  LegKind kind{LegKind::HomeToObject};
  ErrorStats error;
  double min_clearance{0.0};
};

struct MetricsReport
{
  std::vector<LegMetrics> legs;
  ErrorStats aggregate;
  /// Horizontal distance from the human over the densified navigation
  /// trajectory.
  double min_human_clearance{0.0};
  double duration{0.0};
  bool gripper_sequence_ok{false};
  /// Raw per-sample deviations, for pooling across trials.
  std::vector<double> deviations;
};

/// Throws EmptyLogError when the log has no ticks.
MetricsReport compute_metrics(const MissionLog & log);

/// Pools per-sample deviations across several reports.
ErrorStats pool_errors(std::span<const MetricsReport> reports);

}  // namespace aerofetch

#endif  // AEROFETCH__MISSION_HPP_
