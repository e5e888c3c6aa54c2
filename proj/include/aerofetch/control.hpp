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

#ifndef AEROFETCH__CONTROL_HPP_
#define AEROFETCH__CONTROL_HPP_

#include "aerofetch/geometry.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace aerofetch
{

enum class GripperState { Open, Closed };
enum class GripperAction { Open, Close };
enum class GraspPhase { Approach, Grasping, Carrying, Handover };
enum class ServoMode { PBVS, IBVS };

std::string_view to_string(GripperState s);
std::string_view to_string(ServoMode m);

struct ControlLimits
{
  double v_max{1.0};
  double yaw_rate_max{1.5};
  /// First-order velocity time constant, seconds.
  double tau{0.2};
};

struct ServoGains
{
  double kp{0.8};
  double k_yaw{1.0};
  /// Pixel error to lateral/vertical speed, scaled by Z/f.
  double ibvs_lambda{1.0};
  /// Standoff error to forward speed.
  double k_forward{0.8};
};

struct GripperParams
{
  double grasp_radius{0.10};
  double align_tol{0.05};
  /// Gripper jaw center in the body frame (x forward).
  Vec3 offset{0.30, 0.0, 0.0};
};

struct ServoSwitchParams
{
  double switch_radius{0.5};
  double hysteresis{0.1};
};

struct DroneState
{
  double t{0.0};
  Pose pose{};
  Vec3 velocity{};
  double yaw_rate{0.0};
  GripperState gripper{GripperState::Open};
  std::optional<std::string> payload;
};

/// Linear part is world-frame unless a function says otherwise.
struct VelocityCommand
{
  Vec3 linear{};
  double yaw_rate{0.0};

  bool operator==(const VelocityCommand &) const = default;
};

struct ImageFeatureError
{
  double u{0.0};
  double v{0.0};
  double u_desired{0.0};
  double v_desired{0.0};
  /// Depth estimate of the feature.
  double depth{1.0};
};

/// Linear speed clamped to v_max (norm), yaw rate to +-yaw_rate_max.
VelocityCommand saturate(const VelocityCommand & cmd, const ControlLimits & limits);

/// Rotates a body-frame command into the world frame.
VelocityCommand body_to_world(const VelocityCommand & body_cmd, double yaw);

/// First-order velocity plant: v += (sat(cmd) - v) * (1 - exp(-dt/tau)),
/// p += v * dt, yaw += sat(yaw_rate) * dt. Throws InvalidParameterError
/// for dt <= 0.
DroneState step_dynamics(
  const DroneState & state, const VelocityCommand & cmd, double dt, const ControlLimits & limits);

/// Proportional position + yaw law, saturated.
VelocityCommand pbvs_command(
  const DroneState & state, const Vec3 & waypoint, double target_yaw, const ServoGains & gains,
  const ControlLimits & limits);

/// Forward-looking camera IBVS. Returns a BODY-frame command:
/// lateral (body y) = -lambda * (u - u*) * Z / fx,
/// vertical (body z) = -lambda * (v - v*) * Z / fy,
/// forward (body x) = k_forward * standoff_error. Saturated.
/// Throws InvalidDepthError for Z <= 0.
VelocityCommand ibvs_command(
  const ImageFeatureError & err, const CameraIntrinsics & intr, double standoff_error,
  const ServoGains & gains, const ControlLimits & limits);

/// Binary grasp policy. `target_rel` is the target relative to the gripper
/// jaws, in the body frame.
GripperAction gripper_policy(
  const Vec3 & target_rel, GraspPhase phase, const GripperParams & params);

/// Applies a gripper command. A payload attaches only on an Open -> Close
/// transition, and only if an object is within reach (`object_in_reach`);
/// it detaches only on Close -> Open. Repeated commands change nothing.
DroneState actuate_gripper(
  const DroneState & state, GripperAction action,
  const std::optional<std::string> & object_in_reach);

/// PBVS/IBVS selector with hysteresis: enters IBVS below switch_radius
/// when the target is visible, falls back to PBVS above
/// switch_radius + hysteresis or when the target is lost.
class ServoModeSelector
{
public:
  explicit ServoModeSelector(ServoSwitchParams params = {}) : params_(params) {}

  ServoMode update(double distance_to_target, bool target_visible);
  ServoMode mode() const { return mode_; }
  void reset() { mode_ = ServoMode::PBVS; }

private:
  ServoSwitchParams params_;
  ServoMode mode_{ServoMode::PBVS};
};

/// Stateless form of the selector for a fresh approach (no history).
ServoMode select_servo_mode(
  double distance_to_target, bool target_visible, const ServoSwitchParams & params = {});

}  // namespace aerofetch

#endif  // AEROFETCH__CONTROL_HPP_
