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

#include "aerofetch/control.hpp"

#include "aerofetch/errors.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace aerofetch
{

std::string_view to_string(GripperState s) { return s == GripperState::Open ? "open" : "closed"; }

std::string_view to_string(ServoMode m) { return m == ServoMode::PBVS ? "pbvs" : "ibvs"; }

VelocityCommand saturate(const VelocityCommand & cmd, const ControlLimits & limits)
{
  VelocityCommand out = cmd;
  const double speed = cmd.linear.norm();
  if (speed > limits.v_max) {
    out.linear = cmd.linear * (limits.v_max / speed);
  }
  out.yaw_rate = std::clamp(cmd.yaw_rate, -limits.yaw_rate_max, limits.yaw_rate_max);
  return out;
}

VelocityCommand body_to_world(const VelocityCommand & body_cmd, double yaw)
{
  return {rotate_z(body_cmd.linear, yaw), body_cmd.yaw_rate};
}

DroneState step_dynamics(
  const DroneState & state, const VelocityCommand & cmd, double dt, const ControlLimits & limits)
{
  if (!(dt > 0.0)) {
    throw InvalidParameterError(fmt::format("time step must be positive, got {}", dt));
  }
  const VelocityCommand applied = saturate(cmd, limits);
  const double alpha = 1.0 - std::exp(-dt / limits.tau);

  DroneState next = state;
  next.t = state.t + dt;
  next.velocity = state.velocity + (applied.linear - state.velocity) * alpha;
  next.yaw_rate = applied.yaw_rate;
  next.pose.position = state.pose.position + next.velocity * dt;
  next.pose.yaw = normalize_angle(state.pose.yaw + applied.yaw_rate * dt);
  return next;
}

VelocityCommand pbvs_command(
  const DroneState & state, const Vec3 & waypoint, double target_yaw, const ServoGains & gains,
  const ControlLimits & limits)
{
  VelocityCommand cmd;
  cmd.linear = (waypoint - state.pose.position) * gains.kp;
  cmd.yaw_rate = gains.k_yaw * normalize_angle(target_yaw - state.pose.yaw);
  return saturate(cmd, limits);
}

VelocityCommand ibvs_command(
  const ImageFeatureError & err, const CameraIntrinsics & intr, double standoff_error,
  const ServoGains & gains, const ControlLimits & limits)
{
  if (!(err.depth > 0.0)) {
    throw InvalidDepthError(fmt::format("feature depth must be positive, got {}", err.depth));
  }
  // Optical x is body -y and optical y is body -z, hence the signs.
  VelocityCommand cmd;
  cmd.linear.x = gains.k_forward * standoff_error;
  cmd.linear.y = -gains.ibvs_lambda * (err.u - err.u_desired) * err.depth / intr.fx;
  cmd.linear.z = -gains.ibvs_lambda * (err.v - err.v_desired) * err.depth / intr.fy;
  cmd.yaw_rate = 0.0;
  return saturate(cmd, limits);
}

GripperAction gripper_policy(
  const Vec3 & target_rel, GraspPhase phase, const GripperParams & params)
{
  switch (phase) {
    case GraspPhase::Carrying:
      return GripperAction::Close;
    case GraspPhase::Grasping: {
      const double lateral = std::hypot(target_rel.y, target_rel.z);
      const bool in_reach = target_rel.norm() <= params.grasp_radius;
      return in_reach && lateral <= params.align_tol ? GripperAction::Close : GripperAction::Open;
    }
    case GraspPhase::Approach:
    case GraspPhase::Handover:
      break;
  }
  return GripperAction::Open;
}

DroneState actuate_gripper(
  const DroneState & state, GripperAction action,
  const std::optional<std::string> & object_in_reach)
{
  DroneState next = state;
  if (action == GripperAction::Close && state.gripper == GripperState::Open) {
    next.gripper = GripperState::Closed;
    next.payload = object_in_reach;
  } else if (action == GripperAction::Open && state.gripper == GripperState::Closed) {
    next.gripper = GripperState::Open;
    next.payload.reset();
  }
  return next;
}

ServoMode ServoModeSelector::update(double distance_to_target, bool target_visible)
{
  if (mode_ == ServoMode::PBVS) {
    if (target_visible && distance_to_target < params_.switch_radius) {
      mode_ = ServoMode::IBVS;
    }
  } else if (!target_visible || distance_to_target > params_.switch_radius + params_.hysteresis) {
    mode_ = ServoMode::PBVS;
  }
  return mode_;
}

ServoMode select_servo_mode(
  double distance_to_target, bool target_visible, const ServoSwitchParams & params)
{
  ServoModeSelector selector(params);
  return selector.update(distance_to_target, target_visible);
}

}  // namespace aerofetch
