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

#include "aerofetch/handover.hpp"

#include "aerofetch/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <string>

namespace aerofetch
{

std::string_view to_string(HandoverMode mode)
{
  return mode == HandoverMode::Facing ? "facing" : "shoulder-line";
}

std::string_view to_string(HandoverSide side)
{
  switch (side) {
    case HandoverSide::Left:
      return "left";
    case HandoverSide::Right:
      return "right";
    case HandoverSide::Center:
      break;
  }
  return "center";
}

HandoverMode parse_handover_mode(std::string_view text)
{
  if (text == "facing") {
    return HandoverMode::Facing;
  }
  if (text == "shoulder-line") {
    return HandoverMode::ShoulderLine;
  }
  throw InvalidParameterError(
    fmt::format("unknown handover mode '{}' (expected facing|shoulder-line)", std::string(text)));
}

bool HandoverParams::valid() const
{
  return d_handover >= kMinDistance && d_handover <= kMaxDistance && h_chest >= kMinHeight &&
         h_chest <= kMaxHeight;
}

HumanOrientation estimate_orientation(const SkeletonLandmarks & sk)
{
  const Vec3 torso = sk[Landmark::RightShoulder] - sk[Landmark::LeftShoulder];
  if (torso.norm_xy() < 1e-9) {
    throw DegenerateSkeletonError("left and right shoulders coincide");
  }
  HumanOrientation o;
  o.torso_vector = torso;
  o.yaw = std::atan2(torso.y, torso.x);
  o.facing_yaw = normalize_angle(o.yaw + kPi / 2.0);
  return o;
}

HandoverSide estimate_hand_side(
  const SkeletonLandmarks & sk, const HumanOrientation & orientation, double epsilon)
{
  const Vec3 facing{std::cos(orientation.facing_yaw), std::sin(orientation.facing_yaw), 0.0};
  auto extension = [&](Landmark wrist, Landmark hip) {
    const Vec3 d = sk[wrist] - sk[hip];
    return std::max(0.0, dot(d, facing)) + std::max(0.0, d.z);
  };
  const double left = extension(Landmark::LeftWrist, Landmark::LeftHip);
  const double right = extension(Landmark::RightWrist, Landmark::RightHip);
  if (std::abs(left - right) < epsilon) {
    return HandoverSide::Center;
  }
  return left > right ? HandoverSide::Left : HandoverSide::Right;
}

HandoverPose handover_pose(
  const Vec3 & human_center, const HumanOrientation & orientation, const HandoverParams & params,
  HandoverSide side)
{
  if (!params.valid()) {
    throw InvalidParameterError(fmt::format(
      "handover params out of range: d={} (0.6..0.8), h_chest={} (1.0..1.3)", params.d_handover,
      params.h_chest));
  }
  const double direction =
    params.mode == HandoverMode::Facing ? orientation.facing_yaw : orientation.yaw + kPi;
  const Vec3 offset{
    params.d_handover * std::cos(direction), params.d_handover * std::sin(direction), 0.0};
  const Vec3 point{
    human_center.x + offset.x, human_center.y + offset.y, human_center.z + params.h_chest};
  const double yaw_to_human = std::atan2(-offset.y, -offset.x);
  return {Pose::make(point, yaw_to_human), side};
}

}  // namespace aerofetch
