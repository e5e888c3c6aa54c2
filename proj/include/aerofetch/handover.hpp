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

#ifndef AEROFETCH__HANDOVER_HPP_
#define AEROFETCH__HANDOVER_HPP_

#include "aerofetch/geometry.hpp"
#include "aerofetch/perception.hpp"

#include <string_view>

namespace aerofetch
{

struct HumanOrientation
{
  /// Right shoulder minus left shoulder.
  Vec3 torso_vector{};
  /// Heading of the torso vector, atan2(y, x).
  double yaw{0.0};
  /// yaw + pi/2: the direction the chest points.
  double facing_yaw{0.0};
};

enum class HandoverMode {
  /// Standoff along the facing direction (in front of the person).
  Facing,
  /// Standoff along yaw + pi, i.e. along the shoulder line.
  ShoulderLine
};

enum class HandoverSide { Left, Right, Center };

std::string_view to_string(HandoverMode mode);
std::string_view to_string(HandoverSide side);
/// Accepts "facing" and "shoulder-line". Throws InvalidParameterError otherwise.
HandoverMode parse_handover_mode(std::string_view text);

struct HandoverParams
{
  double d_handover{0.7};
  double h_chest{1.15};
  HandoverMode mode{HandoverMode::Facing};

  static constexpr double kMinDistance = 0.6;
  static constexpr double kMaxDistance = 0.8;
  static constexpr double kMinHeight = 1.0;
  static constexpr double kMaxHeight = 1.3;

  bool valid() const;
};

struct HandoverPose
{
  Pose pose{};
  HandoverSide side{HandoverSide::Center};
};

/// Throws DegenerateSkeletonError when the shoulders coincide in the
/// horizontal plane.
HumanOrientation estimate_orientation(const SkeletonLandmarks & sk);

/// Wrist extension score: forward reach along the facing direction plus
/// rise above the hip, each clipped at zero. The larger score wins unless
/// the two differ by less than `epsilon`.
HandoverSide estimate_hand_side(
  const SkeletonLandmarks & sk, const HumanOrientation & orientation, double epsilon = 0.05);

/// Throws InvalidParameterError when params are outside their ranges.
HandoverPose handover_pose(
  const Vec3 & human_center, const HumanOrientation & orientation, const HandoverParams & params,
  HandoverSide side = HandoverSide::Center);

}  // namespace aerofetch

#endif  // AEROFETCH__HANDOVER_HPP_
