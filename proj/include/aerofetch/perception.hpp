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

#ifndef AEROFETCH__PERCEPTION_HPP_
#define AEROFETCH__PERCEPTION_HPP_

#include "aerofetch/geometry.hpp"
#include "aerofetch/scene.hpp"

#include <array>
#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace aerofetch
{

/// Random stream used by every stochastic component. Seeded explicitly.
using Rng = std::mt19937_64;

struct NoiseParams
{
  double sigma_px{2.0};
  double sigma_depth{0.02};
  double conf_lo{0.5};
  double max_range{6.0};

  static NoiseParams zero() { return {0.0, 0.0, 1.0, 6.0}; }
};

struct BoundingBox
{
  double u_min{0.0};
  double v_min{0.0};
  double u_max{0.0};
  double v_max{0.0};

  double center_u() const { return 0.5 * (u_min + u_max); }
  double center_v() const { return 0.5 * (v_min + v_max); }
};

struct DetectionLabel
{
  std::string noun;
  std::set<std::string> attributes;
};

struct Detection
{
  DetectionLabel label;
  BoundingBox bbox;
  double confidence{1.0};
  double centroid_depth{0.0};
};

struct LocalizedDetection
{
  Detection detection;
  Vec3 world{};
};

/// One detection per scene object whose centroid is in front of the camera,
/// inside the image and within `noise.max_range` plane depth. Boxes are
/// shrunk symmetrically at the image border so the box center stays on the
/// (noisy) centroid pixel.
std::vector<Detection> synth_detections(
  const Scene & scene, const Pose & drone_pose, const CameraIntrinsics & intr,
  const RigidTransform & mount, const NoiseParams & noise, Rng & rng);

/// Convenience overload for a list of objects rather than a whole scene.
std::vector<Detection> synth_detections(
  const std::vector<SceneObject> & objects, const Pose & drone_pose, const CameraIntrinsics & intr,
  const RigidTransform & mount, const NoiseParams & noise, Rng & rng);

/// bbox center + centroid depth, deprojected and moved to the world frame.
Vec3 localize(
  const Detection & det, const Pose & drone_pose, const CameraIntrinsics & intr,
  const RigidTransform & mount);

// MediaPipe pose landmark order.
enum class Landmark : std::size_t {
  Nose,
  LeftEyeInner,
  LeftEye,
  LeftEyeOuter,
  RightEyeInner,
  RightEye,
  RightEyeOuter,
  LeftEar,
  RightEar,
  MouthLeft,
  MouthRight,
  LeftShoulder,
  RightShoulder,
  LeftElbow,
  RightElbow,
  LeftWrist,
  RightWrist,
  LeftPinky,
  RightPinky,
  LeftIndex,
  RightIndex,
  LeftThumb,
  RightThumb,
  LeftHip,
  RightHip,
  LeftKnee,
  RightKnee,
  LeftAnkle,
  RightAnkle,
  LeftHeel,
  RightHeel,
  LeftFootIndex,
  RightFootIndex,
  Count
};

inline constexpr std::size_t kLandmarkCount = static_cast<std::size_t>(Landmark::Count);
static_assert(kLandmarkCount == 33);

std::string_view landmark_name(Landmark lm);

/// The left/right partner of a landmark (Nose maps to itself).
Landmark mirror_landmark(Landmark lm);

struct SkeletonLandmarks
{
  std::array<Vec3, kLandmarkCount> points{};

  const Vec3 & operator[](Landmark lm) const { return points[static_cast<std::size_t>(lm)]; }
  Vec3 & operator[](Landmark lm) { return points[static_cast<std::size_t>(lm)]; }
};

/// Extension of the preferred wrist in front of the body, metres.
inline constexpr double kReachExtension = 0.3;

/// World-frame landmarks for a standing human. Left is +90 degrees from the
/// facing direction. The preferred wrist is raised and extended forward,
/// the other hangs at rest.
SkeletonLandmarks synth_skeleton(const HumanModel & human);

/// Shoulder midpoint, the feature the handover servo tracks.
Vec3 chest_point(const SkeletonLandmarks & sk);

/// Ground-projected body center estimated from the hips and heels.
Vec3 estimate_human_center(const SkeletonLandmarks & sk);

}  // namespace aerofetch

#endif  // AEROFETCH__PERCEPTION_HPP_
