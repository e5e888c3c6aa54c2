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

#include "aerofetch/perception.hpp"

#include <algorithm>

namespace aerofetch
{
namespace
{

// Depth never reported closer than this, whatever the noise draw.
constexpr double kMinReportedDepth = 0.05;
// Noisy centroids are kept at least this far inside the image border.
constexpr double kBorderInset = 0.5;

double gaussian(Rng & rng, double sigma)
{
  if (sigma <= 0.0) {
    return 0.0;
  }
  std::normal_distribution<double> dist(0.0, sigma);
  return dist(rng);
}

struct LocalPoint
{
  double forward;
  double left;
  double up;
};

}  // namespace

std::vector<Detection> synth_detections(
  const std::vector<SceneObject> & objects, const Pose & drone_pose, const CameraIntrinsics & intr,
  const RigidTransform & mount, const NoiseParams & noise, Rng & rng)
{
  std::vector<Detection> out;
  const double w = static_cast<double>(intr.width);
  const double h = static_cast<double>(intr.height);

  for (const auto & obj : objects) {
    const Vec3 p_cam = world_to_camera(object_centroid(obj), drone_pose, mount);
    if (!(p_cam.z > 0.0) || p_cam.z > noise.max_range) {
      continue;
    }
    const PixelDepth px = project(p_cam, intr);
    if (!intr.contains(px.u, px.v)) {
      continue;
    }

    double u = px.u + gaussian(rng, noise.sigma_px);
    double v = px.v + gaussian(rng, noise.sigma_px);
    const double depth = std::max(px.depth + gaussian(rng, noise.sigma_depth), kMinReportedDepth);
    double confidence = 1.0;
    if (noise.conf_lo < 1.0) {
      std::uniform_real_distribution<double> conf(noise.conf_lo, 1.0);
      confidence = conf(rng);
    }

    u = std::clamp(u, std::min(kBorderInset, px.u), std::max(w - kBorderInset, px.u));
    v = std::clamp(v, std::min(kBorderInset, px.v), std::max(h - kBorderInset, px.v));

    // Box half-size is the projected object radius, shrunk to stay inside the image.
    double half_u = intr.fx * obj.radius / p_cam.z;
    double half_v = intr.fy * obj.radius / p_cam.z;
    half_u = std::min({half_u, u, w - u});
    half_v = std::min({half_v, v, h - v});
    if (!(half_u > 0.0) || !(half_v > 0.0)) {
      continue;
    }

    Detection det;
    det.label = {obj.noun, obj.attributes};
    det.bbox = {u - half_u, v - half_v, u + half_u, v + half_v};
    det.confidence = confidence;
    det.centroid_depth = depth;
    out.push_back(std::move(det));
  }
  return out;
}

std::vector<Detection> synth_detections(
  const Scene & scene, const Pose & drone_pose, const CameraIntrinsics & intr,
  const RigidTransform & mount, const NoiseParams & noise, Rng & rng)
{
  return synth_detections(scene.objects, drone_pose, intr, mount, noise, rng);
}

Vec3 localize(
  const Detection & det, const Pose & drone_pose, const CameraIntrinsics & intr,
  const RigidTransform & mount)
{
  const Vec3 p_cam =
    deproject(det.bbox.center_u(), det.bbox.center_v(), det.centroid_depth, intr);
  return camera_to_world(p_cam, drone_pose, mount);
}

std::string_view landmark_name(Landmark lm)
{
  static constexpr std::string_view kNames[] = {
    "nose",         "left_eye_inner", "left_eye",        "left_eye_outer",  "right_eye_inner",
    "right_eye",    "right_eye_outer", "left_ear",       "right_ear",       "mouth_left",
    "mouth_right",  "left_shoulder",  "right_shoulder",  "left_elbow",      "right_elbow",
    "left_wrist",   "right_wrist",    "left_pinky",      "right_pinky",     "left_index",
    "right_index",  "left_thumb",     "right_thumb",     "left_hip",        "right_hip",
    "left_knee",    "right_knee",     "left_ankle",      "right_ankle",     "left_heel",
    "right_heel",   "left_foot_index", "right_foot_index"};
  const auto i = static_cast<std::size_t>(lm);
  return i < kLandmarkCount ? kNames[i] : std::string_view{"unknown"};
}

Landmark mirror_landmark(Landmark lm)
{
  switch (lm) {
    case Landmark::Nose:
      return lm;
    case Landmark::LeftEyeInner:
      return Landmark::RightEyeInner;
    case Landmark::LeftEye:
      return Landmark::RightEye;
    case Landmark::LeftEyeOuter:
      return Landmark::RightEyeOuter;
    case Landmark::RightEyeInner:
      return Landmark::LeftEyeInner;
    case Landmark::RightEye:
      return Landmark::LeftEye;
    case Landmark::RightEyeOuter:
      return Landmark::LeftEyeOuter;
    case Landmark::LeftEar:
      return Landmark::RightEar;
    case Landmark::RightEar:
      return Landmark::LeftEar;
    case Landmark::MouthLeft:
      return Landmark::MouthRight;
    case Landmark::MouthRight:
      return Landmark::MouthLeft;
    default:
      break;
  }
  // From the shoulders on, left and right alternate.
  const auto i = static_cast<std::size_t>(lm);
  const auto first = static_cast<std::size_t>(Landmark::LeftShoulder);
  if (i < first || i >= kLandmarkCount) {
    return lm;
  }
  return static_cast<Landmark>(((i - first) % 2 == 0) ? i + 1 : i - 1);
}

SkeletonLandmarks synth_skeleton(const HumanModel & human)
{
  const double hs = human.shoulder_height / 1.4;
  const double ws = human.shoulder_half_width / 0.2;
  const Vec3 fwd{std::cos(human.facing_yaw), std::sin(human.facing_yaw), 0.0};
  const Vec3 left{-std::sin(human.facing_yaw), std::cos(human.facing_yaw), 0.0};

  SkeletonLandmarks sk;
  auto place = [&](Landmark lm, LocalPoint p) {
    sk[lm] = human.center + fwd * (p.forward * hs) + left * (p.left * ws) +
             Vec3{0.0, 0.0, p.up * hs};
  };
  auto place_pair = [&](Landmark left_lm, LocalPoint p) {
    place(left_lm, p);
    place(mirror_landmark(left_lm), {p.forward, -p.left, p.up});
  };

  // Canonical standing skeleton for a 1.4 m shoulder height and 0.2 m
  // shoulder half width, given as (forward, left, up) for the left side.
  place(Landmark::Nose, {0.10, 0.0, 1.60});
  place_pair(Landmark::LeftEyeInner, {0.09, 0.015, 1.64});
  place_pair(Landmark::LeftEye, {0.09, 0.030, 1.64});
  place_pair(Landmark::LeftEyeOuter, {0.085, 0.045, 1.64});
  place_pair(Landmark::LeftEar, {0.0, 0.075, 1.62});
  place_pair(Landmark::MouthLeft, {0.09, 0.025, 1.56});
  place_pair(Landmark::LeftHip, {0.0, 0.10, 0.90});
  place_pair(Landmark::LeftKnee, {0.0, 0.10, 0.50});
  place_pair(Landmark::LeftAnkle, {0.0, 0.10, 0.08});
  place_pair(Landmark::LeftHeel, {-0.05, 0.10, 0.0});
  place_pair(Landmark::LeftFootIndex, {0.15, 0.10, 0.0});

  // Shoulders sit exactly at +-shoulder_half_width and shoulder_height.
  sk[Landmark::LeftShoulder] =
    human.center + left * human.shoulder_half_width + Vec3{0.0, 0.0, human.shoulder_height};
  sk[Landmark::RightShoulder] =
    human.center - left * human.shoulder_half_width + Vec3{0.0, 0.0, human.shoulder_height};

  const LocalPoint elbow{0.0, 0.22, 1.12};
  const LocalPoint wrist_rest{0.0, 0.22, 0.86};
  const LocalPoint wrist_reach{kReachExtension, 0.15, 1.10};
  place_pair(Landmark::LeftElbow, elbow);

  const bool right_reaches = human.preferred_hand == Hand::Right;
  const LocalPoint lw = right_reaches ? wrist_rest : wrist_reach;
  const LocalPoint rw = right_reaches ? wrist_reach : wrist_rest;
  place(Landmark::LeftWrist, lw);
  place(Landmark::RightWrist, {rw.forward, -rw.left, rw.up});

  // Finger landmarks hang below a resting wrist and point forward from a reaching one.
  auto fingers = [&](Landmark pinky, Landmark index, Landmark thumb, LocalPoint wr, double side) {
    const bool reaching = wr.forward > 0.0;
    const LocalPoint dp = reaching ? LocalPoint{0.08, 0.02, 0.0} : LocalPoint{-0.01, 0.02, -0.08};
    const LocalPoint di = reaching ? LocalPoint{0.09, 0.0, 0.0} : LocalPoint{0.01, 0.0, -0.09};
    const LocalPoint dt = reaching ? LocalPoint{0.06, -0.02, 0.01} : LocalPoint{0.02, -0.01, -0.06};
    place(pinky, {wr.forward + dp.forward, side * (wr.left + dp.left), wr.up + dp.up});
    place(index, {wr.forward + di.forward, side * (wr.left + di.left), wr.up + di.up});
    place(thumb, {wr.forward + dt.forward, side * (wr.left + dt.left), wr.up + dt.up});
  };
  fingers(Landmark::LeftPinky, Landmark::LeftIndex, Landmark::LeftThumb, lw, 1.0);
  fingers(Landmark::RightPinky, Landmark::RightIndex, Landmark::RightThumb, rw, -1.0);

  return sk;
}

Vec3 chest_point(const SkeletonLandmarks & sk)
{
  return (sk[Landmark::LeftShoulder] + sk[Landmark::RightShoulder]) * 0.5;
}

Vec3 estimate_human_center(const SkeletonLandmarks & sk)
{
  const Vec3 hips = (sk[Landmark::LeftHip] + sk[Landmark::RightHip]) * 0.5;
  const double ground = std::min(sk[Landmark::LeftHeel].z, sk[Landmark::RightHeel].z);
  return {hips.x, hips.y, ground};
}

}  // namespace aerofetch
