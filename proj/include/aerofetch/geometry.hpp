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

#ifndef AEROFETCH__GEOMETRY_HPP_
#define AEROFETCH__GEOMETRY_HPP_

#include <cmath>
#include <numbers>

namespace aerofetch
{

inline constexpr double kPi = std::numbers::pi;

struct Vec3
{
  double x{0.0};
  double y{0.0};
  double z{0.0};

  constexpr Vec3 operator+(const Vec3 & o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3 & o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3 & operator+=(const Vec3 & o)
  {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr bool operator==(const Vec3 &) const = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double norm_xy() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline constexpr Vec3 operator*(double s, const Vec3 & v) { return v * s; }
inline constexpr double dot(const Vec3 & a, const Vec3 & b)
{
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double distance(const Vec3 & a, const Vec3 & b) { return (a - b).norm(); }
inline double distance_xy(const Vec3 & a, const Vec3 & b) { return (a - b).norm_xy(); }

/// Wraps any finite angle into (-pi, pi]. Idempotent.
double normalize_angle(double angle);

/// Rotates v about +Z by `yaw` radians.
Vec3 rotate_z(const Vec3 & v, double yaw);

/// Position plus heading. Yaw is kept normalized by the constructor helper.
struct Pose
{
  Vec3 position{};
  double yaw{0.0};

  static Pose make(const Vec3 & position, double yaw) { return {position, normalize_angle(yaw)}; }
  bool operator==(const Pose &) const = default;
};

/// Pinhole intrinsics. Pixel coordinates are continuous, origin at the
/// top-left image corner.
struct CameraIntrinsics
{
  double fx{600.0};
  double fy{600.0};
  double cx{320.0};
  double cy{240.0};
  int width{640};
  int height{480};

  bool valid() const;
  bool contains(double u, double v) const;
};

struct PixelDepth
{
  double u{0.0};
  double v{0.0};
  double depth{0.0};
};

/// Yaw-only rigid transform: p' = Rz(yaw) * p + translation.
///
/// The drone body pose and the camera mount offset are both of this form;
/// the fixed optical-to-body axis permutation is applied separately by
/// camera_to_world / world_to_camera.
struct RigidTransform
{
  double yaw{0.0};
  Vec3 translation{};

  static RigidTransform identity() { return {}; }
  static RigidTransform from_pose(const Pose & pose) { return {pose.yaw, pose.position}; }

  Vec3 apply(const Vec3 & p) const;
  RigidTransform inverse() const;
  /// (this * other)(p) == this->apply(other.apply(p))
  RigidTransform compose(const RigidTransform & other) const;
};

/// Optical frame (x right, y down, z forward) to body frame (x forward,
/// y left, z up).
Vec3 optical_to_body(const Vec3 & p_optical);
Vec3 body_to_optical(const Vec3 & p_body);

/// Pixel + plane depth to a point in the optical frame.
/// Throws InvalidDepthError for depth <= 0 and OutOfBoundsError outside the image.
Vec3 deproject(double u, double v, double depth, const CameraIntrinsics & intr);

/// Optical-frame point to pixel + plane depth. Throws BehindCameraError for z <= 0.
/// The returned pixel may lie outside the image.
PixelDepth project(const Vec3 & p_camera, const CameraIntrinsics & intr);

/// Mount is the camera pose expressed in the body frame.
Vec3 camera_to_world(const Vec3 & p_camera, const Pose & drone_pose, const RigidTransform & mount);
Vec3 world_to_camera(const Vec3 & p_world, const Pose & drone_pose, const RigidTransform & mount);

/// World point to body frame of the drone (no camera mount involved).
Vec3 world_to_body(const Vec3 & p_world, const Pose & drone_pose);

}  // namespace aerofetch

#endif  // AEROFETCH__GEOMETRY_HPP_
