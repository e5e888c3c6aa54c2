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

#include "aerofetch/geometry.hpp"

#include "aerofetch/errors.hpp"

#include <fmt/format.h>

namespace aerofetch
{

double normalize_angle(double angle)
{
  // remainder() is exact, so values already in range come back unchanged.
  double a = std::remainder(angle, 2.0 * kPi);
  if (a <= -kPi) {
    a += 2.0 * kPi;
  }
  return a;
}

Vec3 rotate_z(const Vec3 & v, double yaw)
{
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

bool CameraIntrinsics::valid() const
{
  return fx > 0.0 && fy > 0.0 && width > 0 && height > 0 && cx >= 0.0 && cx < width &&
         cy >= 0.0 && cy < height;
}

bool CameraIntrinsics::contains(double u, double v) const
{
  return u >= 0.0 && u < static_cast<double>(width) && v >= 0.0 && v < static_cast<double>(height);
}

Vec3 RigidTransform::apply(const Vec3 & p) const { return rotate_z(p, yaw) + translation; }

RigidTransform RigidTransform::inverse() const
{
  return {-yaw, -rotate_z(translation, -yaw)};
}

RigidTransform RigidTransform::compose(const RigidTransform & other) const
{
  return {yaw + other.yaw, rotate_z(other.translation, yaw) + translation};
}

Vec3 optical_to_body(const Vec3 & p) { return {p.z, -p.x, -p.y}; }

Vec3 body_to_optical(const Vec3 & p) { return {-p.y, -p.z, p.x}; }

Vec3 deproject(double u, double v, double depth, const CameraIntrinsics & intr)
{
  if (!(depth > 0.0)) {
    throw InvalidDepthError(fmt::format("depth must be positive, got {}", depth));
  }
  if (!intr.contains(u, v)) {
    throw OutOfBoundsError(
      fmt::format("pixel ({}, {}) outside {}x{} image", u, v, intr.width, intr.height));
  }
  return {(u - intr.cx) * depth / intr.fx, (v - intr.cy) * depth / intr.fy, depth};
}

PixelDepth project(const Vec3 & p, const CameraIntrinsics & intr)
{
  if (!(p.z > 0.0)) {
    throw BehindCameraError(fmt::format("point z={} is not in front of the camera", p.z));
  }
  return {intr.fx * p.x / p.z + intr.cx, intr.fy * p.y / p.z + intr.cy, p.z};
}

Vec3 camera_to_world(const Vec3 & p_camera, const Pose & drone_pose, const RigidTransform & mount)
{
  const Vec3 p_body = mount.apply(optical_to_body(p_camera));
  return RigidTransform::from_pose(drone_pose).apply(p_body);
}

Vec3 world_to_camera(const Vec3 & p_world, const Pose & drone_pose, const RigidTransform & mount)
{
  const Vec3 p_body = RigidTransform::from_pose(drone_pose).inverse().apply(p_world);
  return body_to_optical(mount.inverse().apply(p_body));
}

Vec3 world_to_body(const Vec3 & p_world, const Pose & drone_pose)
{
  return RigidTransform::from_pose(drone_pose).inverse().apply(p_world);
}

}  // namespace aerofetch
