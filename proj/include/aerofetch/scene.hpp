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

#ifndef AEROFETCH__SCENE_HPP_
#define AEROFETCH__SCENE_HPP_

#include "aerofetch/geometry.hpp"

#include <set>
#include <string>
#include <vector>

namespace aerofetch
{

enum class Hand { Left, Right };

struct SceneObject
{
  std::string id;
  std::string noun;
  std::set<std::string> attributes;
  /// Resting point on the table surface (z = table height).
  Vec3 position{};
  double radius{0.04};
};

/// Visual centroid of an object: its resting point raised by its radius.
/// This is what perception localizes and what the gripper closes on.
inline Vec3 object_centroid(const SceneObject & obj)
{
  return obj.position + Vec3{0.0, 0.0, obj.radius};
}

struct HumanModel
{
  /// Ground projection of the body axis.
  Vec3 center{};
  double facing_yaw{0.0};
  double body_radius{0.3};
  double shoulder_half_width{0.2};
  double shoulder_height{1.4};
  Hand preferred_hand{Hand::Right};
};

struct RoomBounds
{
  double x_min{-3.0};
  double x_max{3.0};
  double y_min{-3.0};
  double y_max{3.0};

  bool contains_xy(const Vec3 & p) const
  {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
};

struct Table
{
  /// Only x and y are used; the surface sits at `height`.
  Vec3 center{};
  double half_x{0.8};
  double half_y{0.4};
  double height{0.75};

  bool contains_xy(const Vec3 & p) const
  {
    return std::abs(p.x - center.x) <= half_x && std::abs(p.y - center.y) <= half_y;
  }
};

struct Scene
{
  RoomBounds room{};
  Table table{};
  std::vector<SceneObject> objects;
  HumanModel human{};
  Pose drone_home{};

  const SceneObject * find_object(const std::string & id) const;
};

/// The 6 m x 6 m lab: central table with sixteen objects, a human standing
/// about 2 m from the table facing it, and the drone parked in a corner.
Scene default_lab_scene();

}  // namespace aerofetch

#endif  // AEROFETCH__SCENE_HPP_
