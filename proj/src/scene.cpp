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

#include "aerofetch/scene.hpp"

#include <algorithm>
#include <array>

namespace aerofetch
{

const SceneObject * Scene::find_object(const std::string & id) const
{
  const auto it =
    std::find_if(objects.begin(), objects.end(), [&](const SceneObject & o) { return o.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

Scene default_lab_scene()
{
  Scene scene;
  scene.room = {-3.0, 3.0, -3.0, 3.0};
  scene.table = {{0.0, 0.0, 0.0}, 0.8, 0.4, 0.75};

  struct Entry
  {
    const char * id;
    const char * noun;
    std::set<std::string> attributes;
    double radius;
  };
  const std::array<Entry, 16> entries{{
    {"cup_red", "cup", {"red"}, 0.04},
    {"cup_blue", "cup", {"blue"}, 0.04},
    {"cup_white", "cup", {"white"}, 0.04},
    {"plant_green", "plant", {"green", "small"}, 0.06},
    {"screwdriver_red", "screwdriver", {"red"}, 0.03},
    {"screwdriver_yellow", "screwdriver", {"yellow"}, 0.03},
    {"wrench", "wrench", {"silver"}, 0.04},
    {"pliers", "pliers", {"blue"}, 0.04},
    {"bottle_green", "bottle", {"green"}, 0.04},
    {"bottle_clear", "bottle", {"clear"}, 0.04},
    {"book", "book", {"black"}, 0.06},
    {"apple", "apple", {"red"}, 0.04},
    {"banana", "banana", {"yellow"}, 0.04},
    {"marker", "marker", {"black"}, 0.03},
    {"tape", "tape", {"gray"}, 0.04},
    {"mug", "mug", {"black", "large"}, 0.05},
  }};

  constexpr std::array<double, 4> xs{-0.6, -0.2, 0.2, 0.6};
  constexpr std::array<double, 4> ys{-0.3, -0.1, 0.1, 0.3};
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto & e = entries[k];
    SceneObject obj;
    obj.id = e.id;
    obj.noun = e.noun;
    obj.attributes = e.attributes;
    obj.radius = e.radius;
    obj.position = {xs[k % 4], ys[k / 4], scene.table.height};
    scene.objects.push_back(std::move(obj));
  }

  scene.human.center = {0.0, 2.3, 0.0};
  scene.human.facing_yaw = -kPi / 2.0;
  scene.human.body_radius = 0.3;
  scene.human.shoulder_half_width = 0.2;
  scene.human.shoulder_height = 1.4;
  scene.human.preferred_hand = Hand::Right;

  scene.drone_home = Pose::make({-2.05, -2.15, 0.0}, kPi / 4.0);
  return scene;
}

}  // namespace aerofetch
