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

#include "aerofetch/scene_io.hpp"

#include "aerofetch/errors.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace aerofetch
{
namespace
{

using nlohmann::json;

constexpr double kSurfaceTol = 1e-6;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const json & field(const json & obj, const char * key, const std::string & path)
{
  if (!obj.is_object()) {
    throw ConfigError(fmt::format("{}: expected an object", path));
  }
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError(fmt::format("{}: missing field '{}'", path, key));
  }
  return *it;
}

double number(const json & obj, const char * key, const std::string & path)
{
  const json & v = field(obj, key, path);
  if (!v.is_number()) {
    throw ConfigError(fmt::format("{}.{}: expected a number", path, key));
  }
  return v.get<double>();
}

double number_or(const json & obj, const char * key, const std::string & path, double fallback)
{
  return obj.contains(key) ? number(obj, key, path) : fallback;
}

std::string text_field(const json & obj, const char * key, const std::string & path)
{
  const json & v = field(obj, key, path);
  if (!v.is_string()) {
    throw ConfigError(fmt::format("{}.{}: expected a string", path, key));
  }
  return v.get<std::string>();
}

std::vector<double> numbers(const json & obj, const char * key, const std::string & path, std::size_t n)
{
  const json & v = field(obj, key, path);
  if (!v.is_array() || v.size() != n) {
    throw ConfigError(fmt::format("{}.{}: expected an array of {} numbers", path, key, n));
  }
  std::vector<double> out;
  for (const auto & e : v) {
    if (!e.is_number()) {
      throw ConfigError(fmt::format("{}.{}: expected an array of {} numbers", path, key, n));
    }
    out.push_back(e.get<double>());
  }
  return out;
}

Vec3 vec3(const json & obj, const char * key, const std::string & path)
{
  const auto v = numbers(obj, key, path, 3);
  return {v[0], v[1], v[2]};
}

std::string config_value(const json & v, const std::string & key)
{
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_boolean()) {
    return v.get<bool>() ? "true" : "false";
  }
  if (v.is_number_integer()) {
    return std::to_string(v.get<long long>());
  }
  if (v.is_number()) {
    return fmt::format("{}", v.get<double>());
  }
  throw ConfigError(fmt::format("config.{}: expected a scalar value", key));
}

void flatten_config(
  const json & v, const std::string & prefix, std::vector<std::pair<std::string, std::string>> & out)
{
  if (v.is_object()) {
    for (const auto & [k, child] : v.items()) {
      flatten_config(child, prefix.empty() ? k : prefix + "." + k, out);
    }
    return;
  }
  out.emplace_back(prefix, config_value(v, prefix));
}

SceneDocument from_json(const json & doc)
{
  SceneDocument out;
  Scene & s = out.scene;

  const json & room = field(doc, "room", "$");
  s.room = {
    number(room, "x_min", "room"), number(room, "x_max", "room"), number(room, "y_min", "room"),
    number(room, "y_max", "room")};

  const json & table = field(doc, "table", "$");
  const auto tc = numbers(table, "center", "table", 2);
  const auto th = numbers(table, "half_extents", "table", 2);
  s.table.center = {tc[0], tc[1], 0.0};
  s.table.half_x = th[0];
  s.table.half_y = th[1];
  s.table.height = number(table, "height", "table");

  const json & objects = field(doc, "objects", "$");
  if (!objects.is_array()) {
    throw ConfigError("objects: expected an array");
  }
  for (std::size_t k = 0; k < objects.size(); ++k) {
    const std::string path = fmt::format("objects[{}]", k);
    const json & o = objects[k];
    SceneObject obj;
    obj.id = text_field(o, "id", path);
    obj.noun = text_field(o, "noun", path);
    if (o.contains("attributes")) {
      const json & attrs = o.at("attributes");
      if (!attrs.is_array()) {
        throw ConfigError(path + ".attributes: expected an array of strings");
      }
      for (const auto & a : attrs) {
        if (!a.is_string()) {
          throw ConfigError(path + ".attributes: expected an array of strings");
        }
        obj.attributes.insert(a.get<std::string>());
      }
    }
    obj.position = vec3(o, "position", path);
    obj.radius = number(o, "radius", path);
    s.objects.push_back(std::move(obj));
  }

  const json & human = field(doc, "human", "$");
  s.human.center = vec3(human, "center", "human");
  s.human.facing_yaw = number(human, "facing_yaw", "human");
  s.human.body_radius = number_or(human, "body_radius", "human", s.human.body_radius);
  s.human.shoulder_half_width =
    number_or(human, "shoulder_half_width", "human", s.human.shoulder_half_width);
  s.human.shoulder_height = number_or(human, "shoulder_height", "human", s.human.shoulder_height);
  if (human.contains("preferred_hand")) {
    const std::string hand = text_field(human, "preferred_hand", "human");
    if (hand == "left") {
      s.human.preferred_hand = Hand::Left;
    } else if (hand == "right") {
      s.human.preferred_hand = Hand::Right;
    } else {
      throw ConfigError("human.preferred_hand: expected \"left\" or \"right\"");
    }
  }

  const json & home = field(doc, "drone_home", "$");
  s.drone_home = Pose::make(vec3(home, "position", "drone_home"), number(home, "yaw", "drone_home"));

  if (doc.contains("config")) {
    const json & cfg = doc.at("config");
    if (!cfg.is_object()) {
      throw ConfigError("config: expected an object");
    }
    flatten_config(cfg, "", out.config);
  }
  return out;
}

}  // namespace

SceneDocument parse_scene_document(std::string_view text)
{
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error & e) {
    // e.byte is 1-based and points one past the offending character.
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = line_column(text, byte);
    throw ConfigError(fmt::format("malformed JSON at line {}, column {}", line, column));
  }
  if (!doc.is_object()) {
    throw ConfigError("$: expected a JSON object at the top level");
  }
  return from_json(doc);
}

SceneDocument load_scene_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(fmt::format("cannot read scene file '{}'", path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scene_document(buf.str());
  } catch (const ConfigError & e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string scene_to_json(const Scene & s)
{
  json doc;
  doc["room"] = {
    {"x_min", s.room.x_min}, {"x_max", s.room.x_max}, {"y_min", s.room.y_min},
    {"y_max", s.room.y_max}};
  doc["table"] = {
    {"center", {s.table.center.x, s.table.center.y}},
    {"half_extents", {s.table.half_x, s.table.half_y}},
    {"height", s.table.height}};
  json objects = json::array();
  for (const auto & o : s.objects) {
    objects.push_back(
      {{"id", o.id},
       {"noun", o.noun},
       {"attributes", std::vector<std::string>(o.attributes.begin(), o.attributes.end())},
       {"position", {o.position.x, o.position.y, o.position.z}},
       {"radius", o.radius}});
  }
  doc["objects"] = std::move(objects);
  doc["human"] = {
    {"center", {s.human.center.x, s.human.center.y, s.human.center.z}},
    {"facing_yaw", s.human.facing_yaw},
    {"body_radius", s.human.body_radius},
    {"shoulder_half_width", s.human.shoulder_half_width},
    {"shoulder_height", s.human.shoulder_height},
    {"preferred_hand", s.human.preferred_hand == Hand::Left ? "left" : "right"}};
  doc["drone_home"] = {
    {"position", {s.drone_home.position.x, s.drone_home.position.y, s.drone_home.position.z}},
    {"yaw", s.drone_home.yaw}};
  return doc.dump(2) + "\n";
}

std::vector<std::string> validate_scene(const Scene & s)
{
  std::vector<std::string> v;
  const RoomBounds & r = s.room;
  if (!(r.x_min < r.x_max) || !(r.y_min < r.y_max)) {
    v.push_back("room: bounds must satisfy x_min < x_max and y_min < y_max");
  }
  if (!(s.table.half_x > 0.0) || !(s.table.half_y > 0.0) || !(s.table.height > 0.0)) {
    v.push_back("table: half extents and height must be positive");
  }
  const Vec3 corner_lo{s.table.center.x - s.table.half_x, s.table.center.y - s.table.half_y, 0.0};
  const Vec3 corner_hi{s.table.center.x + s.table.half_x, s.table.center.y + s.table.half_y, 0.0};
  if (!r.contains_xy(corner_lo) || !r.contains_xy(corner_hi)) {
    v.push_back("table: footprint extends outside the room");
  }

  std::set<std::string> ids;
  for (const auto & o : s.objects) {
    if (o.id.empty()) {
      v.push_back("object with empty id");
    } else if (!ids.insert(o.id).second) {
      v.push_back(fmt::format("object '{}': duplicate id", o.id));
    }
    if (o.noun.empty()) {
      v.push_back(fmt::format("object '{}': empty noun", o.id));
    }
    if (!(o.radius > 0.0)) {
      v.push_back(fmt::format("object '{}': radius must be positive", o.id));
    }
    if (!o.position.finite()) {
      v.push_back(fmt::format("object '{}': position is not finite", o.id));
      continue;
    }
    if (!s.table.contains_xy(o.position)) {
      v.push_back(fmt::format(
        "object '{}': off the table at ({:.3f}, {:.3f})", o.id, o.position.x, o.position.y));
    } else if (std::abs(o.position.z - s.table.height) > kSurfaceTol) {
      v.push_back(fmt::format(
        "object '{}': not resting on the table surface (z = {:.3f}, table height {:.3f})", o.id,
        o.position.z, s.table.height));
    }
  }

  const HumanModel & h = s.human;
  if (!r.contains_xy(h.center)) {
    v.push_back("human: center outside the room");
  }
  if (!(h.body_radius > 0.0) || !(h.shoulder_half_width > 0.0) || !(h.shoulder_height > 0.0)) {
    v.push_back("human: body radius, shoulder half width and shoulder height must be positive");
  }
  if (!r.contains_xy(s.drone_home.position)) {
    v.push_back("drone_home: outside the room");
  }
  if (s.table.contains_xy(s.drone_home.position)) {
    v.push_back("drone_home: on the table footprint");
  }
  if (distance_xy(s.drone_home.position, h.center) < h.body_radius) {
    v.push_back("drone_home: inside the human body");
  }
  return v;
}

}  // namespace aerofetch
