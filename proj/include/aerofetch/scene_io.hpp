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

#ifndef AEROFETCH__SCENE_IO_HPP_
#define AEROFETCH__SCENE_IO_HPP_

#include "aerofetch/scene.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aerofetch
{

/// A scene file: the scene itself plus optional `config` overrides, kept
/// as dotted-key/value strings in key order.
struct SceneDocument
{
  Scene scene;
  std::vector<std::pair<std::string, std::string>> config;
};

/// Parses a scene document. Malformed JSON raises ConfigError with the
/// line and column; schema problems name the offending JSON path.
SceneDocument parse_scene_document(std::string_view text);

/// Reads and parses a scene file. Unreadable files raise ConfigError.
SceneDocument load_scene_file(const std::filesystem::path & path);

/// Serializes a scene in the same schema, pretty-printed.
std::string scene_to_json(const Scene & scene);

/// Checks the physical invariants of a scene and returns one message per
/// violation (empty when valid).
std::vector<std::string> validate_scene(const Scene & scene);

}  // namespace aerofetch

#endif  // AEROFETCH__SCENE_IO_HPP_
