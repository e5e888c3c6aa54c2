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

#ifndef AEROFETCH__TASK_GRAMMAR_HPP_
#define AEROFETCH__TASK_GRAMMAR_HPP_

#include "aerofetch/geometry.hpp"
#include "aerofetch/perception.hpp"
#include "aerofetch/scene.hpp"

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aerofetch
{

struct ObjectDescriptor
{
  std::string noun;
  /// Kept in the order written in the prompt, without duplicates.
  std::vector<std::string> attributes;

  bool operator==(const ObjectDescriptor &) const = default;
};

enum class TaskAction { FetchAndDeliver };

struct Task
{
  TaskAction action{TaskAction::FetchAndDeliver};
  ObjectDescriptor descriptor;
  int priority{0};

  bool operator==(const Task &) const = default;
};

/// Tasks sorted by ascending priority, priorities 0..n-1.
using TaskQueue = std::vector<Task>;

struct Vocabulary
{
  std::set<std::string> nouns;
  std::set<std::string> adjectives;

  static Vocabulary from_scene(const Scene & scene);
};

/// Grammar (case-insensitive, punctuation ignored):
///
///   prompt    = command { ("then" | "and" "then") command }
///   command   = [ verb ] { adjective } noun [ delivery ]
///   verb      = "pick" "up" | "bring" | "fetch" | "grab" | "get"
///   delivery  = "and" ("bring" | "give") "it" "to" "me" | "to" "me"
///
/// "the", "a", "an" and "please" are skipped wherever they appear.
///
/// Throws ParseError (with byte position) or UnknownObjectError.
TaskQueue parse_prompt(std::string_view text, const Vocabulary & vocabulary);

struct GroundedTarget
{
  Vec3 world{};
  Detection detection;
};

bool label_matches(const ObjectDescriptor & descriptor, const DetectionLabel & label);

/// Highest-confidence matching detection; ties go to the one nearest the
/// drone, then to the earliest in the list. Throws ObjectNotFoundError.
GroundedTarget ground_task(
  const Task & task, std::span<const LocalizedDetection> detections, const Vec3 & drone_position);

std::string describe(const ObjectDescriptor & descriptor);

}  // namespace aerofetch

#endif  // AEROFETCH__TASK_GRAMMAR_HPP_
