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

#ifndef AEROFETCH__BATCH_HPP_
#define AEROFETCH__BATCH_HPP_

#include "aerofetch/mission.hpp"

#include <cstdint>
#include <vector>

namespace aerofetch
{

struct TrialResult
{
  int trial{0};
  /// Seed of the mission's noise stream.
  std::uint64_t seed{0};
  Scene scene;
  MissionLog log;
  MetricsReport metrics;
};

/// Independent stream seed for one trial of a batch.
std::uint64_t trial_seed(std::uint64_t base_seed, int trial);

/// Re-samples every object uniformly on the table surface (inset by its
/// radius) with at least `min_gap` between object rims. Human and home are
/// untouched. Raises ConfigError when the objects cannot be placed.
Scene randomize_objects(const Scene & scene, Rng & rng, double min_gap = 0.1);

/// Scene for one trial: the base scene for single runs, otherwise a
/// seeded random arrangement.
Scene trial_scene(const Scene & base, std::uint64_t base_seed, int trial, int trials);

/// Runs `trials` missions. Trial k uses trial_scene() and trial_seed().
std::vector<TrialResult> run_batch(
  const Scene & base, const TaskQueue & queue, const MissionParams & params,
  std::uint64_t base_seed, int trials);

}  // namespace aerofetch

#endif  // AEROFETCH__BATCH_HPP_
