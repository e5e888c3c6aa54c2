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

#include "aerofetch/batch.hpp"

#include "aerofetch/errors.hpp"

#include <fmt/format.h>

#include <array>
#include <random>

namespace aerofetch
{
namespace
{

constexpr int kPlacementAttempts = 10000;

std::seed_seq make_seq(std::uint64_t seed, int trial, std::uint32_t stream)
{
  return std::seed_seq{
    static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
    static_cast<std::uint32_t>(trial), stream};
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base_seed, int trial)
{
  auto seq = make_seq(base_seed, trial, 1);
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Scene randomize_objects(const Scene & scene, Rng & rng, double min_gap)
{
  Scene out = scene;
  const Table & t = scene.table;
  std::vector<SceneObject> placed;
  for (SceneObject obj : scene.objects) {
    const double hx = t.half_x - obj.radius;
    const double hy = t.half_y - obj.radius;
    if (hx < 0.0 || hy < 0.0) {
      throw ConfigError(fmt::format("object '{}' is wider than the table", obj.id));
    }
    std::uniform_real_distribution<double> ux(t.center.x - hx, t.center.x + hx);
    std::uniform_real_distribution<double> uy(t.center.y - hy, t.center.y + hy);
    bool ok = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !ok; ++attempt) {
      obj.position = {ux(rng), uy(rng), t.height};
      ok = true;
      for (const auto & other : placed) {
        if (distance_xy(obj.position, other.position) < obj.radius + other.radius + min_gap) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) {
      throw ConfigError(fmt::format("cannot place object '{}' on the table", obj.id));
    }
    placed.push_back(obj);
  }
  out.objects = std::move(placed);
  return out;
}

Scene trial_scene(const Scene & base, std::uint64_t base_seed, int trial, int trials)
{
  if (trials <= 1) {
    return base;
  }
  auto seq = make_seq(base_seed, trial, 2);
  Rng rng(seq);
  return randomize_objects(base, rng);
}

std::vector<TrialResult> run_batch(
  const Scene & base, const TaskQueue & queue, const MissionParams & params,
  std::uint64_t base_seed, int trials)
{
  if (trials < 1) {
    throw InvalidParameterError(fmt::format("trials must be at least 1, got {}", trials));
  }
  std::vector<TrialResult> results;
  results.reserve(static_cast<std::size_t>(trials));
  for (int k = 0; k < trials; ++k) {
    TrialResult r;
    r.trial = k;
    r.seed = trial_seed(base_seed, k);
    r.scene = trial_scene(base, base_seed, k, trials);
    MissionParams p = params;
    p.mission.seed = r.seed;
    r.log = run_mission(r.scene, queue, p);
    r.metrics = compute_metrics(r.log);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace aerofetch
