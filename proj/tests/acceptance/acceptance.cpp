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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes. Checks use the oracles in tests/oracles and
// recompute quantities from raw logs rather than trusting library metrics.

#include "aerofetch/batch.hpp"
#include "aerofetch/cli.hpp"
#include "aerofetch/errors.hpp"
#include "aerofetch/geometry.hpp"
#include "aerofetch/handover.hpp"
#include "aerofetch/mission.hpp"
#include "aerofetch/perception.hpp"
#include "aerofetch/planner.hpp"
#include "aerofetch/scene.hpp"
#include "aerofetch/task_grammar.hpp"
#include "oracles/grid_oracles.hpp"

#include <fmt/format.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace
{

using namespace aerofetch;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kBatchSeed = 7;
constexpr int kBatchTrials = 10;
const char * const kBatchPrompt = "pick up the red cup";

struct Verdict
{
  bool pass{false};
  std::string detail;
};

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- shared batch ---------------------------------------------------------

struct Batch
{
  std::vector<TrialResult> results;
  double wall_seconds{0.0};
};

const Batch & default_batch()
{
  static const Batch batch = [] {
    Batch b;
    const Scene scene = default_lab_scene();
    const TaskQueue q = parse_prompt(kBatchPrompt, Vocabulary::from_scene(scene));
    const auto t0 = Clock::now();
    b.results = run_batch(scene, q, MissionParams{}, kBatchSeed, kBatchTrials);
    b.wall_seconds = seconds_since(t0);
    return b;
  }();
  return batch;
}

// ---- independent geometry helpers ----------------------------------------

double point_segment_distance(const Vec3 & p, const Vec3 & a, const Vec3 & b)
{
  const Vec3 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + ab * t);
}

double point_polyline_distance(const Vec3 & p, const std::vector<Vec3> & poly)
{
  if (poly.size() == 1) {
    return distance(p, poly.front());
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < poly.size(); ++k) {
    best = std::min(best, point_segment_distance(p, poly[k - 1], poly[k]));
  }
  return best;
}

// ---- criteria --------------------------------------------------------------

Verdict astar_matches_dijkstra()
{
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> coord(0, 19);
  int solvable = 0;
  int mismatches = 0;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    const OccupancyGrid g = oracles::random_grid(20, 20, 0.25, rng);
    Cell s;
    Cell t;
    do {
      s = {coord(rng), coord(rng)};
    } while (!g.free(s));
    do {
      t = {coord(rng), coord(rng)};
    } while (!g.free(t));
    const auto expected = oracles::dijkstra(g, s, t);
    try {
      const GridPath p = astar(g, s, t);
      if (!expected || oracles::ExactCost{p.axial_moves, p.diagonal_moves}.compare(*expected) != 0) {
        ++mismatches;
      }
      ++solvable;
    } catch (const NoPathError &) {
      mismatches += expected ? 1 : 0;
    }
  }
  const double secs = seconds_since(t0);
  return {
    mismatches == 0 && secs < 5.0,
    fmt::format(
      "200 grids, {} solvable, {} cost mismatches, {:.3f} s (limit 5 s)", solvable, mismatches,
      secs)};
}

Verdict human_clearance()
{
  double worst = std::numeric_limits<double>::infinity();
  int failing = 0;
  for (const auto & r : default_batch().results) {
    const Vec3 & h = r.scene.human.center;
    double trial_min = std::numeric_limits<double>::infinity();
    // Densify the flown path between consecutive navigation ticks, starting
    // from the pose just before each leg's first tick.
    for (std::size_t k = 1; k < r.log.ticks.size(); ++k) {
      if (r.log.ticks[k].leg < 0) {
        continue;
      }
      Vec3 a = r.log.ticks[k - 1].pose.position;
      Vec3 b = r.log.ticks[k].pose.position;
      a.z = b.z = h.z;
      for (int s = 0; s <= 20; ++s) {
        const Vec3 p = a + (b - a) * (s / 20.0);
        trial_min = std::min(trial_min, distance(p, h));
      }
    }
    failing += trial_min >= 1.0 ? 0 : 1;
    worst = std::min(worst, trial_min);
  }
  return {
    failing == 0 && std::isfinite(worst),
    fmt::format("{} trials, min navigation clearance {:.3f} m (need >= 1.0)", kBatchTrials, worst)};
}

Verdict handover_geometry()
{
  int checked = 0;
  int bad = 0;
  double d_lo = 1e9;
  double d_hi = -1e9;
  double z_lo = 1e9;
  double z_hi = -1e9;
  for (const auto & r : default_batch().results) {
    if (!r.log.outcome.success) {
      continue;
    }
    const HumanModel & h = r.scene.human;
    const Vec3 facing{std::cos(h.facing_yaw), std::sin(h.facing_yaw), 0.0};
    for (const auto & t : r.log.tasks) {
      if (!t.handover) {
        ++bad;
        continue;
      }
      ++checked;
      const Vec3 p = t.handover->pose.position;
      const double d = std::hypot(p.x - h.center.x, p.y - h.center.y);
      d_lo = std::min(d_lo, d);
      d_hi = std::max(d_hi, d);
      z_lo = std::min(z_lo, p.z);
      z_hi = std::max(z_hi, p.z);
      const bool frontal = dot(p - h.center, facing) > 0.0;
      if (d < 0.6 || d > 0.8 || p.z < 1.0 || p.z > 1.3 || !frontal) {
        ++bad;
      }
    }
  }
  return {
    bad == 0 && checked > 0,
    fmt::format(
      "{} handovers, distance [{:.3f}, {:.3f}] m, height [{:.3f}, {:.3f}] m, {} outside range or "
      "behind the person",
      checked, d_lo, d_hi, z_lo, z_hi, bad)};
}

Verdict trajectory_error_bounds()
{
  std::vector<double> dev;
  double lib_max = 0.0;
  for (const auto & r : default_batch().results) {
    for (const auto & tick : r.log.ticks) {
      if (tick.leg < 0) {
        continue;
      }
      const LegRecord & leg = r.log.legs[static_cast<std::size_t>(tick.leg)];
      std::vector<Vec3> ref;
      for (const auto & w : leg.reference.waypoints) {
        ref.push_back({w.x, w.y, leg.altitude});
      }
      dev.push_back(point_polyline_distance(tick.pose.position, ref));
    }
    lib_max = std::max(lib_max, r.metrics.aggregate.max);
  }
  double max = 0.0;
  double sum = 0.0;
  double sq = 0.0;
  for (const double d : dev) {
    max = std::max(max, d);
    sum += d;
    sq += d * d;
  }
  const double n = static_cast<double>(dev.size());
  const double mean = dev.empty() ? 0.0 : sum / n;
  const double rmse = dev.empty() ? 0.0 : std::sqrt(sq / n);

  // Synthetic case: unit segment, achieved path offset 0.05 m sideways.
  const std::vector<Vec3> ref{{0.0, 0.0, 1.0}, {1.0, 0.0, 1.0}};
  std::vector<Vec3> got;
  for (int k = 0; k <= 20; ++k) {
    got.push_back({k / 20.0, 0.05, 1.0});
  }
  const ErrorStats syn = trajectory_errors(ref, got);
  const bool synthetic_ok = std::abs(syn.max - 0.05) < 1e-12 && std::abs(syn.mean - 0.05) < 1e-12 &&
                            std::abs(syn.rmse - 0.05) < 1e-12;
  const bool agrees = std::abs(lib_max - max) < 1e-9;
  return {
    !dev.empty() && max <= 0.20 && mean <= 0.10 && rmse <= 0.15 && synthetic_ok && agrees,
    fmt::format(
      "{} samples: max {:.4f} (<= 0.20), mean {:.4f} (<= 0.10), RMSE {:.4f} (<= 0.15); "
      "offset segment {:.6f}/{:.6f}/{:.6f}; library agrees: {}",
      dev.size(), max, mean, rmse, syn.max, syn.mean, syn.rmse, agrees ? "yes" : "no")};
}

Verdict mission_success()
{
  const Batch & b = default_batch();
  int completed = 0;
  int sequence_ok = 0;
  for (const auto & r : b.results) {
    completed += r.log.final_state == MissionState::Completed && r.log.outcome.success ? 1 : 0;
    const auto & ev = r.log.gripper_events;
    const bool ok = ev.size() == 2 && ev[0].action == GripperAction::Close &&
                    ev[0].where == "object" && ev[1].action == GripperAction::Open &&
                    ev[1].where == "human" && ev[0].object_id.has_value();
    sequence_ok += ok ? 1 : 0;
  }
  return {
    completed == kBatchTrials && sequence_ok == kBatchTrials && b.wall_seconds < 30.0,
    fmt::format(
      "{}/{} Completed, {}/{} with [Close@object, Open@human], batch wall time {:.2f} s (limit 30 s)",
      completed, kBatchTrials, sequence_ok, kBatchTrials, b.wall_seconds)};
}

Verdict perception_round_trip()
{
  const Scene scene = default_lab_scene();
  const CameraIntrinsics intr;
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> ux(-2.8, 2.8);
  std::uniform_real_distribution<double> uz(0.9, 2.0);
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);
  std::uniform_real_distribution<double> mount_yaw(-0.2, 0.2);
  std::uniform_real_distribution<double> mount_off(-0.1, 0.1);
  double worst_loc = 0.0;
  int localized = 0;
  for (int k = 0; k < 200; ++k) {
    const Vec3 pos{ux(rng), ux(rng), uz(rng)};
    const Vec3 d = scene.table.center - pos;
    const Pose pose = Pose::make(pos, std::atan2(d.y, d.x) + jitter(rng));
    const RigidTransform mount{mount_yaw(rng), {0.1 + mount_off(rng), mount_off(rng), mount_off(rng)}};
    Rng noise_rng(static_cast<std::uint64_t>(k));
    for (const auto & det :
         synth_detections(scene, pose, intr, mount, NoiseParams::zero(), noise_rng)) {
      // Match the detection back to its object by label.
      const auto it = std::find_if(scene.objects.begin(), scene.objects.end(), [&](auto & o) {
        return o.noun == det.label.noun && o.attributes == det.label.attributes;
      });
      if (it == scene.objects.end()) {
        return {false, "detection with no matching scene object"};
      }
      worst_loc = std::max(worst_loc, distance(localize(det, pose, intr, mount), object_centroid(*it)));
      ++localized;
    }
  }

  double worst_px = 0.0;
  double worst_pt = 0.0;
  std::uniform_real_distribution<double> uu(0.0, intr.width);
  std::uniform_real_distribution<double> uv(0.0, intr.height);
  std::uniform_real_distribution<double> ud(0.1, 6.0);
  for (int k = 0; k < 1000; ++k) {
    const double u = uu(rng);
    const double v = uv(rng);
    const double z = ud(rng);
    const PixelDepth back = project(deproject(u, v, z, intr), intr);
    worst_px = std::max({worst_px, std::abs(back.u - u), std::abs(back.v - v), std::abs(back.depth - z)});
    // A point inside the viewing frustum.
    const double pz = ud(rng);
    const Vec3 p{
      (uu(rng) - intr.cx) * pz / intr.fx, (uv(rng) - intr.cy) * pz / intr.fy, pz};
    const PixelDepth pd = project(p, intr);
    worst_pt = std::max(worst_pt, distance(deproject(pd.u, pd.v, pd.depth, intr), p));
  }
  return {
    localized > 0 && worst_loc < 1e-6 && worst_px < 1e-9 && worst_pt < 1e-9,
    fmt::format(
      "{} zero-noise localizations, max error {:.2e} m (< 1e-6); 1000 points, "
      "deproject->project {:.2e}, project->deproject {:.2e} (< 1e-9)",
      localized, worst_loc, worst_px, worst_pt)};
}

Verdict orientation_equivariance()
{
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> ua(-kPi, kPi);
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  const Vec3 center{uc(rng), uc(rng), 0.0};
  const Vec3 left{0.05, 0.2, 1.4};
  const Vec3 right{-0.05, -0.2, 1.4};
  auto yaw_of = [&](double phi) {
    SkeletonLandmarks sk;
    sk[Landmark::LeftShoulder] = center + rotate_z(left, phi);
    sk[Landmark::RightShoulder] = center + rotate_z(right, phi);
    return estimate_orientation(sk).yaw;
  };
  const double base = yaw_of(0.0);
  double worst_shift = 0.0;
  double worst_facing = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double phi = ua(rng);
    worst_shift = std::max(worst_shift, std::abs(normalize_angle(yaw_of(phi) - base - phi)));
    HumanModel h;
    h.center = {uc(rng), uc(rng), 0.0};
    h.facing_yaw = ua(rng);
    const double est = estimate_orientation(synth_skeleton(h)).facing_yaw;
    worst_facing = std::max(worst_facing, std::abs(normalize_angle(est - h.facing_yaw)));
  }
  return {
    worst_shift <= 1e-9 && worst_facing <= 1e-9,
    fmt::format(
      "100 rotations, max yaw shift error {:.2e} rad; facing recovery error {:.2e} rad (<= 1e-9)",
      worst_shift, worst_facing)};
}

struct GeneratedCommand
{
  std::string text;
  ObjectDescriptor expected;
};

Verdict grammar_totality()
{
  const Scene scene = default_lab_scene();
  const Vocabulary vocab = Vocabulary::from_scene(scene);
  const std::vector<std::string> nouns(vocab.nouns.begin(), vocab.nouns.end());
  const std::vector<std::string> adjectives(vocab.adjectives.begin(), vocab.adjectives.end());
  const std::vector<std::string> verbs{"pick up", "bring", "fetch", "grab", "get", "bring me", ""};
  const std::vector<std::string> articles{"the ", "a ", ""};
  const std::vector<std::string> deliveries{"", " to me", " and bring it to me", " and give it to me"};
  const std::vector<std::string> joiners{" then ", " and then ", ", then ", ". Then "};

  std::mt19937_64 rng(808);
  auto pick = [&](const std::vector<std::string> & v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  auto make_command = [&]() {
    GeneratedCommand c;
    const std::string verb = pick(verbs);
    std::string text = verb.empty() ? "" : verb + " ";
    text += pick(articles);
    const int n_adj = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int k = 0; k < n_adj; ++k) {
      const std::string a = pick(adjectives);
      text += a + " ";
      if (std::find(c.expected.attributes.begin(), c.expected.attributes.end(), a) ==
          c.expected.attributes.end()) {
        c.expected.attributes.push_back(a);
      }
    }
    c.expected.noun = pick(nouns);
    text += c.expected.noun + pick(deliveries);
    c.text = text;
    return c;
  };

  auto make_prompt = [&](std::vector<ObjectDescriptor> & expected) {
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    std::string prompt = coin(0.2) ? "Please " : "";
    for (int k = 0; k < n; ++k) {
      GeneratedCommand c = make_command();
      if (k > 0) {
        prompt += pick(joiners);
      }
      prompt += c.text;
      expected.push_back(c.expected);
    }
    if (coin(0.3)) {
      prompt += coin(0.5) ? "." : "!";
    }
    if (coin(0.3)) {
      std::transform(prompt.begin(), prompt.end(), prompt.begin(), [&](char ch) {
        return coin(0.5) ? static_cast<char>(std::toupper(static_cast<unsigned char>(ch))) : ch;
      });
    }
    return prompt;
  };

  int valid_ok = 0;
  std::string first_valid_failure;
  std::vector<std::string> valid_prompts;
  for (int k = 0; k < 500; ++k) {
    std::vector<ObjectDescriptor> expected;
    const std::string prompt = make_prompt(expected);
    valid_prompts.push_back(prompt);
    try {
      const TaskQueue q = parse_prompt(prompt, vocab);
      bool ok = q.size() == expected.size();
      for (std::size_t i = 0; ok && i < q.size(); ++i) {
        ok = q[i].priority == static_cast<int>(i) && q[i].descriptor == expected[i];
      }
      valid_ok += ok ? 1 : 0;
      if (!ok && first_valid_failure.empty()) {
        first_valid_failure = prompt;
      }
    } catch (const std::exception & e) {
      if (first_valid_failure.empty()) {
        first_valid_failure = prompt + " (" + e.what() + ")";
      }
    }
  }

  // Mutations that each break the grammar.
  const std::vector<std::string> junk{"unicorn", "gizmo", "xyzzy", "zorb"};
  auto replace_word = [](std::string s, const std::string & from, const std::string & to) {
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) {
      return static_cast<char>(std::tolower(ch));
    });
    for (std::size_t pos = lower.rfind(from); pos != std::string::npos;
         pos = pos > 0 ? lower.rfind(from, pos - 1) : std::string::npos) {
      const bool left = pos == 0 || !std::isalnum(static_cast<unsigned char>(lower[pos - 1]));
      const std::size_t end = pos + from.size();
      const bool right = end >= lower.size() || !std::isalnum(static_cast<unsigned char>(lower[end]));
      if (left && right) {
        return s.replace(pos, from.size(), to);
      }
      if (pos == 0) {
        break;
      }
    }
    return s;
  };
  const std::vector<std::function<std::string(const std::string &)>> mutations{
    [&](const std::string & p) {
      std::string out = p;
      for (const auto & n : nouns) {
        const std::string m = replace_word(out, n, pick(junk));
        if (m != out) {
          return m;
        }
      }
      return out + " " + pick(junk);
    },
    [&](const std::string & p) { return p + " then"; },
    [&](const std::string & p) { return p + " and then"; },
    [&](const std::string & p) { return pick(junk) + " " + p; },
    [&](const std::string & p) { return p + " to"; },
    [&](const std::string & p) { return p + " and bring it"; },
    [&](const std::string & p) { return "pick " + p; },
    [&](const std::string & p) { return p + " " + pick(adjectives); },
    [&](const std::string &) { return std::string(coin(0.5) ? "" : " ,.!? "); },
    [&](const std::string & p) { return p + " " + pick(nouns) + " " + pick(nouns); },
  };

  int invalid_ok = 0;
  std::string first_invalid_failure;
  for (int k = 0; k < 100; ++k) {
    const std::string base = valid_prompts[static_cast<std::size_t>(k)];
    const std::string prompt = mutations[static_cast<std::size_t>(k) % mutations.size()](base);
    try {
      parse_prompt(prompt, vocab);
      if (first_invalid_failure.empty()) {
        first_invalid_failure = "accepted: " + prompt;
      }
    } catch (const ParseError & e) {
      invalid_ok += e.position() <= prompt.size() ? 1 : 0;
    } catch (const UnknownObjectError & e) {
      invalid_ok += e.position() <= prompt.size() ? 1 : 0;
    } catch (const std::exception & e) {
      if (first_invalid_failure.empty()) {
        first_invalid_failure = "untyped error for: " + prompt + " (" + e.what() + ")";
      }
    }
  }

  std::string detail = fmt::format(
    "{}/500 valid prompts parsed in order, {}/100 mutated prompts rejected with typed errors",
    valid_ok, invalid_ok);
  if (!first_valid_failure.empty()) {
    detail += "; first valid failure: " + first_valid_failure;
  }
  if (!first_invalid_failure.empty()) {
    detail += "; first invalid failure: " + first_invalid_failure;
  }
  return {valid_ok == 500 && invalid_ok == 100, detail};
}

std::string read_file(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict batch_determinism()
{
  const fs::path root =
    fs::temp_directory_path() / ("aerofetch_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  std::vector<fs::path> dirs{root / "first", root / "second"};
  for (const auto & d : dirs) {
    const std::string dir = d.string();
    const char * argv[] = {"aerofetch", "run", "--trials", "10", "--seed", "7", "--out-dir", dir.c_str()};
    std::ostringstream out;
    std::ostringstream err;
    if (run_cli(8, argv, out, err) != kExitOk) {
      fs::remove_all(root);
      return {false, "run failed: " + err.str()};
    }
  }
  std::vector<std::string> names;
  for (const auto & e : fs::directory_iterator(dirs[0])) {
    names.push_back(e.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  int same = 0;
  int json = 0;
  int csv = 0;
  int svg = 0;
  for (const auto & n : names) {
    const fs::path other = dirs[1] / n;
    if (fs::exists(other) && read_file(dirs[0] / n) == read_file(other)) {
      ++same;
    }
    const std::string ext = fs::path(n).extension().string();
    json += ext == ".json" ? 1 : 0;
    csv += ext == ".csv" ? 1 : 0;
    svg += ext == ".svg" ? 1 : 0;
  }
  const auto count_second = std::distance(fs::directory_iterator(dirs[1]), fs::directory_iterator{});
  fs::remove_all(root);
  const bool pass = same == static_cast<int>(names.size()) &&
                    count_second == static_cast<long>(names.size()) && json == 10 && svg == 10 &&
                    csv == 11;
  return {
    pass, fmt::format(
            "{}/{} files byte-identical ({} reports, {} CSVs, {} SVGs)", same, names.size(), json,
            csv, svg)};
}

Verdict smoothing_safety()
{
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> ux(-2.9, 2.9);
  std::uniform_real_distribution<double> ur(0.1, 0.5);
  const RoomBounds room{-3.0, 3.0, -3.0, 3.0};
  const PlannerParams params;
  int legs = 0;
  int unsafe = 0;
  int moved_ends = 0;
  int longer = 0;
  int attempts = 0;
  while (legs < 100 && attempts < 10000) {
    ++attempts;
    std::vector<CircularObstacle> circles{{{ux(rng), ux(rng)}, 0.3 + params.safety_margin}};
    for (int k = 0; k < 4; ++k) {
      circles.push_back({{ux(rng), ux(rng)}, ur(rng) + params.drone_radius});
    }
    const double tx = ux(rng);
    const double ty = ux(rng);
    const std::vector<Rect> rects{Rect{tx - 0.8, tx + 0.8, ty - 0.4, ty + 0.4}.inflated(params.drone_radius)};
    const OccupancyGrid g = rasterize(room, params.resolution, circles, rects);
    PlannedPath raw;
    PlannedPath smoothed;
    try {
      smoothed = plan_leg(g, {ux(rng), ux(rng)}, {ux(rng), ux(rng)}, &raw);
    } catch (const NoPathError &) {
      continue;
    }
    ++legs;
    if (!oracles::dense_path_free(g, smoothed.waypoints, params.resolution / 10.0)) {
      ++unsafe;
    }
    if (!(smoothed.waypoints.front() == raw.waypoints.front()) ||
        !(smoothed.waypoints.back() == raw.waypoints.back())) {
      ++moved_ends;
    }
    if (oracles::polyline_length(smoothed.waypoints) > oracles::polyline_length(raw.waypoints) + 1e-12) {
      ++longer;
    }
  }
  return {
    legs == 100 && unsafe == 0 && moved_ends == 0 && longer == 0,
    fmt::format(
      "{} legs: {} with a collision under dense sampling, {} with moved endpoints, {} longer "
      "than raw",
      legs, unsafe, moved_ends, longer)};
}

}  // namespace

int main()
{
  struct Criterion
  {
    int id;
    const char * name;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria{
    {1, "A* oracle equivalence", astar_matches_dijkstra},
    {2, "Human clearance", human_clearance},
    {3, "Handover geometry", handover_geometry},
    {4, "Trajectory-error metrics", trajectory_error_bounds},
    {5, "Mission success protocol", mission_success},
    {6, "Perception round-trip", perception_round_trip},
    {7, "Orientation equivariance", orientation_equivariance},
    {8, "Grammar totality", grammar_totality},
    {9, "Determinism", batch_determinism},
    {10, "Smoothing safety", smoothing_safety},
  };
  int failures = 0;
  for (const auto & c : criteria) {
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception & e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    fmt::print("{} [{:2}] {}: {}\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
