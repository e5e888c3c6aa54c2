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

#include "aerofetch/cli.hpp"

#include "aerofetch/batch.hpp"
#include "aerofetch/config.hpp"
#include "aerofetch/errors.hpp"
#include "aerofetch/report.hpp"
#include "aerofetch/scene_io.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <charconv>
#include <filesystem>
#include <fstream>

namespace aerofetch
{
namespace
{

namespace fs = std::filesystem;

struct Setup
{
  Scene scene;
  MissionParams params;
};

Setup load_setup(
  const std::optional<std::string> & scene_path, const std::optional<std::string> & handover_mode,
  const std::vector<std::string> & overrides)
{
  Setup s;
  if (scene_path) {
    SceneDocument doc = load_scene_file(*scene_path);
    s.scene = std::move(doc.scene);
    for (const auto & [k, v] : doc.config) {
      apply_override(s.params, k, v);
    }
  } else {
    s.scene = default_lab_scene();
  }
  if (const auto v = validate_scene(s.scene); !v.empty()) {
    std::string msg = "invalid scene:";
    for (const auto & e : v) {
      msg += "\n  " + e;
    }
    throw ConfigError(msg);
  }
  if (handover_mode) {
    apply_override(s.params, "handover.mode", *handover_mode);
  }
  for (const auto & o : overrides) {
    apply_assignment(s.params, o);
  }
  if (const auto v = validate_params(s.params); !v.empty()) {
    std::string msg = "invalid parameters:";
    for (const auto & e : v) {
      msg += "\n  " + e;
    }
    throw ConfigError(msg);
  }
  return s;
}

void write_file(const fs::path & path, const std::string & content)
{
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  }
  f << content;
  if (!f) {
    throw ConfigError(fmt::format("failed writing '{}'", path.string()));
  }
}

fs::path prepare_out_dir(const std::string & dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError(fmt::format("cannot create output directory '{}'", dir));
  }
  return fs::path(dir);
}

void print_prompt_error(
  std::ostream & err, const std::string & prompt, const std::string & what, std::size_t position)
{
  err << "error: " << what << "\n  " << prompt << "\n  "
      << std::string(std::min(position, prompt.size()), ' ') << "^\n";
}

double parse_coordinate(const std::string & text, const std::string & endpoint)
{
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(fmt::format("bad coordinate in endpoint '{}'", endpoint));
  }
  return v;
}

Point2 resolve_endpoint(const std::string & e, const Scene & scene, const MissionParams & p)
{
  if (e == "home") {
    return {scene.drone_home.position.x, scene.drone_home.position.y};
  }
  if (e == "human") {
    const SkeletonLandmarks sk = synth_skeleton(scene.human);
    const HumanOrientation o = estimate_orientation(sk);
    const HandoverPose h =
      handover_pose(estimate_human_center(sk), o, p.handover, estimate_hand_side(sk, o));
    return {h.pose.position.x, h.pose.position.y};
  }
  if (e.starts_with("object:")) {
    const std::string id = e.substr(7);
    const SceneObject * obj = scene.find_object(id);
    if (obj == nullptr) {
      throw ConfigError(fmt::format("no object with id '{}' in the scene", id));
    }
    return {obj->position.x, obj->position.y};
  }
  if (e.starts_with("xy:")) {
    const std::string rest = e.substr(3);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) {
      throw ConfigError(fmt::format("endpoint '{}' must look like xy:<x>,<y>", e));
    }
    return {parse_coordinate(rest.substr(0, comma), e), parse_coordinate(rest.substr(comma + 1), e)};
  }
  throw ConfigError(
    fmt::format("unknown endpoint '{}' (expected home, human, object:<id> or xy:<x>,<y>)", e));
}

}  // namespace

int cmd_run(const RunSpec & request, std::ostream & out, std::ostream & err)
{
  try {
    if (request.trials < 1) {
      throw ConfigError(fmt::format("--trials must be at least 1, got {}", request.trials));
    }
    const Setup setup = load_setup(request.scene_path, request.handover_mode, request.overrides);

    TaskQueue queue;
    try {
      queue = parse_prompt(request.prompt, Vocabulary::from_scene(setup.scene));
    } catch (const UnknownObjectError & e) {
      print_prompt_error(err, request.prompt, e.what(), e.position());
      return kExitPrompt;
    } catch (const ParseError & e) {
      print_prompt_error(err, request.prompt, e.what(), e.position());
      return kExitPrompt;
    }

    const fs::path dir = prepare_out_dir(request.out_dir);
    const auto results = run_batch(setup.scene, queue, setup.params, request.seed, request.trials);
    for (const auto & r : results) {
      const std::string stem = fmt::format("trial_{:03d}", r.trial);
      write_file(dir / (stem + ".json"), report_json(r, request.prompt, setup.params));
      write_file(dir / (stem + "_trajectory.csv"), trajectory_csv(r.log));
      write_file(dir / (stem + ".svg"), mission_svg(r.scene, r.log, setup.params));
      out << fmt::format(
        "trial {:3d}: {:<9} {:7.2f} s  max {:.3f}  mean {:.3f}  rmse {:.3f}  clearance {:.3f}{}\n",
        r.trial, to_string(r.log.final_state), r.metrics.duration, r.metrics.aggregate.max,
        r.metrics.aggregate.mean, r.metrics.aggregate.rmse, r.metrics.min_human_clearance,
        r.log.outcome.success ? "" : "  (" + r.log.outcome.failure_mode + ")");
    }
    if (request.trials > 1) {
      write_file(dir / "aggregate_metrics.csv", aggregate_csv(results));
    }
    return kExitOk;
  } catch (const ConfigError & e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error & e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int cmd_plan(const PlanSpec & request, std::ostream & out, std::ostream & err)
{
  try {
    const Setup setup = load_setup(request.scene_path, std::nullopt, request.overrides);
    const Point2 from = resolve_endpoint(request.from, setup.scene, setup.params);
    const Point2 to = resolve_endpoint(request.to, setup.scene, setup.params);
    const OccupancyGrid grid = build_grid(
      planning_world(setup.scene, setup.params.planner, setup.scene.human.center),
      setup.params.planner);

    PlannedPath raw;
    PlannedPath path;
    try {
      path = plan_leg(grid, from, to, &raw);
    } catch (const NoPathError & e) {
      err << "error: no path: " << e.what() << "\n";
      return kExitPlanning;
    } catch (const InvalidEndpointError & e) {
      err << "error: no path: " << e.what() << "\n";
      return kExitPlanning;
    } catch (const NoFreeCellError & e) {
      err << "error: no path: " << e.what() << "\n";
      return kExitPlanning;
    }

    const fs::path dir = prepare_out_dir(request.out_dir);
    write_file(dir / "plan_waypoints.csv", waypoints_csv(path));
    write_file(dir / "plan_grid.pgm", grid_pgm(grid));
    write_file(dir / "plan.svg", plan_svg(setup.scene, grid, raw, path, setup.params));
    out << fmt::format(
      "{} -> {}: {} waypoints ({} raw), length {:.3f} m\n", request.from, request.to,
      path.waypoints.size(), raw.waypoints.size(), path.length());
    return kExitOk;
  } catch (const ConfigError & e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error & e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int cmd_validate(const std::string & scene_path, std::ostream & out, std::ostream & err)
{
  SceneDocument doc;
  try {
    doc = load_scene_file(scene_path);
  } catch (const ConfigError & e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::vector<std::string> violations = validate_scene(doc.scene);
  MissionParams params;
  for (const auto & [k, v] : doc.config) {
    try {
      apply_override(params, k, v);
    } catch (const ConfigError & e) {
      violations.push_back(fmt::format("config: {}", e.what()));
    }
  }
  for (const auto & v : validate_params(params)) {
    violations.push_back("config: " + v);
  }
  if (violations.empty()) {
    out << "OK\n";
    return kExitOk;
  }
  for (const auto & v : violations) {
    err << "violation: " << v << "\n";
  }
  return kExitConfig;
}

int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Language-commanded aerial fetch-and-handover simulator", "aerofetch"};
  app.require_subcommand(1);

  RunSpec run;
  std::string run_scene;
  std::string run_mode;
  auto * run_cmd = app.add_subcommand("run", "Run a mission or a randomized batch");
  run_cmd->add_option("--scene", run_scene, "Scene JSON (default: built-in lab)")
    ->envname("AEROFETCH_SCENE");
  run_cmd->add_option("--prompt", run.prompt, "Task prompt")
    ->envname("AEROFETCH_PROMPT")
    ->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Base random seed")
    ->envname("AEROFETCH_SEED")
    ->capture_default_str();
  run_cmd->add_option("--trials", run.trials, "Number of trials")
    ->envname("AEROFETCH_TRIALS")
    ->capture_default_str();
  run_cmd->add_option("--out-dir", run.out_dir, "Output directory")
    ->envname("AEROFETCH_OUT_DIR")
    ->capture_default_str();
  run_cmd->add_option("--handover-mode", run_mode, "facing | shoulder-line")
    ->envname("AEROFETCH_HANDOVER_MODE");
  run_cmd->add_option("--set", run.overrides, "Parameter override key=value (repeatable)");

  PlanSpec plan;
  std::string plan_scene;
  auto * plan_cmd = app.add_subcommand("plan", "Plan one leg without flying it");
  plan_cmd->add_option("--scene", plan_scene, "Scene JSON (default: built-in lab)")
    ->envname("AEROFETCH_SCENE");
  plan_cmd->add_option("--from", plan.from, "home | human | object:<id> | xy:<x>,<y>")
    ->capture_default_str();
  plan_cmd->add_option("--to", plan.to, "home | human | object:<id> | xy:<x>,<y>")
    ->capture_default_str();
  plan_cmd->add_option("--out-dir", plan.out_dir, "Output directory")
    ->envname("AEROFETCH_OUT_DIR")
    ->capture_default_str();
  plan_cmd->add_option("--set", plan.overrides, "Parameter override key=value (repeatable)");

  std::string validate_scene_path;
  auto * validate_cmd = app.add_subcommand("validate", "Check a scene file");
  validate_cmd->add_option("scene", validate_scene_path, "Scene JSON")->required();

  auto * keys_cmd = app.add_subcommand("keys", "List parameter keys accepted by --set");
  auto * scene_cmd = app.add_subcommand("scene", "Print the built-in lab scene as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (run_cmd->parsed()) {
    if (!run_scene.empty()) {
      run.scene_path = run_scene;
    }
    if (!run_mode.empty()) {
      run.handover_mode = run_mode;
    }
    return cmd_run(run, out, err);
  }
  if (plan_cmd->parsed()) {
    if (!plan_scene.empty()) {
      plan.scene_path = plan_scene;
    }
    return cmd_plan(plan, out, err);
  }
  if (validate_cmd->parsed()) {
    return cmd_validate(validate_scene_path, out, err);
  }
  if (keys_cmd->parsed()) {
    for (const auto & k : config_keys()) {
      out << k << "\n";
    }
  }
  if (scene_cmd->parsed()) {
    out << scene_to_json(default_lab_scene());
  }
  return kExitOk;
}

}  // namespace aerofetch
