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

#include "aerofetch/report.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace aerofetch
{
namespace
{

using ojson = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr double kPxPerMetre = 100.0;
constexpr double kPad = 20.0;

/// Times accumulate dt in floating point; round for readable reports.
double r6(double t) { return std::round(t * 1e6) / 1e6; }

ojson vec_json(const Vec3 & v) { return ojson::array({v.x, v.y, v.z}); }

ojson stats_json(const ErrorStats & s)
{
  return {{"max", s.max}, {"mean", s.mean}, {"rmse", s.rmse}, {"samples", s.samples}};
}

std::string_view action_name(GripperAction a) { return a == GripperAction::Open ? "open" : "close"; }

class Canvas
{
public:
  explicit Canvas(const RoomBounds & room) : room_(room) {}

  double x(double wx) const { return kPad + (wx - room_.x_min) * kPxPerMetre; }
  double y(double wy) const { return kPad + (room_.y_max - wy) * kPxPerMetre; }
  double len(double m) const { return m * kPxPerMetre; }
  double width() const { return 2.0 * kPad + (room_.x_max - room_.x_min) * kPxPerMetre; }
  double height() const { return 2.0 * kPad + (room_.y_max - room_.y_min) * kPxPerMetre; }

  void open(std::string & out) const
  {
    out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      width(), height(), width(), height());
    out += fmt::format(
      "<rect x=\"0\" y=\"0\" width=\"{:.0f}\" height=\"{:.0f}\" fill=\"white\"/>\n", width(),
      height());
    out += fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
      "stroke=\"black\" stroke-width=\"2\"/>\n",
      x(room_.x_min), y(room_.y_max), len(room_.x_max - room_.x_min),
      len(room_.y_max - room_.y_min));
  }

  void circle(
    std::string & out, double wx, double wy, double r, std::string_view style) const
  {
    out += fmt::format(
      "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" {}/>\n", x(wx), y(wy), len(r), style);
  }

  void rect(
    std::string & out, double x0, double y0, double x1, double y1, std::string_view style) const
  {
    out += fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" {}/>\n", x(x0), y(y1),
      len(x1 - x0), len(y1 - y0), style);
  }

  template <typename Range, typename Proj>
  void polyline(std::string & out, const Range & pts, Proj proj, std::string_view style) const
  {
    out += "<polyline points=\"";
    bool first = true;
    for (const auto & p : pts) {
      const auto [wx, wy] = proj(p);
      out += fmt::format("{}{:.2f},{:.2f}", first ? "" : " ", x(wx), y(wy));
      first = false;
    }
    out += fmt::format("\" fill=\"none\" {}/>\n", style);
  }

  void text(std::string & out, double wx, double wy, std::string_view s) const
  {
    out += fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
      x(wx), y(wy), s);
  }

private:
  RoomBounds room_;
};

void draw_scene(
  std::string & out, const Canvas & c, const Scene & scene, double planning_radius)
{
  const Table & t = scene.table;
  c.rect(
    out, t.center.x - t.half_x, t.center.y - t.half_y, t.center.x + t.half_x,
    t.center.y + t.half_y, "fill=\"#d9c7a7\" stroke=\"#8c6d46\"");
  for (const auto & o : scene.objects) {
    c.circle(out, o.position.x, o.position.y, o.radius, "fill=\"#555555\"");
  }
  const HumanModel & h = scene.human;
  c.circle(out, h.center.x, h.center.y, h.body_radius, "fill=\"#f4a582\" stroke=\"#b2182b\"");
  c.circle(
    out, h.center.x, h.center.y, planning_radius,
    "fill=\"none\" stroke=\"#b2182b\" stroke-dasharray=\"6,4\"");
  c.circle(
    out, h.center.x, h.center.y, 1.0, "fill=\"none\" stroke=\"#b2182b\" stroke-dasharray=\"2,3\"");
  const Vec3 face = h.center + Vec3{std::cos(h.facing_yaw), std::sin(h.facing_yaw), 0.0} * 0.4;
  const std::vector<Vec3> arrow{h.center, face};
  c.polyline(
    out, arrow, [](const Vec3 & p) { return std::pair{p.x, p.y}; },
    "stroke=\"#b2182b\" stroke-width=\"2\"");
  const Pose & home = scene.drone_home;
  c.rect(
    out, home.position.x - 0.1, home.position.y - 0.1, home.position.x + 0.1,
    home.position.y + 0.1, "fill=\"none\" stroke=\"#333333\"");
  c.text(out, home.position.x + 0.15, home.position.y - 0.05, "home");
}

std::string_view leg_colour(LegKind k)
{
  switch (k) {
    case LegKind::HomeToObject:
      return "#1f77b4";
    case LegKind::ObjectToHuman:
      return "#2ca02c";
    case LegKind::HumanToHome:
      return "#9467bd";
  }
  return "#000000";
}

}  // namespace

std::vector<std::string> report_keys()
{
  return {"schema_version", "trial",  "seed", "prompt",      "outcome",        "metrics",
          "tasks",          "objects", "legs", "transitions", "gripper_events", "events"};
}

std::string report_json(
  const TrialResult & trial, const std::string & prompt, const MissionParams & params)
{
  const MissionLog & log = trial.log;
  const MetricsReport & m = trial.metrics;
  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  doc["trial"] = trial.trial;
  doc["seed"] = trial.seed;
  doc["prompt"] = prompt;
  doc["outcome"] = {
    {"success", log.outcome.success},
    {"failure_mode", log.outcome.failure_mode},
    {"final_state", to_string(log.final_state)},
    {"duration", r6(m.duration)}};

  ojson legs = ojson::array();
  for (const auto & l : m.legs) {
    legs.push_back(
      {{"task", l.task},
       {"kind", to_string(l.kind)},
       {"error", stats_json(l.error)},
       {"min_human_clearance", l.min_clearance}});
  }
  doc["metrics"] = {
    {"error", stats_json(m.aggregate)},
    {"min_human_clearance", m.min_human_clearance},
    {"gripper_sequence_ok", m.gripper_sequence_ok},
    {"legs", std::move(legs)}};

  ojson tasks = ojson::array();
  for (const auto & t : log.tasks) {
    ojson task{{"priority", t.priority}, {"descriptor", t.descriptor}};
    task["grounded"] = t.grounded ? vec_json(*t.grounded) : ojson(nullptr);
    if (t.handover) {
      const Vec3 & p = t.handover->pose.position;
      task["handover"] = {
        {"position", vec_json(p)},
        {"yaw", t.handover->pose.yaw},
        {"side", to_string(t.handover->side)},
        {"mode", to_string(params.handover.mode)},
        {"distance_to_human", distance_xy(p, log.human_center)},
        {"height", p.z}};
    } else {
      task["handover"] = nullptr;
    }
    task["picked_object"] = t.picked_object ? ojson(*t.picked_object) : ojson(nullptr);
    task["delivered"] = t.delivered;
    tasks.push_back(std::move(task));
  }
  doc["tasks"] = std::move(tasks);

  ojson objects = ojson::array();
  for (const auto & o : trial.scene.objects) {
    objects.push_back({{"id", o.id}, {"position", vec_json(o.position)}});
  }
  doc["objects"] = std::move(objects);

  ojson plan = ojson::array();
  for (const auto & l : log.legs) {
    ojson wps = ojson::array();
    for (const auto & w : l.reference.waypoints) {
      wps.push_back(ojson::array({w.x, w.y}));
    }
    plan.push_back(
      {{"task", l.task},
       {"kind", to_string(l.kind)},
       {"altitude", l.altitude},
       {"cost", l.reference.cost},
       {"raw_cost", l.raw.cost},
       {"raw_waypoints", l.raw.waypoints.size()},
       {"waypoints", std::move(wps)}});
  }
  doc["legs"] = std::move(plan);

  ojson transitions = ojson::array();
  for (const auto & tr : log.transitions) {
    transitions.push_back(
      {{"t", r6(tr.t)},
       {"from", to_string(tr.from)},
       {"to", to_string(tr.to)},
       {"reason", tr.reason}});
  }
  doc["transitions"] = std::move(transitions);

  ojson gripper = ojson::array();
  for (const auto & g : log.gripper_events) {
    gripper.push_back(
      {{"t", r6(g.t)},
       {"task", g.task},
       {"action", action_name(g.action)},
       {"where", g.where},
       {"object", g.object_id ? ojson(*g.object_id) : ojson(nullptr)}});
  }
  doc["gripper_events"] = std::move(gripper);

  ojson events = ojson::array();
  for (const auto & e : log.events) {
    events.push_back(
      {{"t", r6(e.t)}, {"kind", e.kind}, {"state", to_string(e.state)}, {"detail", e.detail}});
  }
  doc["events"] = std::move(events);
  return doc.dump(2) + "\n";
}

std::string trajectory_csv(const MissionLog & log)
{
  std::string out = "t,x,y,z,yaw,state,gripper\n";
  out.reserve(out.size() + log.ticks.size() * 64);
  for (const auto & t : log.ticks) {
    const Vec3 & p = t.pose.position;
    out += fmt::format(
      "{:.2f},{:.4f},{:.4f},{:.4f},{:.4f},{},{}\n", t.t, p.x, p.y, p.z, t.pose.yaw,
      to_string(t.state), to_string(t.gripper));
  }
  return out;
}

std::string mission_svg(const Scene & scene, const MissionLog & log, const MissionParams & params)
{
  const Canvas c(scene.room);
  std::string out;
  c.open(out);
  draw_scene(out, c, scene, scene.human.body_radius + params.planner.safety_margin);

  for (const auto & leg : log.legs) {
    c.polyline(
      out, leg.reference.waypoints, [](const Point2 & p) { return std::pair{p.x, p.y}; },
      fmt::format("stroke=\"{}\" stroke-width=\"2\"", leg_colour(leg.kind)));
  }
  std::vector<Vec3> flown;
  flown.reserve(log.ticks.size() + 1);
  for (std::size_t k = 0; k < log.ticks.size(); k += 5) {
    flown.push_back(log.ticks[k].pose.position);
  }
  if (!log.ticks.empty()) {
    flown.push_back(log.ticks.back().pose.position);
  }
  c.polyline(
    out, flown, [](const Vec3 & p) { return std::pair{p.x, p.y}; },
    "stroke=\"#d62728\" stroke-width=\"1\"");
  for (const auto & t : log.tasks) {
    if (t.handover) {
      const Vec3 & p = t.handover->pose.position;
      c.circle(out, p.x, p.y, 0.05, "fill=\"#2ca02c\"");
    }
    if (t.grounded) {
      c.circle(out, t.grounded->x, t.grounded->y, 0.05, "fill=\"none\" stroke=\"#1f77b4\"");
    }
  }
  out += "</svg>\n";
  return out;
}

std::string aggregate_csv(std::span<const TrialResult> trials)
{
  std::string out =
    "trial,seed,success,failure_mode,duration,max_error,mean_error,rmse,samples,"
    "min_human_clearance,gripper_sequence_ok\n";
  std::vector<MetricsReport> reports;
  int successes = 0;
  bool all_gripper_ok = true;
  double total = 0.0;
  double clearance = std::numeric_limits<double>::infinity();
  for (const auto & t : trials) {
    const MetricsReport & m = t.metrics;
    out += fmt::format(
      "{},{},{},{},{:.2f},{:.6f},{:.6f},{:.6f},{},{:.6f},{}\n", t.trial, t.seed,
      t.log.outcome.success ? "true" : "false", t.log.outcome.failure_mode, m.duration,
      m.aggregate.max, m.aggregate.mean, m.aggregate.rmse, m.aggregate.samples,
      m.min_human_clearance, m.gripper_sequence_ok ? "true" : "false");
    reports.push_back(m);
    successes += t.log.outcome.success ? 1 : 0;
    all_gripper_ok = all_gripper_ok && m.gripper_sequence_ok;
    total += m.duration;
    if (!std::isnan(m.min_human_clearance)) {
      clearance = std::min(clearance, m.min_human_clearance);
    }
  }
  const ErrorStats pooled = pool_errors(reports);
  out += fmt::format(
    "aggregate,,{}/{},,{:.2f},{:.6f},{:.6f},{:.6f},{},{:.6f},{}\n", successes, trials.size(),
    total, pooled.max, pooled.mean, pooled.rmse, pooled.samples, clearance,
    all_gripper_ok ? "true" : "false");
  return out;
}

std::string waypoints_csv(const PlannedPath & path)
{
  std::string out = "index,x,y\n";
  for (std::size_t k = 0; k < path.waypoints.size(); ++k) {
    out += fmt::format("{},{:.4f},{:.4f}\n", k, path.waypoints[k].x, path.waypoints[k].y);
  }
  return out;
}

std::string grid_pgm(const OccupancyGrid & grid)
{
  std::string out = fmt::format(
    "P2\n# resolution {} m, origin ({}, {})\n{} {}\n255\n", grid.resolution(),
    grid.bounds().x_min, grid.bounds().y_min, grid.width(), grid.height());
  for (int j = grid.height() - 1; j >= 0; --j) {
    for (int i = 0; i < grid.width(); ++i) {
      out += grid.occupied({i, j}) ? "0" : "255";
      out += i + 1 < grid.width() ? " " : "\n";
    }
  }
  return out;
}

std::string plan_svg(
  const Scene & scene, const OccupancyGrid & grid, const PlannedPath & raw,
  const PlannedPath & smoothed, const MissionParams & params)
{
  const Canvas c(scene.room);
  std::string out;
  c.open(out);
  const double h = 0.5 * grid.resolution();
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      if (grid.occupied({i, j})) {
        const Point2 p = grid.cell_center({i, j});
        c.rect(out, p.x - h, p.y - h, p.x + h, p.y + h, "fill=\"#dddddd\"");
      }
    }
  }
  draw_scene(out, c, scene, scene.human.body_radius + params.planner.safety_margin);
  auto xy = [](const Point2 & p) { return std::pair{p.x, p.y}; };
  c.polyline(out, raw.waypoints, xy, "stroke=\"#999999\" stroke-width=\"1\"");
  c.polyline(out, smoothed.waypoints, xy, "stroke=\"#1f77b4\" stroke-width=\"2\"");
  for (const auto & w : smoothed.waypoints) {
    c.circle(out, w.x, w.y, 0.04, "fill=\"#1f77b4\"");
  }
  out += "</svg>\n";
  return out;
}

}  // namespace aerofetch
