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

#include "aerofetch/planner.hpp"

#include "aerofetch/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <tuple>

namespace aerofetch
{
namespace
{

constexpr double kSqrt2 = std::numbers::sqrt2;
// Occupied squares are grown by this much in the segment test so that
// exact corner contacts are never lost to rounding.
constexpr double kContactEps = 1e-9;

struct Move
{
  int di;
  int dj;
};

constexpr Move kMoves[8] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

bool segment_hits_box(
  const Point2 & a, const Point2 & b, double x0, double x1, double y0, double y1)
{
  double t0 = 0.0;
  double t1 = 1.0;
  const double d[2] = {b.x - a.x, b.y - a.y};
  const double p[2] = {a.x, a.y};
  const double lo[2] = {x0, y0};
  const double hi[2] = {x1, y1};
  for (int k = 0; k < 2; ++k) {
    if (d[k] == 0.0) {
      if (p[k] < lo[k] || p[k] > hi[k]) {
        return false;
      }
      continue;
    }
    double ta = (lo[k] - p[k]) / d[k];
    double tb = (hi[k] - p[k]) / d[k];
    if (ta > tb) {
      std::swap(ta, tb);
    }
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) {
      return false;
    }
  }
  return true;
}

}  // namespace

OccupancyGrid::OccupancyGrid(const RoomBounds & bounds, double resolution)
: bounds_(bounds), resolution_(resolution)
{
  if (!(resolution > 0.0)) {
    throw InvalidParameterError(fmt::format("grid resolution must be positive, got {}", resolution));
  }
  if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min)) {
    throw InvalidParameterError("grid bounds are degenerate");
  }
  // The small slack keeps 6.0 / 0.1 from rounding up to 61 cells.
  width_ = static_cast<int>(std::ceil((bounds.x_max - bounds.x_min) / resolution - 1e-9));
  height_ = static_cast<int>(std::ceil((bounds.y_max - bounds.y_min) / resolution - 1e-9));
  cells_.assign(static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_), 0);
}

std::size_t OccupancyGrid::occupied_count() const
{
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

Point2 OccupancyGrid::cell_center(const Cell & c) const
{
  return {
    bounds_.x_min + (static_cast<double>(c.i) + 0.5) * resolution_,
    bounds_.y_min + (static_cast<double>(c.j) + 0.5) * resolution_};
}

Cell OccupancyGrid::world_to_cell(const Point2 & p) const
{
  const int i = static_cast<int>(std::floor((p.x - bounds_.x_min) / resolution_));
  const int j = static_cast<int>(std::floor((p.y - bounds_.y_min) / resolution_));
  return {std::clamp(i, 0, width_ - 1), std::clamp(j, 0, height_ - 1)};
}

double PlannedPath::length() const
{
  double len = 0.0;
  for (std::size_t k = 1; k < waypoints.size(); ++k) {
    len += distance(waypoints[k - 1], waypoints[k]);
  }
  return len;
}

double GridPath::cost() const { return axial_moves + diagonal_moves * kSqrt2; }

OccupancyGrid rasterize(
  const RoomBounds & bounds, double resolution, std::span<const CircularObstacle> circles,
  std::span<const Rect> rects)
{
  OccupancyGrid grid(bounds, resolution);

  auto mark_box = [&](double x0, double x1, double y0, double y1, auto && inside) {
    if (x1 < bounds.x_min || x0 > bounds.x_max || y1 < bounds.y_min || y0 > bounds.y_max) {
      return;
    }
    const Cell lo = grid.world_to_cell({x0, y0});
    const Cell hi = grid.world_to_cell({x1, y1});
    for (int j = lo.j; j <= hi.j; ++j) {
      for (int i = lo.i; i <= hi.i; ++i) {
        if (inside(grid.cell_center({i, j}))) {
          grid.set_occupied({i, j}, true);
        }
      }
    }
  };

  for (const auto & c : circles) {
    mark_box(
      c.center.x - c.radius, c.center.x + c.radius, c.center.y - c.radius, c.center.y + c.radius,
      [&](const Point2 & p) { return std::hypot(p.x - c.center.x, p.y - c.center.y) < c.radius; });
  }
  for (const auto & r : rects) {
    mark_box(r.x_min, r.x_max, r.y_min, r.y_max, [&](const Point2 & p) {
      return r.contains_strict(p);
    });
  }
  return grid;
}

GridPath astar(const OccupancyGrid & grid, const Cell & start, const Cell & goal)
{
  if (!grid.free(start)) {
    throw InvalidEndpointError(fmt::format("start cell ({}, {}) is not free", start.i, start.j));
  }
  if (!grid.free(goal)) {
    throw InvalidEndpointError(fmt::format("goal cell ({}, {}) is not free", goal.i, goal.j));
  }

  const std::size_t n = grid.cell_count();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> g(n, kInf);
  std::vector<std::uint8_t> closed(n, 0);
  std::vector<std::size_t> parent(n, std::numeric_limits<std::size_t>::max());

  auto heuristic = [&](const Cell & c) {
    return std::hypot(static_cast<double>(c.i - goal.i), static_cast<double>(c.j - goal.j));
  };

  // (f, h, i, j), smallest first.
  using Entry = std::tuple<double, double, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  g[grid.index(start)] = 0.0;
  open.emplace(heuristic(start), heuristic(start), start.i, start.j);

  bool found = false;
  while (!open.empty()) {
    const auto [f, h, ci, cj] = open.top();
    open.pop();
    const Cell cur{ci, cj};
    const std::size_t cur_idx = grid.index(cur);
    if (closed[cur_idx]) {
      continue;
    }
    closed[cur_idx] = 1;
    if (cur == goal) {
      found = true;
      break;
    }
    for (const auto & m : kMoves) {
      const Cell nb{cur.i + m.di, cur.j + m.dj};
      if (!grid.free(nb)) {
        continue;
      }
      const bool diagonal = m.di != 0 && m.dj != 0;
      if (diagonal && (!grid.free({cur.i + m.di, cur.j}) || !grid.free({cur.i, cur.j + m.dj}))) {
        continue;
      }
      const std::size_t nb_idx = grid.index(nb);
      if (closed[nb_idx]) {
        continue;
      }
      const double tentative = g[cur_idx] + (diagonal ? kSqrt2 : 1.0);
      if (tentative < g[nb_idx]) {
        g[nb_idx] = tentative;
        parent[nb_idx] = cur_idx;
        const double nh = heuristic(nb);
        open.emplace(tentative + nh, nh, nb.i, nb.j);
      }
    }
  }
  if (!found) {
    throw NoPathError(fmt::format(
      "no path from ({}, {}) to ({}, {})", start.i, start.j, goal.i, goal.j));
  }

  GridPath path;
  const auto w = static_cast<std::size_t>(grid.width());
  for (std::size_t idx = grid.index(goal);; idx = parent[idx]) {
    path.cells.push_back({static_cast<int>(idx % w), static_cast<int>(idx / w)});
    if (idx == grid.index(start)) {
      break;
    }
  }
  std::reverse(path.cells.begin(), path.cells.end());
  for (std::size_t k = 1; k < path.cells.size(); ++k) {
    const bool diagonal = path.cells[k].i != path.cells[k - 1].i &&
                          path.cells[k].j != path.cells[k - 1].j;
    (diagonal ? path.diagonal_moves : path.axial_moves) += 1;
  }
  return path;
}

Cell project_to_free(const OccupancyGrid & grid, const Point2 & p)
{
  // Expand Chebyshev rings around the containing cell. A cell on ring r is
  // at least r*res from the ring center, hence at least r*res - |p - c0|
  // from p; stop once that bound exceeds the best distance found.
  const Cell c0 = grid.world_to_cell(p);
  const double offset = distance(p, grid.cell_center(c0));
  const double res = grid.resolution();
  const int max_ring = std::max(grid.width(), grid.height());

  std::optional<std::tuple<double, int, int>> best;
  for (int r = 0; r <= max_ring; ++r) {
    if (best && r * res - offset > std::get<0>(*best)) {
      break;
    }
    for (int j = c0.j - r; j <= c0.j + r; ++j) {
      for (int i = c0.i - r; i <= c0.i + r; ++i) {
        if (std::max(std::abs(i - c0.i), std::abs(j - c0.j)) != r) {
          continue;
        }
        const Cell c{i, j};
        if (!grid.free(c)) {
          continue;
        }
        const std::tuple<double, int, int> cand{distance(p, grid.cell_center(c)), i, j};
        if (!best || cand < *best) {
          best = cand;
        }
      }
    }
  }
  if (!best) {
    throw NoFreeCellError("occupancy grid has no free cell");
  }
  return {std::get<1>(*best), std::get<2>(*best)};
}

bool segment_free(const OccupancyGrid & grid, const Point2 & a, const Point2 & b)
{
  const auto & bd = grid.bounds();
  for (const auto & p : {a, b}) {
    if (p.x < bd.x_min || p.x > bd.x_max || p.y < bd.y_min || p.y > bd.y_max) {
      return false;
    }
  }
  const double res = grid.resolution();
  const Cell lo = grid.world_to_cell({std::min(a.x, b.x) - res, std::min(a.y, b.y) - res});
  const Cell hi = grid.world_to_cell({std::max(a.x, b.x) + res, std::max(a.y, b.y) + res});
  for (int j = lo.j; j <= hi.j; ++j) {
    for (int i = lo.i; i <= hi.i; ++i) {
      if (!grid.occupied({i, j})) {
        continue;
      }
      const double x0 = bd.x_min + i * res - kContactEps;
      const double y0 = bd.y_min + j * res - kContactEps;
      if (segment_hits_box(a, b, x0, x0 + res + 2 * kContactEps, y0, y0 + res + 2 * kContactEps)) {
        return false;
      }
    }
  }
  return true;
}

PlannedPath smooth(const PlannedPath & path, const OccupancyGrid & grid)
{
  const auto & w = path.waypoints;
  if (w.size() <= 2) {
    return path;
  }
  PlannedPath out;
  out.cost = path.cost;
  out.waypoints.push_back(w.front());
  std::size_t anchor = 0;
  while (anchor + 1 < w.size()) {
    std::size_t k = anchor + 1;
    while (k + 1 < w.size() && segment_free(grid, w[anchor], w[k + 1])) {
      ++k;
    }
    out.waypoints.push_back(w[k]);
    anchor = k;
  }
  return out;
}

PlanningWorld planning_world(
  const Scene & scene, const PlannerParams & params, const Vec3 & human_center)
{
  PlanningWorld world;
  world.bounds = scene.room;
  world.circles.push_back(
    {{human_center.x, human_center.y}, scene.human.body_radius + params.safety_margin});
  const auto & t = scene.table;
  const Rect footprint{
    t.center.x - t.half_x, t.center.x + t.half_x, t.center.y - t.half_y, t.center.y + t.half_y};
  world.rects.push_back(footprint.inflated(params.drone_radius));
  return world;
}

OccupancyGrid build_grid(const PlanningWorld & world, const PlannerParams & params)
{
  return rasterize(world.bounds, params.resolution, world.circles, world.rects);
}

PlannedPath plan_leg(
  const OccupancyGrid & grid, const Point2 & start, const Point2 & goal, PlannedPath * raw)
{
  const Cell s = project_to_free(grid, start);
  const Cell g = project_to_free(grid, goal);
  const GridPath cells = astar(grid, s, g);

  PlannedPath path;
  path.cost = cells.cost() * grid.resolution();
  path.waypoints.reserve(cells.cells.size());
  for (const auto & c : cells.cells) {
    path.waypoints.push_back(grid.cell_center(c));
  }
  if (raw != nullptr) {
    *raw = path;
  }
  return smooth(path, grid);
}

}  // namespace aerofetch
