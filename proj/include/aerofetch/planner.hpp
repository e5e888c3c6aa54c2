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

#ifndef AEROFETCH__PLANNER_HPP_
#define AEROFETCH__PLANNER_HPP_

#include "aerofetch/geometry.hpp"
#include "aerofetch/scene.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace aerofetch
{

struct Point2
{
  double x{0.0};
  double y{0.0};
  bool operator==(const Point2 &) const = default;
};

inline double distance(const Point2 & a, const Point2 & b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Cell
{
  int i{0};  // column, along x
  int j{0};  // row, along y
  bool operator==(const Cell &) const = default;
  auto operator<=>(const Cell &) const = default;
};

struct CircularObstacle
{
  Point2 center{};
  double radius{0.0};
};

/// Axis-aligned rectangle in world coordinates.
struct Rect
{
  double x_min{0.0};
  double x_max{0.0};
  double y_min{0.0};
  double y_max{0.0};

  Rect inflated(double margin) const
  {
    return {x_min - margin, x_max + margin, y_min - margin, y_max + margin};
  }
  bool contains_strict(const Point2 & p) const
  {
    return p.x > x_min && p.x < x_max && p.y > y_min && p.y < y_max;
  }
};

class OccupancyGrid
{
public:
  OccupancyGrid(const RoomBounds & bounds, double resolution);

  const RoomBounds & bounds() const { return bounds_; }
  double resolution() const { return resolution_; }
  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t cell_count() const { return cells_.size(); }

  bool in_bounds(const Cell & c) const { return c.i >= 0 && c.j >= 0 && c.i < width_ && c.j < height_; }
  bool occupied(const Cell & c) const { return cells_[index(c)] != 0; }
  bool free(const Cell & c) const { return in_bounds(c) && cells_[index(c)] == 0; }
  void set_occupied(const Cell & c, bool occ) { cells_[index(c)] = occ ? 1 : 0; }
  std::size_t occupied_count() const;

  Point2 cell_center(const Cell & c) const;
  /// Cell containing p, clamped to the grid.
  Cell world_to_cell(const Point2 & p) const;

  std::size_t index(const Cell & c) const
  {
    return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.i);
  }

private:
  RoomBounds bounds_;
  double resolution_;
  int width_;
  int height_;
  std::vector<std::uint8_t> cells_;
};

struct PlannedPath
{
  std::vector<Point2> waypoints;
  /// Grid-metric cost of the raw A* path, in metres.
  double cost{0.0};

  double length() const;
};

/// A* output: the cell sequence and its cost split into move counts so that
/// equal-cost paths compare exactly.
struct GridPath
{
  std::vector<Cell> cells;
  int axial_moves{0};
  int diagonal_moves{0};

  /// Cost in cell units (axial = 1, diagonal = sqrt(2)).
  double cost() const;
};

/// Cells whose centers lie strictly inside a circle or strictly inside a
/// rectangle are occupied. Rectangles are used as given; inflate first.
OccupancyGrid rasterize(
  const RoomBounds & bounds, double resolution, std::span<const CircularObstacle> circles,
  std::span<const Rect> rects);

/// 8-connected A*, unit/sqrt(2) step costs, Euclidean heuristic in index
/// space. A diagonal step is allowed only when both cells it squeezes
/// between are free. Ties: lower f, then lower h, then lower (i, j).
/// Throws InvalidEndpointError / NoPathError.
GridPath astar(const OccupancyGrid & grid, const Cell & start, const Cell & goal);

/// Free cell whose center is closest to p; ties go to the lowest (i, j).
/// Throws NoFreeCellError when every cell is occupied.
Cell project_to_free(const OccupancyGrid & grid, const Point2 & p);

/// True when the closed segment a-b touches no occupied (closed) cell
/// square and stays inside the grid.
bool segment_free(const OccupancyGrid & grid, const Point2 & a, const Point2 & b);

/// Greedy forward line-of-sight smoothing.
PlannedPath smooth(const PlannedPath & path, const OccupancyGrid & grid);

struct PlannerParams
{
  double resolution{0.1};
  double safety_margin{0.9};
  double drone_radius{0.35};
  bool human_on_all_legs{true};
};

/// Obstacles derived from a scene: the human cylinder (body radius plus
/// safety margin) and the table footprint inflated by the drone radius.
struct PlanningWorld
{
  RoomBounds bounds{};
  std::vector<CircularObstacle> circles;
  std::vector<Rect> rects;
};

PlanningWorld planning_world(
  const Scene & scene, const PlannerParams & params, const Vec3 & human_center);

OccupancyGrid build_grid(const PlanningWorld & world, const PlannerParams & params);

/// project start/goal -> A* -> cell centers -> smoothing.
/// `raw` (optional) receives the unsmoothed world path.
PlannedPath plan_leg(
  const OccupancyGrid & grid, const Point2 & start, const Point2 & goal,
  PlannedPath * raw = nullptr);

}  // namespace aerofetch

#endif  // AEROFETCH__PLANNER_HPP_
