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

#ifndef ORACLES__GRID_ORACLES_HPP_
#define ORACLES__GRID_ORACLES_HPP_

// Brute-force references for the planner. Deliberately simple: full scans,
// plain Dijkstra, exact move-count costs.

#include "aerofetch/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

namespace oracles
{

using aerofetch::Cell;
using aerofetch::CircularObstacle;
using aerofetch::OccupancyGrid;
using aerofetch::Point2;
using aerofetch::Rect;

/// Path cost a + d*sqrt(2) held as integers so comparisons are exact.
struct ExactCost
{
  long long axial{0};
  long long diagonal{0};

  /// Sign of (this - other) without floating point: compares p against
  /// q*sqrt(2) via squares.
  int compare(const ExactCost & o) const
  {
    const long long p = axial - o.axial;
    const long long q = o.diagonal - diagonal;  // this - other = p - q*sqrt2
    if (p == 0 && q == 0) {
      return 0;
    }
    if (p >= 0 && q <= 0) {
      return 1;
    }
    if (p <= 0 && q >= 0) {
      return -1;
    }
    // Same sign: compare |p| with |q|*sqrt(2).
    const long long p2 = p * p;
    const long long q2 = 2 * q * q;
    if (p > 0) {
      return p2 > q2 ? 1 : -1;
    }
    return p2 > q2 ? -1 : 1;
  }
  bool operator<(const ExactCost & o) const { return compare(o) < 0; }
  bool operator==(const ExactCost & o) const { return axial == o.axial && diagonal == o.diagonal; }
};

/// Plain Dijkstra with the same move model: 8-connected, and a diagonal
/// needs both orthogonal neighbours free.
inline std::optional<ExactCost> dijkstra(const OccupancyGrid & g, const Cell & s, const Cell & t)
{
  if (!g.free(s) || !g.free(t)) {
    return std::nullopt;
  }
  const int w = g.width();
  const int h = g.height();
  std::vector<std::optional<ExactCost>> dist(static_cast<std::size_t>(w * h));
  std::vector<bool> done(static_cast<std::size_t>(w * h), false);
  auto id = [w](const Cell & c) { return static_cast<std::size_t>(c.j * w + c.i); };
  dist[id(s)] = ExactCost{};
  // O(V^2) selection keeps the oracle free of heap tie subtleties.
  for (;;) {
    std::optional<Cell> best;
    for (int j = 0; j < h; ++j) {
      for (int i = 0; i < w; ++i) {
        const Cell c{i, j};
        if (done[id(c)] || !dist[id(c)]) {
          continue;
        }
        if (!best || *dist[id(c)] < *dist[id(*best)]) {
          best = c;
        }
      }
    }
    if (!best) {
      return std::nullopt;
    }
    const Cell u = *best;
    if (u == t) {
      return dist[id(u)];
    }
    done[id(u)] = true;
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0) {
          continue;
        }
        const Cell v{u.i + di, u.j + dj};
        if (!g.free(v)) {
          continue;
        }
        const bool diag = di != 0 && dj != 0;
        if (diag && (!g.free({u.i + di, u.j}) || !g.free({u.i, u.j + dj}))) {
          continue;
        }
        ExactCost c = *dist[id(u)];
        (diag ? c.diagonal : c.axial) += 1;
        if (!dist[id(v)] || c < *dist[id(v)]) {
          dist[id(v)] = c;
        }
      }
    }
  }
}

/// Cell center computed from first principles.
inline Point2 center_of(const OccupancyGrid & g, const Cell & c)
{
  return {
    g.bounds().x_min + (c.i + 0.5) * g.resolution(), g.bounds().y_min + (c.j + 0.5) * g.resolution()};
}

/// Occupied-cell count by testing every cell center against every obstacle.
inline std::size_t brute_force_occupied(
  const OccupancyGrid & g, const std::vector<CircularObstacle> & circles,
  const std::vector<Rect> & rects)
{
  std::size_t n = 0;
  for (int j = 0; j < g.height(); ++j) {
    for (int i = 0; i < g.width(); ++i) {
      const Point2 p = center_of(g, {i, j});
      bool occ = false;
      for (const auto & c : circles) {
        occ = occ || std::hypot(p.x - c.center.x, p.y - c.center.y) < c.radius;
      }
      for (const auto & r : rects) {
        occ = occ || (p.x > r.x_min && p.x < r.x_max && p.y > r.y_min && p.y < r.y_max);
      }
      n += occ ? 1 : 0;
    }
  }
  return n;
}

/// Nearest free cell center by exhaustive scan; ties to lowest (i, j).
inline std::optional<Cell> nearest_free_scan(const OccupancyGrid & g, const Point2 & p)
{
  std::optional<Cell> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.width(); ++i) {
    for (int j = 0; j < g.height(); ++j) {
      if (!g.free({i, j})) {
        continue;
      }
      const Point2 c = center_of(g, {i, j});
      const double d = std::hypot(c.x - p.x, c.y - p.y);
      if (d < best_d) {
        best_d = d;
        best = Cell{i, j};
      }
    }
  }
  return best;
}

/// Cell containing a world point, by floor division, or nullopt outside.
inline std::optional<Cell> cell_at(const OccupancyGrid & g, const Point2 & p)
{
  const int i = static_cast<int>(std::floor((p.x - g.bounds().x_min) / g.resolution()));
  const int j = static_cast<int>(std::floor((p.y - g.bounds().y_min) / g.resolution()));
  const Cell c{i, j};
  if (!g.in_bounds(c)) {
    return std::nullopt;
  }
  return c;
}

/// Samples the segment every `step` metres (both ends included) and checks
/// that each sample lies in a free cell.
inline bool dense_segment_free(
  const OccupancyGrid & g, const Point2 & a, const Point2 & b, double step)
{
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    const Point2 p{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
    const auto c = cell_at(g, p);
    if (!c || g.occupied(*c)) {
      return false;
    }
  }
  return true;
}

inline bool dense_path_free(const OccupancyGrid & g, const std::vector<Point2> & pts, double step)
{
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (!dense_segment_free(g, pts[k - 1], pts[k], step)) {
      return false;
    }
  }
  return !pts.empty() && (pts.size() > 1 || cell_at(g, pts.front()).has_value());
}

/// Minimum distance from q to densely sampled points along the polyline.
inline double dense_min_distance(const std::vector<Point2> & pts, const Point2 & q, double step)
{
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    best = std::min(best, std::hypot(pts[k].x - q.x, pts[k].y - q.y));
    if (k + 1 == pts.size()) {
      break;
    }
    const Point2 a = pts[k];
    const Point2 b = pts[k + 1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int s = 1; s < n; ++s) {
      const double t = static_cast<double>(s) / n;
      best = std::min(best, std::hypot(a.x + (b.x - a.x) * t - q.x, a.y + (b.y - a.y) * t - q.y));
    }
  }
  return best;
}

inline double polyline_length(const std::vector<Point2> & pts)
{
  double len = 0.0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    len += std::hypot(pts[k].x - pts[k - 1].x, pts[k].y - pts[k - 1].y);
  }
  return len;
}

/// Random grid at the given occupancy fraction (exact count of occupied
/// cells, chosen by shuffling).
template <typename Rng>
OccupancyGrid random_grid(int w, int h, double occupancy, Rng & rng)
{
  OccupancyGrid g({0.0, static_cast<double>(w), 0.0, static_cast<double>(h)}, 1.0);
  std::vector<int> ids(static_cast<std::size_t>(w * h));
  for (int k = 0; k < w * h; ++k) {
    ids[static_cast<std::size_t>(k)] = k;
  }
  std::shuffle(ids.begin(), ids.end(), rng);
  const int n = static_cast<int>(std::lround(occupancy * w * h));
  for (int k = 0; k < n; ++k) {
    g.set_occupied({ids[static_cast<std::size_t>(k)] % w, ids[static_cast<std::size_t>(k)] / w}, true);
  }
  return g;
}

}  // namespace oracles

#endif  // ORACLES__GRID_ORACLES_HPP_
