// Copyright 2026 The intentnav Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "intentnav/bev.hpp"
#include "intentnav/errors.hpp"
#include "intentnav/geom.hpp"
#include "intentnav/rng.hpp"
#include "intentnav/topomap.hpp"

namespace intentnav
{

/// Row-major boolean occupancy grid anchored at the world origin.
struct OccupancyGrid
{
  int width{0};
  int height{0};
  double resolution{0.05};
  std::vector<std::uint8_t> free;

  bool operator==(const OccupancyGrid &) const = default;

  std::size_t index(int ix, int iy) const {return static_cast<std::size_t>(iy) * width + ix;}
  bool in_bounds(int ix, int iy) const {return ix >= 0 && iy >= 0 && ix < width && iy < height;}
  bool cell_free(int ix, int iy) const {return in_bounds(ix, iy) && free[index(ix, iy)] != 0;}

  int cell_x(double x) const {return static_cast<int>(std::floor(x / resolution));}
  int cell_y(double y) const {return static_cast<int>(std::floor(y / resolution));}

  bool is_free(const Vec2 & p) const {return cell_free(cell_x(p.x), cell_y(p.y));}

  Vec2 center(int ix, int iy) const {return {(ix + 0.5) * resolution, (iy + 0.5) * resolution};}

  std::size_t free_count() const
  {
    return static_cast<std::size_t>(std::count(free.begin(), free.end(), 1));
  }
};

struct WorldObject
{
  InstanceLabel label{0};
  Vec2 position;
  double radius{0.2};

  bool operator==(const WorldObject &) const = default;
};

struct World
{
  OccupancyGrid grid;
  std::vector<WorldObject> objects;
  std::uint64_t seed{0};

  double bounds_x() const {return grid.width * grid.resolution;}
  double bounds_y() const {return grid.height * grid.resolution;}

  const WorldObject * find_object(InstanceLabel label) const
  {
    for (const auto & o : objects) {
      if (o.label == label) {
        return &o;
      }
    }
    return nullptr;
  }

  bool operator==(const World &) const = default;
};

struct WorldConfig
{
  double size{20.0};            ///< square world side, metres
  double resolution{0.05};
  int rooms{5};
  double room_min{3.0};
  double room_max{6.0};
  double corridor_width{1.2};
  int extra_connections{1};     ///< corridors beyond the spanning set (loops)
  int objects{60};
  double object_radius_min{0.1};
  double object_radius_max{0.3};
  int wall_margin_cells{2};
  double object_spacing{0.4};   ///< minimum distance between object centres
  int max_retries{50};

  void validate() const
  {
    if (rooms < 1 || rooms > 8) {
      throw InvalidArgument("world config: rooms must be in [1, 8]");
    }
    if (corridor_width < 3 * resolution) {
      throw InvalidArgument("world config: corridor narrower than 3 cells");
    }
    if (objects < 10 || objects > 60) {
      throw InvalidArgument("world config: objects must be in [10, 60]");
    }
    if (!(resolution > 0.0) || !(size > 0.0) || size > 30.0) {
      throw InvalidArgument("world config: need resolution > 0 and 0 < size <= 30 m");
    }
    if (!(room_min > 0.0) || room_max < room_min) {
      throw InvalidArgument("world config: bad room size range");
    }
  }
};

namespace detail
{

struct Rect
{
  double x0, y0, x1, y1;
  Vec2 center() const {return {(x0 + x1) / 2, (y0 + y1) / 2};}
  bool overlaps(const Rect & o, double gap) const
  {
    return !(x1 + gap <= o.x0 || o.x1 + gap <= x0 || y1 + gap <= o.y0 || o.y1 + gap <= y0);
  }
};

inline void carve(OccupancyGrid & g, const Rect & r)
{
  const int ix0 = std::max(0, g.cell_x(r.x0));
  const int iy0 = std::max(0, g.cell_y(r.y0));
  const int ix1 = std::min(g.width - 1, g.cell_x(r.x1 - 1e-9));
  const int iy1 = std::min(g.height - 1, g.cell_y(r.y1 - 1e-9));
  for (int iy = iy0; iy <= iy1; ++iy) {
    for (int ix = ix0; ix <= ix1; ++ix) {
      g.free[g.index(ix, iy)] = 1;
    }
  }
}

inline void carve_corridor(OccupancyGrid & g, Vec2 a, Vec2 b, double width, bool horizontal_first)
{
  const double h = width / 2;
  const Vec2 corner = horizontal_first ? Vec2{b.x, a.y} : Vec2{a.x, b.y};
  auto seg = [&](Vec2 p, Vec2 q) {
      carve(g, {std::min(p.x, q.x) - h, std::min(p.y, q.y) - h, std::max(p.x, q.x) + h, std::max(p.y, q.y) + h});
    };
  seg(a, corner);
  seg(corner, b);
}

/// Number of cells reachable from the first free cell (4-connected).
inline std::size_t flood_count(const OccupancyGrid & g)
{
  std::size_t start = g.free.size();
  for (std::size_t i = 0; i < g.free.size(); ++i) {
    if (g.free[i]) {
      start = i;
      break;
    }
  }
  if (start == g.free.size()) {
    return 0;
  }
  std::vector<std::uint8_t> seen(g.free.size(), 0);
  std::vector<std::size_t> stack{start};
  seen[start] = 1;
  std::size_t count = 0;
  while (!stack.empty()) {
    const std::size_t c = stack.back();
    stack.pop_back();
    ++count;
    const int ix = static_cast<int>(c % g.width);
    const int iy = static_cast<int>(c / g.width);
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int nx = ix + dx[k], ny = iy + dy[k];
      if (g.cell_free(nx, ny) && !seen[g.index(nx, ny)]) {
        seen[g.index(nx, ny)] = 1;
        stack.push_back(g.index(nx, ny));
      }
    }
  }
  return count;
}

}  // namespace detail

/// Chamfer distance (metres) from every cell to the nearest blocked cell or
/// the grid border.
inline std::vector<double> clearance_map(const OccupancyGrid & g)
{
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(g.free.size(), inf);
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      if (!g.free[g.index(ix, iy)] || ix == 0 || iy == 0 || ix == g.width - 1 || iy == g.height - 1) {
        d[g.index(ix, iy)] = g.free[g.index(ix, iy)] ? 1.0 : 0.0;
      }
    }
  }
  const double diag = std::sqrt(2.0);
  auto relax = [&](int ix, int iy, int nx, int ny, double w) {
      if (g.in_bounds(nx, ny)) {
        double & here = d[g.index(ix, iy)];
        here = std::min(here, d[g.index(nx, ny)] + w);
      }
    };
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      relax(ix, iy, ix - 1, iy, 1.0);
      relax(ix, iy, ix, iy - 1, 1.0);
      relax(ix, iy, ix - 1, iy - 1, diag);
      relax(ix, iy, ix + 1, iy - 1, diag);
    }
  }
  for (int iy = g.height - 1; iy >= 0; --iy) {
    for (int ix = g.width - 1; ix >= 0; --ix) {
      relax(ix, iy, ix + 1, iy, 1.0);
      relax(ix, iy, ix, iy + 1, 1.0);
      relax(ix, iy, ix + 1, iy + 1, diag);
      relax(ix, iy, ix - 1, iy + 1, diag);
    }
  }
  for (auto & v : d) {
    v *= g.resolution;
  }
  return d;
}

/// Axis-aligned rooms joined by L-shaped corridors, with objects scattered
/// over free space away from walls. Deterministic per seed.
inline World generate_world(std::uint64_t seed, const WorldConfig & cfg = {})
{
  cfg.validate();
  const int n = static_cast<int>(std::lround(cfg.size / cfg.resolution));
  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    World w;
    w.seed = seed;
    w.grid.width = n;
    w.grid.height = n;
    w.grid.resolution = cfg.resolution;
    w.grid.free.assign(static_cast<std::size_t>(n) * n, 0);

    const double margin = 0.5;
    std::vector<detail::Rect> rooms;
    for (int tries = 0; tries < 200 * cfg.rooms && static_cast<int>(rooms.size()) < cfg.rooms; ++tries) {
      const double rw = rng.uniform(cfg.room_min, cfg.room_max);
      const double rh = rng.uniform(cfg.room_min, cfg.room_max);
      if (rw + 2 * margin > cfg.size || rh + 2 * margin > cfg.size) {
        continue;
      }
      const double x0 = rng.uniform(margin, cfg.size - margin - rw);
      const double y0 = rng.uniform(margin, cfg.size - margin - rh);
      const detail::Rect r{x0, y0, x0 + rw, y0 + rh};
      bool clash = false;
      for (const auto & o : rooms) {
        clash = clash || r.overlaps(o, 1.0);
      }
      if (!clash) {
        rooms.push_back(r);
      }
    }
    if (static_cast<int>(rooms.size()) < cfg.rooms) {
      continue;
    }
    for (const auto & r : rooms) {
      detail::carve(w.grid, r);
    }
    // Spanning corridors: each room to its nearest earlier room.
    std::set<std::pair<int, int>> links;
    for (int i = 1; i < cfg.rooms; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int j = 0; j < i; ++j) {
        const double d = distance(rooms[i].center(), rooms[j].center());
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      links.insert({best, i});
      detail::carve_corridor(w.grid, rooms[best].center(), rooms[i].center(), cfg.corridor_width, rng.bernoulli(0.5));
    }
    for (int e = 0; e < cfg.extra_connections && cfg.rooms > 2; ++e) {
      const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.rooms)));
      const int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.rooms)));
      if (a == b || links.count({std::min(a, b), std::max(a, b)})) {
        continue;
      }
      links.insert({std::min(a, b), std::max(a, b)});
      detail::carve_corridor(w.grid, rooms[a].center(), rooms[b].center(), cfg.corridor_width, rng.bernoulli(0.5));
    }
    if (detail::flood_count(w.grid) != w.grid.free_count()) {
      continue;
    }

    const auto clear = clearance_map(w.grid);
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < w.grid.free.size(); ++i) {
      if (w.grid.free[i] && clear[i] > cfg.wall_margin_cells * cfg.resolution) {
        candidates.push_back(i);
      }
    }
    if (candidates.empty()) {
      continue;
    }
    for (int tries = 0; tries < 100 * cfg.objects && static_cast<int>(w.objects.size()) < cfg.objects; ++tries) {
      const std::size_t c = candidates[rng.below(candidates.size())];
      const Vec2 p = w.grid.center(static_cast<int>(c % n), static_cast<int>(c / n));
      bool close = false;
      for (const auto & o : w.objects) {
        close = close || distance(o.position, p) < cfg.object_spacing;
      }
      if (close) {
        continue;
      }
      const double radius = rng.uniform(cfg.object_radius_min, cfg.object_radius_max);
      w.objects.push_back({static_cast<InstanceLabel>(w.objects.size() + 1), p, radius});
    }
    if (static_cast<int>(w.objects.size()) < cfg.objects) {
      continue;
    }
    return w;
  }
  throw GenerationError("generate_world: constraints unsatisfied after " + std::to_string(cfg.max_retries) + " attempts");
}

struct SensorSpec
{
  double fov{kPi / 2};
  double max_range{8.0};
};

struct ObservedObject
{
  InstanceLabel label{0};
  double bearing{0.0};
  double range{0.0};
  double angular_extent{0.0};
  Vec2 position;  ///< world position; oracle data used by the mapper
};

using Observation = std::vector<ObservedObject>;

/// True when every sample along a..b lies in free space.
inline bool line_of_sight(const OccupancyGrid & g, const Vec2 & a, const Vec2 & b)
{
  const double len = distance(a, b);
  const double step = g.resolution / 4;
  const int n = static_cast<int>(std::ceil(len / step));
  for (int i = 0; i <= n; ++i) {
    const double t = n == 0 ? 0.0 : static_cast<double>(i) / n;
    if (!g.is_free(a + (b - a) * t)) {
      return false;
    }
  }
  return true;
}

/// True when every grid cell the segment a..b passes through is free
/// (exact cell traversal; at exact corner crossings both side cells must be
/// free). Stricter than line_of_sight.
inline bool segment_clear(const OccupancyGrid & g, const Vec2 & a, const Vec2 & b)
{
  int ix = g.cell_x(a.x), iy = g.cell_y(a.y);
  const int jx = g.cell_x(b.x), jy = g.cell_y(b.y);
  if (!g.cell_free(ix, iy) || !g.cell_free(jx, jy)) {
    return false;
  }
  const double dx = b.x - a.x, dy = b.y - a.y;
  const int sx = dx > 0 ? 1 : -1, sy = dy > 0 ? 1 : -1;
  const double inf = std::numeric_limits<double>::infinity();
  double tx = dx != 0.0 ? ((ix + (sx > 0 ? 1 : 0)) * g.resolution - a.x) / dx : inf;
  double ty = dy != 0.0 ? ((iy + (sy > 0 ? 1 : 0)) * g.resolution - a.y) / dy : inf;
  const double ddx = dx != 0.0 ? g.resolution / std::abs(dx) : inf;
  const double ddy = dy != 0.0 ? g.resolution / std::abs(dy) : inf;
  const int limit = std::abs(jx - ix) + std::abs(jy - iy);
  for (int n = 0; n < limit && (ix != jx || iy != jy); ++n) {
    if (tx < ty) {
      ix += sx;
      tx += ddx;
    } else if (ty < tx) {
      iy += sy;
      ty += ddy;
    } else {
      if (!g.cell_free(ix + sx, iy) || !g.cell_free(ix, iy + sy)) {
        return false;
      }
      ix += sx;
      iy += sy;
      tx += ddx;
      ty += ddy;
    }
    if (!g.cell_free(ix, iy)) {
      return false;
    }
  }
  return true;
}

/// Objects within range, inside the field of view and in line of sight,
/// in label order.
inline Observation observe(const World & world, const Pose2 & pose, const SensorSpec & sensor = {})
{
  Observation out;
  for (const auto & o : world.objects) {
    const Vec2 d = o.position - pose.position;
    const double range = d.norm();
    if (range > sensor.max_range || range < 1e-9) {
      continue;
    }
    const double b = wrap_angle(heading_of(d) - pose.yaw);
    if (std::abs(b) > sensor.fov / 2) {
      continue;
    }
    if (!line_of_sight(world.grid, pose.position, o.position)) {
      continue;
    }
    out.push_back({o.label, b, range, std::atan(o.radius / range), o.position});
  }
  return out;
}

struct AgentState
{
  Pose2 pose;
  int steps_taken{0};
  double path_length{0.0};
};

/// Turn toward the waypoint, then advance up to step_len, stopping at the
/// last free sample before a collision. Fallback waypoints rotate in place
/// by turn_step.
inline AgentState step(
  const World & world, const AgentState & state, const RefinedWaypoint & wp, double step_len,
  double turn_step = kPi / 6)
{
  AgentState next = state;
  next.steps_taken += 1;
  if (wp.status == RefineStatus::fallback) {
    next.pose.yaw = wrap_angle(state.pose.yaw + turn_step);
    return next;
  }
  const Vec2 v = wp.point - state.pose.position;
  const double dist = v.norm();
  if (dist < 1e-12) {
    return next;
  }
  next.pose.yaw = wrap_angle(heading_of(v));
  const double advance = std::min(step_len, dist);
  const Vec2 dir = v * (1.0 / dist);
  const double sample = world.grid.resolution / 4;
  const int n = static_cast<int>(std::ceil(advance / sample));
  Vec2 last = state.pose.position;
  for (int i = 1; i <= n; ++i) {
    const double t = std::min(advance, i * sample);
    const Vec2 p = state.pose.position + dir * t;
    if (!world.grid.is_free(p)) {
      break;
    }
    last = p;
  }
  next.pose.position = last;
  next.path_length += distance(last, state.pose.position);
  return next;
}

/// World occupancy with obstacles grown by `radius`, for traversability
/// windows.
struct InflatedOccupancy
{
  OccupancyGrid grid;
};

inline InflatedOccupancy inflate(const World & world, double radius)
{
  InflatedOccupancy out{world.grid};
  const auto clear = clearance_map(world.grid);
  for (std::size_t i = 0; i < clear.size(); ++i) {
    if (out.grid.free[i] && clear[i] <= radius) {
      out.grid.free[i] = 0;
    }
  }
  return out;
}

struct BevSpec
{
  double window{4.0};
  double resolution{0.05};
  double inflation{0.15};
};

/// Robot-centred traversability window. A cell is free when its centre is
/// free in the inflated occupancy and the straight segment from the robot
/// to it is collision-free in the raw occupancy, so every free cell can be
/// reached in one straight move. The robot's own cell is always free.
inline TraversabilityGrid make_traversability_grid(
  const InflatedOccupancy & occ, const OccupancyGrid & raw, const Vec2 & robot, const BevSpec & spec = {})
{
  TraversabilityGrid g;
  g.resolution = spec.resolution;
  g.width = g.height = static_cast<int>(std::lround(spec.window / spec.resolution));
  g.origin = robot - Vec2{spec.window / 2, spec.window / 2};
  g.free.assign(static_cast<std::size_t>(g.width) * g.height, 0);
  for (int iy = 0; iy < g.height; ++iy) {
    for (int ix = 0; ix < g.width; ++ix) {
      const Vec2 c = g.cell_center(ix, iy);
      if (occ.grid.is_free(c) && segment_clear(raw, robot, c)) {
        g.free[static_cast<std::size_t>(iy) * g.width + ix] = 1;
      }
    }
  }
  int rx = 0, ry = 0;
  if (g.cell_of(robot, rx, ry)) {
    g.free[static_cast<std::size_t>(ry) * g.width + rx] = 1;
  }
  return g;
}

/// Single-source 8-connected shortest distances over free cells, with an
/// optional per-cell cost multiplier.
class GridField
{
public:
  GridField(const OccupancyGrid & grid, const Vec2 & source, const std::vector<double> * cell_cost = nullptr)
  : grid_(&grid),
    dist_(grid.free.size(), std::numeric_limits<double>::infinity()),
    parent_(grid.free.size(), -1)
  {
    const int sx = grid.cell_x(source.x), sy = grid.cell_y(source.y);
    if (!grid.cell_free(sx, sy)) {
      throw InvalidArgument("geodesic source not in free space");
    }
    using Item = std::pair<double, long>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    const long s = static_cast<long>(grid.index(sx, sy));
    dist_[s] = 0.0;
    heap.push({0.0, s});
    const int dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    const int dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    const double diag = std::sqrt(2.0);
    while (!heap.empty()) {
      const auto [d, c] = heap.top();
      heap.pop();
      if (d > dist_[c]) {
        continue;
      }
      const int ix = static_cast<int>(c % grid.width), iy = static_cast<int>(c / grid.width);
      for (int k = 0; k < 8; ++k) {
        const int nx = ix + dx[k], ny = iy + dy[k];
        if (!grid.cell_free(nx, ny)) {
          continue;
        }
        const long nc = static_cast<long>(grid.index(nx, ny));
        double w = (k < 4 ? 1.0 : diag) * grid.resolution;
        if (cell_cost) {
          w *= 0.5 * ((*cell_cost)[c] + (*cell_cost)[nc]);
        }
        if (d + w < dist_[nc]) {
          dist_[nc] = d + w;
          parent_[nc] = c;
          heap.push({d + w, nc});
        }
      }
    }
  }

  double at(const Vec2 & p) const
  {
    const int ix = grid_->cell_x(p.x), iy = grid_->cell_y(p.y);
    if (!grid_->in_bounds(ix, iy)) {
      return std::numeric_limits<double>::infinity();
    }
    return dist_[grid_->index(ix, iy)];
  }

  /// Cell centres from p back to the source, p's cell first.
  std::vector<Vec2> path_from(const Vec2 & p) const
  {
    std::vector<Vec2> out;
    const int ix = grid_->cell_x(p.x), iy = grid_->cell_y(p.y);
    if (!grid_->in_bounds(ix, iy) || !std::isfinite(dist_[grid_->index(ix, iy)])) {
      return out;
    }
    long c = static_cast<long>(grid_->index(ix, iy));
    while (c >= 0) {
      out.push_back(grid_->center(static_cast<int>(c % grid_->width), static_cast<int>(c / grid_->width)));
      c = parent_[c];
    }
    return out;
  }

private:
  const OccupancyGrid * grid_;
  std::vector<double> dist_;
  std::vector<long> parent_;
};

/// 8-connected grid geodesic between two free points; infinity when
/// disconnected.
inline double geodesic_distance(const World & world, const Vec2 & a, const Vec2 & b)
{
  if (world.grid.cell_x(a.x) == world.grid.cell_x(b.x) && world.grid.cell_y(a.y) == world.grid.cell_y(b.y)) {
    return 0.0;
  }
  return GridField(world.grid, b).at(a);
}

/// Geodesic polyline from a to b (inclusive endpoints). With a positive
/// clearance weight the search pays extra for cells closer than
/// `clearance` to a wall, pulling the route toward corridor centres.
inline std::vector<Vec2> geodesic_path(
  const World & world, const Vec2 & a, const Vec2 & b, double clearance_weight = 0.0,
  double clearance = 0.5)
{
  std::vector<double> cost;
  if (clearance_weight > 0.0) {
    const auto clear = clearance_map(world.grid);
    cost.resize(clear.size());
    for (std::size_t i = 0; i < clear.size(); ++i) {
      cost[i] = 1.0 + clearance_weight * std::max(0.0, (clearance - clear[i]) / clearance);
    }
  }
  GridField field(world.grid, b, cost.empty() ? nullptr : &cost);
  auto cells = field.path_from(a);
  if (cells.empty()) {
    return {};
  }
  std::vector<Vec2> path;
  path.push_back(a);
  for (std::size_t i = 1; i + 1 < cells.size(); ++i) {
    path.push_back(cells[i]);
  }
  path.push_back(b);
  return path;
}

inline double polyline_length(const std::vector<Vec2> & pts)
{
  double s = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    s += distance(pts[i - 1], pts[i]);
  }
  return s;
}

/// Points every `spacing` metres of arc length along a polyline, last point
/// included.
inline std::vector<Vec2> resample(const std::vector<Vec2> & pts, double spacing)
{
  std::vector<Vec2> out;
  if (pts.empty()) {
    return out;
  }
  out.push_back(pts.front());
  double carry = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Vec2 a = pts[i - 1], b = pts[i];
    const double seg = distance(a, b);
    double t = spacing - carry;
    while (t <= seg) {
      out.push_back(a + (b - a) * (t / seg));
      t += spacing;
    }
    carry = seg - (t - spacing);
  }
  if (distance(out.back(), pts.back()) > 1e-9) {
    out.push_back(pts.back());
  }
  return out;
}

/// Point at arc length s along a polyline (clamped to the ends).
inline Vec2 point_at_arclength(const std::vector<Vec2> & pts, double s)
{
  if (pts.empty()) {
    return {};
  }
  if (s <= 0.0) {
    return pts.front();
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double seg = distance(pts[i - 1], pts[i]);
    if (s <= seg && seg > 0.0) {
      return pts[i - 1] + (pts[i] - pts[i - 1]) * (s / seg);
    }
    s -= seg;
  }
  return pts.back();
}

}  // namespace intentnav
