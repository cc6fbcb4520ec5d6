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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "intentnav/errors.hpp"
#include "intentnav/geom.hpp"

namespace intentnav
{

/// Robot-centred, world-axis-aligned window of free/blocked cells.
struct TraversabilityGrid
{
  Vec2 origin;            ///< world position of the window's lower-left corner
  double resolution{0.05};
  int width{0};
  int height{0};
  std::vector<std::uint8_t> free;  ///< row-major, row = y index

  bool in_bounds(int ix, int iy) const {return ix >= 0 && iy >= 0 && ix < width && iy < height;}

  bool cell_of(const Vec2 & p, int & ix, int & iy) const
  {
    ix = static_cast<int>(std::floor((p.x - origin.x) / resolution));
    iy = static_cast<int>(std::floor((p.y - origin.y) / resolution));
    return in_bounds(ix, iy);
  }

  bool cell_free(int ix, int iy) const
  {
    return in_bounds(ix, iy) && free[static_cast<std::size_t>(iy) * width + ix] != 0;
  }

  Vec2 cell_center(int ix, int iy) const
  {
    return {origin.x + (ix + 0.5) * resolution, origin.y + (iy + 0.5) * resolution};
  }
};

/// True iff p falls in an in-bounds free cell.
inline bool is_free(const TraversabilityGrid & grid, const Vec2 & p)
{
  int ix = 0, iy = 0;
  return grid.cell_of(p, ix, iy) && grid.cell_free(ix, iy);
}

enum class RefineStatus { direct, ray_projected, neighborhood, fallback };

inline const char * to_string(RefineStatus s)
{
  switch (s) {
    case RefineStatus::direct: return "direct";
    case RefineStatus::ray_projected: return "ray_projected";
    case RefineStatus::neighborhood: return "neighborhood";
    case RefineStatus::fallback: return "fallback";
  }
  return "?";
}

/// Executable waypoint in the world frame. A fallback carries the robot's
/// own position and means "rotate in place".
struct RefinedWaypoint
{
  Vec2 point;
  RefineStatus status{RefineStatus::direct};
};

struct RefineParams
{
  double neighborhood_radius{1.0};  ///< half-width of the square search window
};

/// Feasibility refinement of a robot-frame waypoint: keep it if free, else
/// march back along its ray, else pick the free cell near it with the
/// smallest angular deviation, else fall back to rotating in place.
inline RefinedWaypoint refine(
  const TraversabilityGrid & grid, const Vec2 & waypoint, const Pose2 & robot,
  const RefineParams & params = {})
{
  const Vec2 target = robot_to_world(robot, waypoint);
  if (is_free(grid, target)) {
    return {target, RefineStatus::direct};
  }
  int rx = 0, ry = 0;
  const bool robot_in = grid.cell_of(robot.position, rx, ry);
  auto robot_cell = [&](int ix, int iy) {return robot_in && ix == rx && iy == ry;};

  const double len = waypoint.norm();
  if (len > 0.0) {
    const double step = grid.resolution / 2;
    const Vec2 dir = rotate(waypoint * (1.0 / len), robot.yaw);
    for (int k = 1;; ++k) {
      const double t = len - k * step;
      if (t < step) {
        break;
      }
      const Vec2 p = robot.position + dir * t;
      int ix = 0, iy = 0;
      if (grid.cell_of(p, ix, iy) && grid.cell_free(ix, iy) && !robot_cell(ix, iy)) {
        return {p, RefineStatus::ray_projected};
      }
    }
  }

  const double want = len > 0.0 ? heading_of(target - robot.position) : robot.yaw;
  double best_dev = std::numeric_limits<double>::infinity();
  double best_range = std::numeric_limits<double>::infinity();
  bool found = false;
  Vec2 best;
  const double rho = params.neighborhood_radius;
  const int x0 = static_cast<int>(std::floor((target.x - rho - grid.origin.x) / grid.resolution));
  const int x1 = static_cast<int>(std::floor((target.x + rho - grid.origin.x) / grid.resolution));
  const int y0 = static_cast<int>(std::floor((target.y - rho - grid.origin.y) / grid.resolution));
  const int y1 = static_cast<int>(std::floor((target.y + rho - grid.origin.y) / grid.resolution));
  for (int iy = y0; iy <= y1; ++iy) {
    for (int ix = x0; ix <= x1; ++ix) {
      if (!grid.cell_free(ix, iy) || robot_cell(ix, iy)) {
        continue;
      }
      const Vec2 c = grid.cell_center(ix, iy);
      if (std::abs(c.x - target.x) > rho || std::abs(c.y - target.y) > rho) {
        continue;
      }
      const Vec2 rel = c - robot.position;
      const double range = rel.norm();
      if (range == 0.0) {
        continue;
      }
      const double dev = std::abs(wrap_angle(heading_of(rel) - want));
      if (dev < best_dev || (dev == best_dev && range < best_range)) {
        best_dev = dev;
        best_range = range;
        best = c;
        found = true;
      }
    }
  }
  if (found) {
    return {best, RefineStatus::neighborhood};
  }
  return {robot.position, RefineStatus::fallback};
}

/// PGM dump of the window; blocked cells black, free cells white, the raw
/// waypoint mid-gray and the refined one dark gray.
inline void write_bev_pgm(
  const TraversabilityGrid & grid, const Vec2 & raw_world, const RefinedWaypoint & refined,
  const std::string & path)
{
  std::vector<int> px(static_cast<std::size_t>(grid.width) * grid.height);
  for (int iy = 0; iy < grid.height; ++iy) {
    for (int ix = 0; ix < grid.width; ++ix) {
      px[static_cast<std::size_t>(iy) * grid.width + ix] = grid.cell_free(ix, iy) ? 255 : 0;
    }
  }
  auto mark = [&](const Vec2 & p, int value) {
      int ix = 0, iy = 0;
      if (grid.cell_of(p, ix, iy)) {
        px[static_cast<std::size_t>(iy) * grid.width + ix] = value;
      }
    };
  mark(raw_world, 128);
  mark(refined.point, 64);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << "P2\n" << grid.width << " " << grid.height << "\n255\n";
  for (int iy = grid.height - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.width; ++ix) {
      out << px[static_cast<std::size_t>(iy) * grid.width + ix] << (ix + 1 < grid.width ? " " : "\n");
    }
  }
}

}  // namespace intentnav
