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
#include <iostream>
#include <memory>
#include <set>
#include <vector>

#include "intentnav/episode.hpp"
#include "intentnav/mapping.hpp"
#include "intentnav/rng.hpp"
#include "intentnav/world.hpp"

namespace intentnav
{

struct TaskConfig
{
  MappingConfig mapping;
  double min_separation{5.0};    ///< geodesic start-goal floor
  double max_separation{14.0};
  double start_clearance{0.3};   ///< keeps starts off walls
  double alt_goal_offset{3.0};   ///< alt goal distance from the route end
  double detour_factor{1.5};
  int max_attempts{200};
  std::vector<double> offsets{0.0, 60.0, 120.0, 150.0, 180.0};
};

/// A demonstrated route toward a goal object, with the map built along it.
struct BaseTrajectory
{
  std::vector<Vec2> route;
  InstanceLabel goal_label{0};
  std::shared_ptr<const TopoGraph> map;
};

inline double route_start_heading(const std::vector<Vec2> & route, const MappingConfig & cfg)
{
  return polyline_heading(resample(route, cfg.frame_spacing), 0);
}

inline double route_end_heading(const std::vector<Vec2> & route, const MappingConfig & cfg)
{
  const auto pts = resample(route, cfg.frame_spacing);
  return polyline_heading(pts, pts.empty() ? 0 : pts.size() - 1);
}

inline std::shared_ptr<const TopoGraph> map_route(
  const World & world, const std::vector<Vec2> & route, const MappingConfig & cfg)
{
  return std::make_shared<const TopoGraph>(build_map(world, mapping_frames(route, cfg), cfg));
}

/// True when the goal label is mapped and every node has a finite distance
/// to it.
inline bool map_reaches_goal(const TopoGraph & map, InstanceLabel goal_label)
{
  const NodeId goal = goal_node_for(map, goal_label);
  return goal >= 0 && dijkstra_distances(map, goal).distances().size() == map.nodes().size();
}

/// Free cell centres with at least `min_clear` clearance, row-major order.
inline std::vector<Vec2> clear_cells(const World & world, double min_clear)
{
  const auto clear = clearance_map(world.grid);
  std::vector<Vec2> out;
  for (int iy = 0; iy < world.grid.height; ++iy) {
    for (int ix = 0; ix < world.grid.width; ++ix) {
      if (world.grid.cell_free(ix, iy) && clear[world.grid.index(ix, iy)] >= min_clear) {
        out.push_back(world.grid.center(ix, iy));
      }
    }
  }
  return out;
}

/// Random goal object and start whose geodesic separation lies in
/// [min_separation, max_separation]. Routes whose map leaves any node unable
/// to reach the goal are redrawn.
inline BaseTrajectory make_base_trajectory(const World & world, std::uint64_t seed, const TaskConfig & cfg)
{
  if (world.objects.empty()) {
    throw GenerationError("make_base_trajectory: world has no objects");
  }
  Rng rng(seed);
  const auto starts = clear_cells(world, cfg.start_clearance);
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    const auto & goal = world.objects[rng.below(world.objects.size())];
    const GridField field(world.grid, goal.position);
    std::vector<Vec2> eligible;
    for (const auto & c : starts) {
      const double d = field.at(c);
      if (d >= cfg.min_separation && d <= cfg.max_separation) {
        eligible.push_back(c);
      }
    }
    if (eligible.empty()) {
      continue;
    }
    BaseTrajectory base;
    base.goal_label = goal.label;
    base.route = geodesic_path(world, eligible[rng.below(eligible.size())], goal.position,
        cfg.mapping.clearance_weight, cfg.mapping.clearance);
    if (base.route.size() < 2) {
      continue;
    }
    MappingConfig mc = cfg.mapping;
    mc.noise.seed = mix_seed(cfg.mapping.noise.seed, seed);
    base.map = map_route(world, base.route, mc);
    if (map_reaches_goal(*base.map, base.goal_label)) {
      return base;
    }
  }
  throw GenerationError("make_base_trajectory: no connected map at the required separation after " +
          std::to_string(cfg.max_attempts) + " attempts");
}

/// Episodes of one task family derived from a base trajectory. Opposite
/// yields one episode per configured offset. Tasks without an eligible
/// configuration return nothing and warn.
inline std::vector<EpisodeSpec> make_tasks(
  const std::shared_ptr<const World> & world, const BaseTrajectory & base, TaskKind kind,
  std::uint64_t seed, const TaskConfig & cfg = {})
{
  if (base.route.size() < 2 || !base.map) {
    throw InvalidArgument("make_tasks: base trajectory has no route or map");
  }
  Rng rng(seed);
  EpisodeSpec imitate;
  imitate.world = world;
  imitate.map = base.map;
  imitate.mapping_route = base.route;
  imitate.task = TaskKind::imitate;
  imitate.start = {base.route.front(), route_start_heading(base.route, cfg.mapping)};
  imitate.goal_label = base.goal_label;
  imitate.seed = seed;

  std::vector<EpisodeSpec> out;
  switch (kind) {
    case TaskKind::imitate:
      out.push_back(imitate);
      break;
    case TaskKind::opposite: {
        const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
        for (double off : cfg.offsets) {
          EpisodeSpec s = imitate;
          s.task = TaskKind::opposite;
          s.offset_deg = off;
          s.start.yaw = wrap_angle(imitate.start.yaw + sign * off * kPi / 180.0);
          out.push_back(s);
        }
        break;
      }
    case TaskKind::alt_goal: {
        const GridField from_start(world->grid, imitate.start.position);
        std::set<InstanceLabel> labels;
        for (const auto & n : base.map->nodes()) {
          labels.insert(n.instance_label);
        }
        std::vector<InstanceLabel> eligible;
        for (InstanceLabel lab : labels) {
          const WorldObject * o = world->find_object(lab);
          if (lab == base.goal_label || !o) {
            continue;
          }
          if (distance(o->position, base.route.back()) >= cfg.alt_goal_offset &&
            from_start.at(o->position) >= cfg.min_separation)
          {
            eligible.push_back(lab);
          }
        }
        if (eligible.empty()) {
          std::cerr << "warning: no eligible alt goal, task skipped\n";
          break;
        }
        EpisodeSpec s = imitate;
        s.task = TaskKind::alt_goal;
        s.goal_label = eligible[rng.below(eligible.size())];
        out.push_back(s);
        break;
      }
    case TaskKind::shortcut: {
        const Vec2 a = base.route.front(), b = base.route.back();
        const GridField fa(world->grid, a), fb(world->grid, b);
        const double direct = fa.at(b);
        const auto cells = clear_cells(*world, cfg.start_clearance);
        for (int attempt = 0; attempt < cfg.max_attempts && out.empty(); ++attempt) {
          const Vec2 via = cells[rng.below(cells.size())];
          const double len = fa.at(via) + fb.at(via);
          if (!std::isfinite(len) || len < cfg.detour_factor * direct || len > 2.0 * cfg.detour_factor * direct) {
            continue;
          }
          auto route = geodesic_path(*world, a, via, cfg.mapping.clearance_weight, cfg.mapping.clearance);
          const auto tail = geodesic_path(*world, via, b, cfg.mapping.clearance_weight, cfg.mapping.clearance);
          route.insert(route.end(), tail.begin() + 1, tail.end());
          if (polyline_length(route) < cfg.detour_factor * direct) {
            continue;
          }
          MappingConfig mc = cfg.mapping;
          mc.noise.seed = mix_seed(cfg.mapping.noise.seed, seed);
          auto map = map_route(*world, route, mc);
          if (!map_reaches_goal(*map, base.goal_label)) {
            continue;
          }
          EpisodeSpec s = imitate;
          s.task = TaskKind::shortcut;
          s.map = map;
          s.mapping_route = route;
          s.start.yaw = route_start_heading(route, cfg.mapping);
          out.push_back(s);
        }
        if (out.empty()) {
          std::cerr << "warning: no detour satisfies the shortcut contract, task skipped\n";
        }
        break;
      }
    case TaskKind::reverse: {
        const Vec2 start = base.route.back();
        const GridField from_start(world->grid, start);
        std::set<InstanceLabel> labels;
        for (const auto & n : base.map->nodes()) {
          labels.insert(n.instance_label);
        }
        const WorldObject * best = nullptr;
        for (InstanceLabel lab : labels) {
          const WorldObject * o = world->find_object(lab);
          if (lab == base.goal_label || !o || from_start.at(o->position) < cfg.min_separation) {
            continue;
          }
          if (!best || distance(o->position, base.route.front()) < distance(best->position, base.route.front())) {
            best = o;
          }
        }
        if (!best) {
          std::cerr << "warning: no eligible reverse goal, task skipped\n";
          break;
        }
        EpisodeSpec s = imitate;
        s.task = TaskKind::reverse;
        s.start = {start, wrap_angle(route_end_heading(base.route, cfg.mapping) + kPi)};
        s.goal_label = best->label;
        out.push_back(s);
        break;
      }
  }
  return out;
}

}  // namespace intentnav
