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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "intentnav/bev.hpp"
#include "intentnav/costmap.hpp"
#include "intentnav/mapping.hpp"
#include "intentnav/planner.hpp"
#include "intentnav/policy.hpp"
#include "intentnav/rng.hpp"
#include "intentnav/training_data.hpp"
#include "intentnav/world.hpp"

namespace intentnav
{

enum class TaskKind { imitate, alt_goal, shortcut, reverse, opposite };

inline std::string to_string(TaskKind t)
{
  switch (t) {
    case TaskKind::imitate: return "imitate";
    case TaskKind::alt_goal: return "alt_goal";
    case TaskKind::shortcut: return "shortcut";
    case TaskKind::reverse: return "reverse";
    case TaskKind::opposite: return "opposite";
  }
  return "unknown";
}

inline TaskKind parse_task(std::string_view s)
{
  for (auto t : {TaskKind::imitate, TaskKind::alt_goal, TaskKind::shortcut, TaskKind::reverse, TaskKind::opposite}) {
    if (to_string(t) == s) {
      return t;
    }
  }
  throw ConfigError("unknown task '" + std::string(s) + "'");
}

/// A mapped environment shared by every episode that uses it.
struct MappedWorld
{
  std::shared_ptr<const World> world;
  std::shared_ptr<const TopoGraph> map;
  std::vector<Vec2> mapping_route;
};

struct EpisodeSpec
{
  std::shared_ptr<const World> world;
  std::shared_ptr<const TopoGraph> map;
  std::vector<Vec2> mapping_route;  ///< drawn in trajectory plots
  TaskKind task{TaskKind::imitate};
  double offset_deg{0.0};           ///< opposite task heading offset
  Pose2 start;
  InstanceLabel goal_label{0};
  double noise_alpha_deg{0.0};
  ConditioningMode mode{ConditioningMode::film};
  bool bev{true};
  std::uint64_t seed{0};
  int episode{0};
};

struct RunConfig
{
  SensorSpec sensor;
  RasterSpec raster;
  BevSpec bev;
  RefineParams refine;
  double step_len{0.25};
  int max_steps{300};
  double success_radius{1.0};
  double turn_step{kPi / 6};
};

struct StepRecord
{
  Pose2 pose;
  Vec2 waypoint;           ///< executed world-frame waypoint
  RefineStatus status{RefineStatus::direct};
  double intent_phi{0.0};
  bool planned{false};     ///< false when the previous intent was reused
};

struct EpisodeResult
{
  bool success{false};
  int steps{0};
  double p{0.0};   ///< executed path length
  double l{0.0};   ///< shortest path length
  double d0{0.0};  ///< initial geodesic distance to goal
  double dT{0.0};  ///< final geodesic distance to goal
  double epsilon{0.0};
  std::vector<StepRecord> trace;
  Pose2 final_pose;
};

/// Per-world caches reused across episodes.
struct EpisodeCache
{
  std::shared_ptr<const InflatedOccupancy> inflated;
};

/// Closed-loop rollout: observe, plan, rasterize, predict, refine, step,
/// until within success_radius of the goal object or max_steps.
inline EpisodeResult run_episode(
  const EpisodeSpec & spec, const PolicyParams & policy, const RunConfig & cfg,
  EpisodeCache * cache = nullptr)
{
  if (!spec.world || !spec.map) {
    throw InvalidArgument("run_episode: episode has no world or map");
  }
  if (policy.config.mode != spec.mode) {
    throw InvalidArgument(
      "run_episode: policy mode " + std::string(to_string(policy.config.mode)) +
      " does not match episode mode " + std::string(to_string(spec.mode)));
  }
  const World & world = *spec.world;
  const WorldObject * goal = world.find_object(spec.goal_label);
  if (!goal) {
    throw InvalidArgument("run_episode: goal label " + std::to_string(spec.goal_label) + " not in world");
  }
  const NodeId goal_node = goal_node_for(*spec.map, spec.goal_label);
  std::shared_ptr<const InflatedOccupancy> inflated;
  if (spec.bev) {
    if (cache && cache->inflated) {
      inflated = cache->inflated;
    } else {
      inflated = std::make_shared<const InflatedOccupancy>(inflate(world, cfg.bev.inflation));
      if (cache) {
        cache->inflated = inflated;
      }
    }
  }

  const DistanceField field = goal_node < 0 ? DistanceField(-1) : dijkstra_distances(*spec.map, goal_node);
  const LabelMatcher matcher(*spec.map, field);
  const GridField to_goal(world.grid, goal->position);

  EpisodeResult res;
  Rng rng(spec.seed);
  const double alpha = spec.noise_alpha_deg * kPi / 180.0;
  res.epsilon = alpha > 0.0 ? rng.uniform(-alpha, alpha) : 0.0;
  res.d0 = to_goal.at(spec.start.position);
  res.l = res.d0;

  PolicyWorkspace ws;
  AgentState state{spec.start, 0, 0.0};
  Intent last = intent_from_angle(0.0);
  auto reached = [&](const Pose2 & p) {return distance(p.position, goal->position) <= cfg.success_radius;};

  while (!reached(state.pose) && state.steps_taken < cfg.max_steps) {
    auto in = controller_input(world, *spec.map, field, matcher, state.pose, cfg.sensor, cfg.raster);
    StepRecord rec;
    rec.pose = state.pose;
    RefinedWaypoint wp;
    if (!in.intent && !in.degenerate) {
      wp.status = RefineStatus::fallback;
      wp.point = state.pose.position;
    } else {
      rec.planned = in.intent.has_value();
      if (in.intent) {
        last = perturb_intent(*in.intent, res.epsilon);
      }
      const Vec2 w = forward(ws, in.raster, last, in.subgoal_distance, policy);
      if (spec.bev) {
        wp = refine(make_traversability_grid(*inflated, world.grid, state.pose.position, cfg.bev), w, state.pose, cfg.refine);
      } else {
        wp = {robot_to_world(state.pose, w), RefineStatus::direct};
      }
    }
    rec.waypoint = wp.point;
    rec.status = wp.status;
    rec.intent_phi = last.phi.value();
    res.trace.push_back(rec);
    state = step(world, state, wp, cfg.step_len, cfg.turn_step);
  }
  res.success = reached(state.pose);
  res.steps = state.steps_taken;
  res.p = state.path_length;
  res.dT = to_goal.at(state.pose.position);
  res.final_pose = state.pose;
  return res;
}

}  // namespace intentnav
