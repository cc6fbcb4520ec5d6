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
#include <iostream>
#include <optional>
#include <vector>

#include "intentnav/costmap.hpp"
#include "intentnav/mapping.hpp"
#include "intentnav/planner.hpp"
#include "intentnav/policy.hpp"
#include "intentnav/rng.hpp"
#include "intentnav/world.hpp"

namespace intentnav
{

struct TrainingDataConfig
{
  RasterSpec raster;
  MappingConfig mapping;
  double step_len{0.25};
  double lookahead{0.6};             ///< L, metres along the route
  double yaw_jitter{kPi / 6};        ///< uniform heading noise on route poses
  double pos_jitter{0.15};           ///< uniform position noise radius
  double rotation_step{kPi / 12};    ///< spacing of interpolated start turns
  double w_max{1.0};
  std::uint64_t seed{7};
};

/// One demonstration: reach goal_label from start, initially facing
/// initial_yaw.
struct TrainingEpisode
{
  Vec2 start;
  InstanceLabel goal_label{0};
  double initial_yaw{0.0};
};

/// A demonstration pose with its imitation target (world frame).
struct DemoPose
{
  Pose2 pose;
  Vec2 target;
};

/// Interpolated poses of a route: in-place turn from initial_yaw toward the
/// route heading, then one pose every step_len along the route with the
/// configured jitter. Targets sit `lookahead` further along the route.
inline std::vector<DemoPose> demonstration_poses(
  const World & world, const std::vector<Vec2> & route, double initial_yaw,
  const TrainingDataConfig & cfg, Rng & rng)
{
  std::vector<DemoPose> out;
  if (route.size() < 2) {
    return out;
  }
  const auto pts = resample(route, cfg.step_len);
  const double h0 = polyline_heading(pts, 0);
  const Vec2 first_target = point_at_arclength(pts, cfg.lookahead);
  const double turn = wrap_angle(h0 - initial_yaw);
  const int turns = static_cast<int>(std::floor(std::abs(turn) / cfg.rotation_step));
  for (int k = 0; k < turns; ++k) {
    const double yaw = wrap_angle(initial_yaw + (turn > 0 ? 1.0 : -1.0) * k * cfg.rotation_step);
    out.push_back({{pts.front(), yaw}, first_target});
  }
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0) {
      s += distance(pts[i - 1], pts[i]);
    }
    Vec2 pos = pts[i];
    if (cfg.pos_jitter > 0.0) {
      const double r = cfg.pos_jitter * std::sqrt(rng.uniform());
      const double a = rng.uniform(-kPi, kPi);
      const Vec2 cand = pos + Vec2{r * std::cos(a), r * std::sin(a)};
      if (world.grid.is_free(cand)) {
        pos = cand;
      }
    }
    const double yaw = wrap_angle(polyline_heading(pts, i) + rng.uniform(-cfg.yaw_jitter, cfg.yaw_jitter));
    out.push_back({{pos, yaw}, point_at_arclength(pts, s + cfg.lookahead)});
  }
  return out;
}

/// Everything the controller sees at one pose: raster, intent, sub-goal
/// distance. The intent is empty when no mapped node is visible.
struct ControllerInput
{
  EgoRaster raster;
  std::optional<Intent> intent;
  double subgoal_distance{0.0};
  bool degenerate{false};  ///< robot sits on the 2-hop node; no bearing
};

inline ControllerInput controller_input(
  const World & world, const TopoGraph & map, const DistanceField & field,
  const LabelMatcher & matcher, const Pose2 & pose, const SensorSpec & sensor,
  const RasterSpec & raster)
{
  ControllerInput in;
  const auto view = match_observation(observe(world, pose, sensor), matcher);
  in.raster = rasterize(view.objects, field, raster);
  if (view.nodes.empty()) {
    return in;
  }
  try {
    const auto plan = plan_step(map, field, view.nodes, pose);
    in.intent = plan.intent;
    in.subgoal_distance = field.at(plan.subgoal);
  } catch (const NoSubgoal &) {
  } catch (const DegenerateGeometry &) {
    in.degenerate = true;
  }
  return in;
}

/// Imitation dataset from geodesic demonstrations. Each episode is mapped
/// along its own route; episodes whose goal is unreachable or never mapped
/// are skipped with a warning.
inline std::vector<TrainSample> generate_training_data(
  const World & world, const std::vector<TrainingEpisode> & episodes, const TrainingDataConfig & cfg)
{
  std::vector<TrainSample> data;
  Rng rng(mix_seed(cfg.seed, world.seed));
  for (std::size_t e = 0; e < episodes.size(); ++e) {
    const auto & ep = episodes[e];
    const WorldObject * goal = world.find_object(ep.goal_label);
    if (!goal) {
      std::cerr << "warning: training episode " << e << " has unknown goal label\n";
      continue;
    }
    const auto route = geodesic_path(world, ep.start, goal->position, cfg.mapping.clearance_weight, cfg.mapping.clearance);
    if (route.size() < 2) {
      std::cerr << "warning: training episode " << e << " goal unreachable, skipped\n";
      continue;
    }
    const TopoGraph map = build_map(world, mapping_frames(route, cfg.mapping), cfg.mapping);
    const NodeId goal_node = goal_node_for(map, ep.goal_label);
    if (goal_node < 0) {
      std::cerr << "warning: training episode " << e << " goal never mapped, skipped\n";
      continue;
    }
    const DistanceField field = dijkstra_distances(map, goal_node);
    const LabelMatcher matcher(map, field);
    Intent last = intent_from_angle(0.0);
    for (const auto & demo : demonstration_poses(world, route, ep.initial_yaw, cfg, rng)) {
      auto in = controller_input(world, map, field, matcher, demo.pose, cfg.mapping.sensor, cfg.raster);
      if (in.intent) {
        last = *in.intent;
      }
      TrainSample s;
      s.raster = std::move(in.raster);
      s.intent = last;
      s.aux_dist = in.subgoal_distance;
      Vec2 t = world_to_robot(demo.pose, demo.target);
      if (t.norm() > cfg.w_max) {
        t = t * (cfg.w_max / t.norm());
      }
      s.target = t;
      data.push_back(std::move(s));
    }
  }
  return data;
}

}  // namespace intentnav
