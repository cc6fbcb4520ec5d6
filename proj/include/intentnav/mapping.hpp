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
#include <map>
#include <vector>

#include "intentnav/costmap.hpp"
#include "intentnav/planner.hpp"
#include "intentnav/topomap.hpp"
#include "intentnav/world.hpp"

namespace intentnav
{

struct MappingConfig
{
  SensorSpec sensor;
  double frame_spacing{0.5};     ///< metres of path between mapping frames
  int scan_views{24};            ///< look-around frames at the start; 0 disables
  double max_turn{kPi / 12};     ///< larger heading changes get in-place frames
  int association_window{32};     ///< earlier non-empty frames linked to each frame
  double clearance_weight{4.0};  ///< route preference for corridor centres
  double clearance{0.5};
  AssociationNoise noise;
};

/// Heading of a polyline at vertex i (toward the next vertex; the last
/// vertex reuses the previous segment).
inline double polyline_heading(const std::vector<Vec2> & pts, std::size_t i)
{
  if (pts.size() < 2) {
    return 0.0;
  }
  std::size_t a = i, b = i + 1;
  if (b >= pts.size()) {
    a = pts.size() - 2;
    b = pts.size() - 1;
  }
  while (b + 1 < pts.size() && distance(pts[a], pts[b]) < 1e-9) {
    ++b;
  }
  return wrap_angle(heading_of(pts[b] - pts[a]));
}

/// Mapping camera poses for a route: a look-around at the start followed by
/// frames every frame_spacing metres facing along the route. Turns sharper
/// than max_turn are swept in place.
inline std::vector<Pose2> mapping_frames(const std::vector<Vec2> & route, const MappingConfig & cfg)
{
  std::vector<Pose2> frames;
  if (route.empty()) {
    return frames;
  }
  const auto pts = resample(route, cfg.frame_spacing);
  const double h0 = polyline_heading(pts, 0);
  for (int k = 0; k < cfg.scan_views; ++k) {
    frames.push_back({pts.front(), wrap_angle(h0 + 2.0 * kPi * k / cfg.scan_views)});
  }
  double yaw = h0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double next = polyline_heading(pts, i);
    const double turn = wrap_angle(next - yaw);
    const int sweeps = static_cast<int>(std::ceil(std::abs(turn) / cfg.max_turn)) - 1;
    const Vec2 at = pts[i];
    for (int k = 1; k <= sweeps; ++k) {
      frames.push_back({at, wrap_angle(yaw + turn * k / (sweeps + 1))});
    }
    frames.push_back({pts[i], next});
    yaw = next;
  }
  return frames;
}

/// Builds the object graph from mapping frames: one observation per frame,
/// identity edges to the last `association_window` frames that saw anything.
inline TopoGraph build_map(const World & world, const std::vector<Pose2> & frames, const MappingConfig & cfg)
{
  TopoGraph g;
  std::vector<int> recent;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    ObservationRecord rec;
    rec.frame_index = static_cast<int>(f);
    rec.pose = frames[f];
    for (const auto & o : observe(world, frames[f], cfg.sensor)) {
      rec.detections.push_back({o.label, o.position, o.angular_extent});
    }
    g.add_observation(rec);
    if (rec.detections.empty()) {
      continue;
    }
    for (auto it = recent.rbegin(); it != recent.rend(); ++it) {
      g.associate_frames(*it, rec.frame_index, cfg.noise);
    }
    recent.push_back(rec.frame_index);
    if (static_cast<int>(recent.size()) > cfg.association_window) {
      recent.erase(recent.begin());
    }
  }
  return g;
}

/// Lowest-id node carrying the label, or -1.
inline NodeId goal_node_for(const TopoGraph & g, InstanceLabel label)
{
  const auto ids = g.nodes_with_label(label);
  return ids.empty() ? -1 : ids.front();
}

/// Resolves observed labels to map nodes: per label, the node with the
/// smallest distance to the goal (then smallest id).
class LabelMatcher
{
public:
  LabelMatcher(const TopoGraph & g, const DistanceField & field)
  {
    for (const auto & n : g.nodes()) {
      const auto it = best_.find(n.instance_label);
      const double d = field.at(n.node_id);
      if (it == best_.end()) {
        best_[n.instance_label] = n.node_id;
        continue;
      }
      const double cur = field.at(it->second);
      if (d < cur || (d == cur && n.node_id < it->second)) {
        it->second = n.node_id;
      }
    }
  }

  /// -1 when the label is not in the map.
  NodeId match(InstanceLabel label) const
  {
    const auto it = best_.find(label);
    return it == best_.end() ? -1 : it->second;
  }

private:
  std::map<InstanceLabel, NodeId> best_;
};

/// Matched, visible map nodes of one observation.
struct MatchedView
{
  std::vector<VisibleObject> objects;
  std::vector<NodeId> nodes;
};

inline MatchedView match_observation(const Observation & obs, const LabelMatcher & matcher)
{
  MatchedView view;
  for (const auto & o : obs) {
    const NodeId id = matcher.match(o.label);
    if (id < 0) {
      continue;
    }
    view.objects.push_back({id, o.bearing, o.range, o.angular_extent});
    view.nodes.push_back(id);
  }
  return view;
}

}  // namespace intentnav
