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
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "intentnav/errors.hpp"
#include "intentnav/geom.hpp"
#include "intentnav/topomap.hpp"

namespace intentnav
{

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Topological distance of every node to one goal node, plus the
/// shortest-path successor of each reached node.
class DistanceField
{
public:
  DistanceField() = default;
  explicit DistanceField(NodeId goal)
  : goal_(goal) {}

  NodeId goal() const {return goal_;}

  /// Infinity for unreachable or unknown nodes.
  double at(NodeId n) const
  {
    const auto it = dist_.find(n);
    return it == dist_.end() ? kInf : it->second;
  }

  /// Next node toward the goal; the goal maps to itself.
  NodeId successor(NodeId n) const
  {
    const auto it = next_.find(n);
    if (it == next_.end()) {
      throw InvalidArgument("node " + std::to_string(n) + " cannot reach the goal");
    }
    return it->second;
  }

  void set(NodeId n, double d, NodeId next)
  {
    dist_[n] = d;
    next_[n] = next;
  }

  const std::unordered_map<NodeId, double> & distances() const {return dist_;}

private:
  NodeId goal_{0};
  std::unordered_map<NodeId, double> dist_;
  std::unordered_map<NodeId, NodeId> next_;
};

using PathToGoal = std::vector<NodeId>;

/// Single-source shortest distances from the goal on the undirected graph.
/// Heap order is (distance, node_id), so successors are reproducible.
inline DistanceField dijkstra_distances(const TopoGraph & graph, NodeId goal)
{
  if (!graph.has_node(goal)) {
    throw InvalidArgument("dijkstra_distances: unknown goal node " + std::to_string(goal));
  }
  DistanceField field(goal);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::unordered_map<NodeId, double> best;
  std::unordered_map<NodeId, NodeId> via;
  best[goal] = 0.0;
  via[goal] = goal;
  heap.push({0.0, goal});
  while (!heap.empty()) {
    const auto [d, n] = heap.top();
    heap.pop();
    if (field.distances().count(n)) {
      continue;
    }
    field.set(n, d, via[n]);
    for (const auto & nb : graph.neighbors(n)) {
      if (field.distances().count(nb.node)) {
        continue;
      }
      const double nd = d + nb.weight;
      const auto it = best.find(nb.node);
      if (it == best.end() || nd < it->second || (nd == it->second && n < via[nb.node])) {
        best[nb.node] = nd;
        via[nb.node] = n;
        heap.push({nd, nb.node});
      }
    }
  }
  return field;
}

/// Shortest path from start to the goal by following successors.
inline PathToGoal path_to_goal(const DistanceField & field, NodeId start)
{
  PathToGoal path{start};
  NodeId cur = start;
  while (cur != field.goal()) {
    cur = field.successor(cur);
    path.push_back(cur);
  }
  return path;
}

/// Visible node with the smallest finite distance; ties go to the smallest id.
inline NodeId select_subgoal(std::span<const NodeId> visible, const DistanceField & field)
{
  bool found = false;
  NodeId best = 0;
  double best_d = kInf;
  for (NodeId n : visible) {
    const double d = field.at(n);
    if (!std::isfinite(d)) {
      continue;
    }
    if (!found || d < best_d || (d == best_d && n < best)) {
      found = true;
      best = n;
      best_d = d;
    }
  }
  if (!found) {
    throw NoSubgoal("no visible node with a finite distance to the goal");
  }
  return best;
}

/// Index into path of the first node whose distance is strictly below the
/// distance of path.front(). A path that starts at the goal returns 0.
inline std::size_t two_hop_index(std::span<const NodeId> path, const DistanceField & field)
{
  if (path.empty()) {
    throw InvalidArgument("two_hop_node: empty path");
  }
  const double d0 = field.at(path.front());
  if (d0 == 0.0) {
    return 0;
  }
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (field.at(path[i]) < d0) {
      return i;
    }
  }
  throw InvalidArgument("two_hop_node: path does not reach a lower distance");
}

inline NodeId two_hop_node(std::span<const NodeId> path, const DistanceField & field)
{
  return path[two_hop_index(path, field)];
}

/// Unit direction toward the 2-hop node, in the robot frame.
struct Intent
{
  Vec2 z{1.0, 0.0};
  AngleRad phi;
  NodeId subgoal{0};
  NodeId next_hop{0};
};

inline Intent intent_from_angle(double phi, NodeId subgoal = 0, NodeId next_hop = 0)
{
  Intent out;
  out.phi = AngleRad(phi);
  out.z = {std::cos(out.phi.value()), std::sin(out.phi.value())};
  out.subgoal = subgoal;
  out.next_hop = next_hop;
  return out;
}

inline Intent compute_intent(const Pose2 & pose, const Vec2 & next_pos)
{
  if (next_pos == pose.position) {
    throw DegenerateGeometry("compute_intent: 2-hop node coincides with robot position");
  }
  return intent_from_angle(bearing(pose, next_pos).value());
}

/// Rotates the intent by a constant bias epsilon (radians).
inline Intent perturb_intent(const Intent & intent, double epsilon)
{
  if (epsilon == 0.0) {
    return intent;
  }
  return intent_from_angle(intent.phi.value() + epsilon, intent.subgoal, intent.next_hop);
}

/// Full planning step for one observation: sub-goal, shortest path, 2-hop
/// node and intent.
struct PlanResult
{
  NodeId subgoal;
  NodeId next_hop;
  PathToGoal path;
  Intent intent;
};

inline PlanResult plan_step(
  const TopoGraph & graph, const DistanceField & field,
  std::span<const NodeId> visible, const Pose2 & pose)
{
  PlanResult r;
  r.subgoal = select_subgoal(visible, field);
  r.path = path_to_goal(field, r.subgoal);
  r.next_hop = two_hop_node(r.path, field);
  r.intent = compute_intent(pose, graph.node(r.next_hop).position);
  r.intent.subgoal = r.subgoal;
  r.intent.next_hop = r.next_hop;
  return r;
}

}  // namespace intentnav
