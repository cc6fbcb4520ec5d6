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


#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "intentnav/planner.hpp"
#include "oracles.hpp"

namespace intentnav
{
namespace
{

TopoGraph chain(std::vector<double> weights)
{
  std::vector<ObjectNode> nodes;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i <= weights.size(); ++i) {
    nodes.push_back({static_cast<NodeId>(i), static_cast<InstanceLabel>(i), {static_cast<double>(i), 0.0}, 0, 0.1});
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1), weights[i]});
  }
  return TopoGraph(nodes, edges);
}

DistanceField field_of(const std::vector<std::pair<NodeId, double>> & d)
{
  DistanceField f(-1);
  for (const auto & [n, v] : d) {
    if (std::isfinite(v)) {
      f.set(n, v, n);
    }
  }
  return f;
}

TEST(Dijkstra, ChainExample)
{
  const auto f = dijkstra_distances(chain({1, 2}), 2);
  EXPECT_EQ(f.at(2), 0.0);
  EXPECT_EQ(f.at(1), 2.0);
  EXPECT_EQ(f.at(0), 3.0);
}

TEST(Dijkstra, IdentityEdgeIsFree)
{
  const auto f = dijkstra_distances(chain({0, 1}), 2);
  EXPECT_EQ(f.at(0), 1.0);
  EXPECT_EQ(f.at(1), 1.0);
}

TEST(Dijkstra, UnknownGoalThrows)
{
  EXPECT_THROW(dijkstra_distances(chain({1}), 7), InvalidArgument);
}

TEST(Dijkstra, UnreachableIsInfinite)
{
  std::vector<ObjectNode> nodes{{0, 0, {0, 0}, 0, 0.1}, {1, 1, {1, 0}, 0, 0.1}, {2, 2, {5, 0}, 0, 0.1}};
  const auto f = dijkstra_distances(TopoGraph(nodes, {{0, 1, 1.0}}), 0);
  EXPECT_TRUE(std::isinf(f.at(2)));
  EXPECT_THROW(f.successor(2), InvalidArgument);
}

TEST(Dijkstra, MatchesPathEnumeration)
{
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const TopoGraph g = oracle::random_graph(rng);
    const NodeId goal = static_cast<NodeId>(rng.below(g.size()));
    const auto f = dijkstra_distances(g, goal);
    for (const auto & [n, d] : oracle::enumerate_distances(g, goal)) {
      EXPECT_EQ(f.at(n), d) << "trial " << trial << " node " << n;
    }
  }
}

TEST(Dijkstra, TriangleInequalityOverEdges)
{
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const TopoGraph g = oracle::random_graph(rng, 15);
    const auto f = dijkstra_distances(g, 0);
    EXPECT_EQ(f.at(0), 0.0);
    for (const auto & e : g.edges()) {
      EXPECT_LE(f.at(e.a), f.at(e.b) + e.weight);
      EXPECT_LE(f.at(e.b), f.at(e.a) + e.weight);
    }
  }
}

TEST(Dijkstra, PathWeightEqualsDistance)
{
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const TopoGraph g = oracle::random_graph(rng, 12);
    const auto f = dijkstra_distances(g, 0);
    for (const auto & n : g.nodes()) {
      if (std::isinf(f.at(n.node_id))) {
        continue;
      }
      const auto path = path_to_goal(f, n.node_id);
      EXPECT_EQ(path.back(), 0);
      double total = 0.0;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        ASSERT_TRUE(g.has_edge(path[i], path[i + 1]));
        double w = -1.0;
        for (const auto & nb : g.neighbors(path[i])) {
          if (nb.node == path[i + 1]) {
            w = nb.weight;
          }
        }
        total += w;
      }
      EXPECT_NEAR(total, f.at(n.node_id), 1e-9);
    }
  }
}

TEST(SelectSubgoal, Examples)
{
  const auto f = field_of({{1, 3.0}, {2, 1.0}, {3, 2.0}, {4, 2.0}});
  EXPECT_EQ(select_subgoal(std::vector<NodeId>{1, 2}, f), 2);
  EXPECT_EQ(select_subgoal(std::vector<NodeId>{4, 3}, f), 3);
  EXPECT_EQ(select_subgoal(std::vector<NodeId>{3, 4}, f), 3);
}

TEST(SelectSubgoal, NoFiniteCandidateThrows)
{
  const auto f = field_of({{1, 3.0}});
  EXPECT_THROW(select_subgoal(std::vector<NodeId>{9}, f), NoSubgoal);
  EXPECT_THROW(select_subgoal(std::vector<NodeId>{}, f), NoSubgoal);
}

TEST(SelectSubgoal, SkipsInfiniteNodes)
{
  const auto f = field_of({{1, 3.0}});
  EXPECT_EQ(select_subgoal(std::vector<NodeId>{9, 1}, f), 1);
}

TEST(TwoHop, Examples)
{
  auto f = field_of({{0, 3}, {1, 3}, {2, 2}, {3, 1}, {4, 0}});
  EXPECT_EQ(two_hop_index(std::vector<NodeId>{0, 1, 2, 3, 4}, f), 2u);
  f = field_of({{0, 2}, {1, 0}});
  EXPECT_EQ(two_hop_index(std::vector<NodeId>{0, 1}, f), 1u);
  f = field_of({{0, 0}});
  EXPECT_EQ(two_hop_index(std::vector<NodeId>{0}, f), 0u);
  EXPECT_EQ(two_hop_node(std::vector<NodeId>{0}, f), 0);
}

TEST(TwoHop, StrictDecreaseOnRandomGraphs)
{
  Rng rng(34);
  for (int trial = 0; trial < 1000; ++trial) {
    const TopoGraph g = oracle::random_graph(rng);
    const NodeId goal = static_cast<NodeId>(rng.below(g.size()));
    const auto f = dijkstra_distances(g, goal);
    std::vector<NodeId> visible;
    for (const auto & n : g.nodes()) {
      if (rng.bernoulli(0.5)) {
        visible.push_back(n.node_id);
      }
    }
    visible.push_back(goal);
    const NodeId sub = select_subgoal(visible, f);
    const auto path = path_to_goal(f, sub);
    const NodeId hop = two_hop_node(path, f);
    std::vector<double> d;
    for (NodeId n : path) {
      d.push_back(f.at(n));
    }
    EXPECT_EQ(hop, path[oracle::first_strict_decrease(d)]);
    if (f.at(sub) > 0.0) {
      EXPECT_LT(f.at(hop), f.at(sub));
    } else {
      EXPECT_EQ(hop, sub);
    }
  }
}

TEST(TwoHop, ScaleInvariant)
{
  Rng rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    const TopoGraph g = oracle::random_graph(rng);
    const double s = rng.uniform(0.1, 10.0);
    std::vector<ObjectNode> nodes = g.nodes();
    for (auto & n : nodes) {
      n.position = n.position * s;
    }
    std::vector<Edge> edges = g.edges();
    for (auto & e : edges) {
      e.weight *= s;
    }
    const TopoGraph h(nodes, edges);
    const auto f = dijkstra_distances(g, 0);
    const auto fs = dijkstra_distances(h, 0);
    for (const auto & n : g.nodes()) {
      if (std::isinf(f.at(n.node_id))) {
        continue;
      }
      EXPECT_EQ(two_hop_node(path_to_goal(f, n.node_id), f), two_hop_node(path_to_goal(fs, n.node_id), fs));
    }
  }
}

TEST(Intent, Examples)
{
  Intent i = compute_intent({{0, 0}, 0}, {1, 0});
  EXPECT_NEAR(i.z.x, 1.0, 1e-12);
  EXPECT_NEAR(i.z.y, 0.0, 1e-12);
  i = compute_intent({{0, 0}, 0}, {1, 1});
  EXPECT_NEAR(i.phi.value(), kPi / 4, 1e-12);
  EXPECT_NEAR(i.z.x, std::sqrt(2.0) / 2, 1e-12);
  EXPECT_NEAR(i.z.y, std::sqrt(2.0) / 2, 1e-12);
  i = compute_intent({{0, 0}, kPi / 2}, {0, 2});
  EXPECT_NEAR(i.z.x, 1.0, 1e-12);
  EXPECT_NEAR(i.z.y, 0.0, 1e-12);
}

TEST(Intent, DegenerateThrows)
{
  EXPECT_THROW(compute_intent({{1, 1}, 0}, {1, 1}), DegenerateGeometry);
}

TEST(Intent, UnitNormAndRotationInvariance)
{
  Rng rng(36);
  for (int trial = 0; trial < 1000; ++trial) {
    const Pose2 pose{{rng.uniform(-10, 10), rng.uniform(-10, 10)}, rng.uniform(-kPi, kPi)};
    const Vec2 next{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const Intent a = compute_intent(pose, next);
    EXPECT_NEAR(a.z.norm(), 1.0, 1e-12);
    const Vec2 pivot{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const double delta = rng.uniform(-kPi, kPi);
    const Pose2 rp{pivot + rotate(pose.position - pivot, delta), wrap_angle(pose.yaw + delta)};
    const Intent b = compute_intent(rp, pivot + rotate(next - pivot, delta));
    EXPECT_NEAR(a.z.x, b.z.x, 1e-9);
    EXPECT_NEAR(a.z.y, b.z.y, 1e-9);
  }
}

TEST(Perturb, Examples)
{
  const Intent i = compute_intent({{0, 0}, 0}, {1, 2});
  const Intent same = perturb_intent(i, 0.0);
  EXPECT_EQ(same.z, i.z);
  EXPECT_EQ(same.phi.value(), i.phi.value());
  const Intent flipped = perturb_intent(i, kPi);
  EXPECT_NEAR(flipped.z.x, -i.z.x, 1e-12);
  EXPECT_NEAR(flipped.z.y, -i.z.y, 1e-12);
  const Intent small = perturb_intent(i, 0.2);
  EXPECT_NEAR(wrap_angle(small.phi.value() - i.phi.value()), 0.2, 1e-12);
  EXPECT_NEAR(small.z.norm(), 1.0, 1e-12);
}

TEST(PlanStep, PointsAtTwoHopNode)
{
  const TopoGraph g = chain({0.0, 2.0, 3.0});
  const auto f = dijkstra_distances(g, 3);
  const std::vector<NodeId> visible{0, 1};
  const auto r = plan_step(g, f, visible, {{0, -1}, kPi / 2});
  EXPECT_EQ(r.subgoal, 0);
  EXPECT_EQ(r.next_hop, 2);
  EXPECT_NEAR(r.intent.phi.value(), wrap_angle(std::atan2(1.0, 2.0) - kPi / 2), 1e-12);
}

TEST(PlanStep, GoalAsSubgoalPointsAtGoal)
{
  const TopoGraph g = chain({1.0});
  const auto f = dijkstra_distances(g, 1);
  const std::vector<NodeId> visible{0, 1};
  const auto r = plan_step(g, f, visible, {{1, -1}, 0});
  EXPECT_EQ(r.subgoal, 1);
  EXPECT_EQ(r.next_hop, 1);
  EXPECT_NEAR(r.intent.phi.value(), kPi / 2, 1e-12);
}

}  // namespace
}  // namespace intentnav
