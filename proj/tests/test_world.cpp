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
#include <set>

#include "intentnav/mapping.hpp"
#include "intentnav/world.hpp"
#include "oracles.hpp"

namespace intentnav
{
namespace
{

World empty_world(int cells = 100, double res = 0.05)
{
  World w;
  w.grid.width = w.grid.height = cells;
  w.grid.resolution = res;
  w.grid.free.assign(static_cast<std::size_t>(cells) * cells, 1);
  return w;
}

TEST(GenerateWorld, SameSeedSameWorld)
{
  EXPECT_EQ(generate_world(5), generate_world(5));
  EXPECT_FALSE(generate_world(5) == generate_world(6));
}

TEST(GenerateWorld, FreeSpaceConnectedAndObjectsValid)
{
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const WorldConfig cfg;
    const World w = generate_world(seed, cfg);
    EXPECT_EQ(detail::flood_count(w.grid), w.grid.free_count());
    EXPECT_EQ(static_cast<int>(w.objects.size()), cfg.objects);
    const auto clear = clearance_map(w.grid);
    std::set<InstanceLabel> labels;
    for (const auto & o : w.objects) {
      ASSERT_TRUE(w.grid.is_free(o.position));
      const int ix = w.grid.cell_x(o.position.x), iy = w.grid.cell_y(o.position.y);
      EXPECT_GE(clear[w.grid.index(ix, iy)], 2 * cfg.resolution);
      EXPECT_TRUE(labels.insert(o.label).second);
    }
    EXPECT_LE(w.bounds_x(), 30.0);
  }
}

TEST(GenerateWorld, OneRoomTenObjects)
{
  WorldConfig cfg;
  cfg.rooms = 1;
  cfg.objects = 10;
  const World w = generate_world(3, cfg);
  ASSERT_EQ(w.objects.size(), 10u);
  for (const auto & o : w.objects) {
    EXPECT_TRUE(w.grid.is_free(o.position));
  }
  EXPECT_EQ(detail::flood_count(w.grid), w.grid.free_count());
}

TEST(GenerateWorld, InvalidConfigsRejected)
{
  WorldConfig cfg;
  cfg.rooms = 9;
  EXPECT_THROW(generate_world(1, cfg), InvalidArgument);
  cfg = WorldConfig{};
  cfg.objects = 9;
  EXPECT_THROW(generate_world(1, cfg), InvalidArgument);
  cfg = WorldConfig{};
  cfg.corridor_width = 0.1;
  EXPECT_THROW(generate_world(1, cfg), InvalidArgument);
  cfg = WorldConfig{};
  cfg.size = 4.0;
  cfg.rooms = 8;
  cfg.max_retries = 3;
  EXPECT_THROW(generate_world(1, cfg), GenerationError);
}

TEST(Observe, ObjectDeadAhead)
{
  World w = empty_world();
  w.objects.push_back({1, {4.0, 2.5}, 0.2});
  const auto obs = observe(w, {{1.0, 2.5}, 0.0});
  ASSERT_EQ(obs.size(), 1u);
  EXPECT_EQ(obs[0].label, 1);
  EXPECT_NEAR(obs[0].bearing, 0.0, 1e-12);
  EXPECT_NEAR(obs[0].range, 3.0, 1e-12);
  EXPECT_NEAR(obs[0].angular_extent, std::atan(0.2 / 3.0), 1e-12);
}

TEST(Observe, WallHidesObject)
{
  World w = empty_world();
  for (int y = 0; y < 100; ++y) {
    w.grid.free[w.grid.index(50, y)] = 0;
  }
  w.objects.push_back({1, {4.0, 2.5}, 0.2});
  w.objects.push_back({2, {2.0, 2.5}, 0.2});
  const auto obs = observe(w, {{1.0, 2.5}, 0.0});
  ASSERT_EQ(obs.size(), 1u);
  EXPECT_EQ(obs[0].label, 2);
}

TEST(Observe, FieldOfViewBoundary)
{
  World w = empty_world();
  const SensorSpec s;
  const Pose2 pose{{1.0, 1.0}, 0.0};
  const double inside = s.fov / 2 - 0.01, outside = s.fov / 2 + 0.01;
  w.objects.push_back({1, pose.position + Vec2{2 * std::cos(inside), 2 * std::sin(inside)}, 0.1});
  w.objects.push_back({2, pose.position + Vec2{2 * std::cos(outside), 2 * std::sin(outside)}, 0.1});
  const auto obs = observe(w, pose, s);
  ASSERT_EQ(obs.size(), 1u);
  EXPECT_EQ(obs[0].label, 1);
}

TEST(Observe, MonotoneInRange)
{
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const World w = generate_world(seed);
    Rng rng(seed);
    for (int i = 0; i < 50; ++i) {
      const auto & o = w.objects[rng.below(w.objects.size())];
      const Pose2 pose{o.position + Vec2{0.3, 0.0}, rng.uniform(-kPi, kPi)};
      if (!w.grid.is_free(pose.position)) {
        continue;
      }
      std::set<InstanceLabel> prev;
      for (double r = 1.0; r <= 12.0; r += 1.0) {
        std::set<InstanceLabel> cur;
        for (const auto & v : observe(w, pose, {kPi / 2, r})) {
          cur.insert(v.label);
          EXPECT_LE(v.range, r);
          EXPECT_LE(std::abs(v.bearing), kPi / 4);
        }
        EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
        prev = cur;
      }
    }
  }
}

TEST(Step, AdvancesStepLength)
{
  const World w = empty_world();
  const AgentState s{{{1.0, 1.0}, 0.0}, 0, 0.0};
  const auto n = step(w, s, {{1.5, 1.0}, RefineStatus::direct}, 0.25);
  EXPECT_NEAR(n.pose.position.x, 1.25, 1e-12);
  EXPECT_NEAR(n.path_length, 0.25, 1e-12);
  EXPECT_EQ(n.steps_taken, 1);
}

TEST(Step, ShortWaypointReachedExactly)
{
  const World w = empty_world();
  const AgentState s{{{1.0, 1.0}, 0.0}, 3, 2.0};
  const auto n = step(w, s, {{1.0, 1.1}, RefineStatus::neighborhood}, 0.25);
  EXPECT_NEAR(n.pose.position.y, 1.1, 1e-12);
  EXPECT_NEAR(n.pose.yaw, kPi / 2, 1e-12);
  EXPECT_NEAR(n.path_length, 2.1, 1e-12);
  EXPECT_EQ(n.steps_taken, 4);
}

TEST(Step, FallbackRotatesInPlace)
{
  const World w = empty_world();
  const AgentState s{{{1.0, 1.0}, 0.2}, 0, 0.0};
  const auto n = step(w, s, {{1.0, 1.0}, RefineStatus::fallback}, 0.25, kPi / 6);
  EXPECT_EQ(n.pose.position, s.pose.position);
  EXPECT_NEAR(n.pose.yaw, 0.2 + kPi / 6, 1e-12);
  EXPECT_EQ(n.path_length, 0.0);
}

TEST(Step, WallClampsDisplacement)
{
  World w = empty_world();
  for (int y = 0; y < 100; ++y) {
    w.grid.free[w.grid.index(40, y)] = 0;
  }
  const AgentState s{{{1.9, 1.0}, 0.0}, 0, 0.0};
  const auto n = step(w, s, {{2.4, 1.0}, RefineStatus::direct}, 0.25);
  const double moved = distance(n.pose.position, s.pose.position);
  EXPECT_LT(moved, 0.1);
  EXPECT_TRUE(w.grid.is_free(n.pose.position));
  EXPECT_NEAR(n.path_length, moved, 1e-12);
}

TEST(Step, NeverLeavesFreeSpace)
{
  const World w = generate_world(2);
  Rng rng(91);
  AgentState s{{w.objects[0].position + Vec2{0.3, 0}, 0.0}, 0, 0.0};
  ASSERT_TRUE(w.grid.is_free(s.pose.position));
  for (int i = 0; i < 5000; ++i) {
    const double a = rng.uniform(-kPi, kPi), len = rng.uniform(0.0, 1.0);
    const RefineStatus st = rng.bernoulli(0.1) ? RefineStatus::fallback : RefineStatus::direct;
    const auto n = step(w, s, {s.pose.position + Vec2{len * std::cos(a), len * std::sin(a)}, st}, 0.25);
    ASSERT_TRUE(w.grid.is_free(n.pose.position));
    EXPECT_GE(n.path_length, s.path_length);
    s = n;
  }
}

TEST(Geodesic, EmptyWorldStraightLine)
{
  const World w = empty_world();
  EXPECT_NEAR(geodesic_distance(w, {0.01, 0.01}, {3.01, 0.01}), 3.0, w.grid.resolution);
  EXPECT_EQ(geodesic_distance(w, {1.0, 1.0}, {1.0, 1.0}), 0.0);
}

TEST(Geodesic, DisconnectedIsInfinite)
{
  World w = empty_world();
  for (int y = 0; y < 100; ++y) {
    w.grid.free[w.grid.index(50, y)] = 0;
  }
  EXPECT_TRUE(std::isinf(geodesic_distance(w, {1.0, 1.0}, {4.0, 1.0})));
  EXPECT_TRUE(geodesic_path(w, {1.0, 1.0}, {4.0, 1.0}).empty());
}

TEST(Geodesic, MatchesExhaustiveSearch)
{
  Rng rng(92);
  for (int trial = 0; trial < 60; ++trial) {
    World w = empty_world(5 + static_cast<int>(rng.below(26)), 0.1);
    const double density = rng.uniform(0.0, 0.4);
    for (auto & f : w.grid.free) {
      f = rng.bernoulli(density) ? 0 : 1;
    }
    std::vector<std::pair<int, int>> free_cells;
    for (int y = 0; y < w.grid.height; ++y) {
      for (int x = 0; x < w.grid.width; ++x) {
        if (w.grid.cell_free(x, y)) {
          free_cells.push_back({x, y});
        }
      }
    }
    if (free_cells.size() < 2) {
      continue;
    }
    for (int k = 0; k < 5; ++k) {
      const auto [ax, ay] = free_cells[rng.below(free_cells.size())];
      const auto [bx, by] = free_cells[rng.below(free_cells.size())];
      const double want = oracle::grid_shortest(w.grid, ax, ay, bx, by);
      const double got = geodesic_distance(w, w.grid.center(ax, ay), w.grid.center(bx, by));
      if (std::isinf(want)) {
        EXPECT_TRUE(std::isinf(got));
      } else {
        EXPECT_NEAR(got, want, 1e-9);
      }
    }
  }
}

TEST(Geodesic, NotShorterThanStraightLine)
{
  const World w = generate_world(4);
  Rng rng(93);
  for (int i = 0; i < 40; ++i) {
    const Vec2 a = w.objects[rng.below(w.objects.size())].position;
    const Vec2 b = w.objects[rng.below(w.objects.size())].position;
    EXPECT_GE(geodesic_distance(w, a, b), distance(a, b) - 2 * w.grid.resolution);
  }
}

TEST(Geodesic, PathEndpointsAndLength)
{
  const World w = generate_world(4);
  const Vec2 a = w.objects[0].position, b = w.objects[5].position;
  const auto path = geodesic_path(w, a, b);
  ASSERT_GE(path.size(), 2u);
  EXPECT_EQ(path.front(), a);
  EXPECT_EQ(path.back(), b);
  for (const auto & p : path) {
    EXPECT_TRUE(w.grid.is_free(p));
  }
  EXPECT_NEAR(polyline_length(path), geodesic_distance(w, a, b), 3 * w.grid.resolution);
}

TEST(SegmentClear, DenseSamplesAgree)
{
  const World w = generate_world(6);
  Rng rng(94);
  int clear = 0;
  for (int i = 0; i < 3000; ++i) {
    const Vec2 a{rng.uniform(0, w.bounds_x()), rng.uniform(0, w.bounds_y())};
    const Vec2 b = a + Vec2{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    if (!segment_clear(w.grid, a, b)) {
      continue;
    }
    ++clear;
    for (int k = 0; k <= 2000; ++k) {
      ASSERT_TRUE(w.grid.is_free(a + (b - a) * (k / 2000.0)));
    }
  }
  EXPECT_GT(clear, 100);
}

TEST(SegmentClear, CornerCrossingNeedsBothSides)
{
  World w = empty_world(10, 1.0);
  EXPECT_TRUE(segment_clear(w.grid, {2.5, 1.5}, {4.5, 3.5}));
  // The diagonal passes exactly through the corner shared by cells (2,1),
  // (3,1), (2,2) and (3,2); one blocked side cell is enough to reject it.
  w.grid.free[w.grid.index(3, 1)] = 0;
  EXPECT_FALSE(segment_clear(w.grid, {2.5, 1.5}, {4.5, 3.5}));
  EXPECT_TRUE(segment_clear(w.grid, {2.5, 1.5}, {2.5, 5.5}));
  EXPECT_FALSE(segment_clear(w.grid, {0.5, 1.5}, {5.5, 1.5}));
}

TEST(Mapping, FramesFollowRoute)
{
  const World w = oracle::corridor_world();
  MappingConfig cfg;
  const std::vector<Vec2> route{{1.0, 1.5}, {11.0, 1.5}};
  const auto frames = mapping_frames(route, cfg);
  ASSERT_EQ(frames.size(), static_cast<std::size_t>(cfg.scan_views) + 21);
  for (int k = 0; k < cfg.scan_views; ++k) {
    EXPECT_EQ(frames[k].position, route.front());
  }
  for (std::size_t i = cfg.scan_views; i < frames.size(); ++i) {
    EXPECT_NEAR(frames[i].yaw, 0.0, 1e-12);
  }
}

TEST(Mapping, SharpTurnsAreSwept)
{
  MappingConfig cfg;
  cfg.scan_views = 0;
  const std::vector<Vec2> route{{0, 0}, {2, 0}, {2, 2}};
  const auto frames = mapping_frames(route, cfg);
  for (std::size_t i = 1; i < frames.size(); ++i) {
    EXPECT_LE(std::abs(wrap_angle(frames[i].yaw - frames[i - 1].yaw)), cfg.max_turn + 1e-12);
  }
}

TEST(Mapping, CorridorMapReachesEveryObjectSeen)
{
  const World w = oracle::corridor_world();
  const MappingConfig cfg;
  const auto g = build_map(w, mapping_frames({{1.0, 1.5}, {11.0, 1.5}}, cfg), cfg);
  ASSERT_FALSE(g.empty());
  const NodeId goal = goal_node_for(g, w.objects.back().label);
  ASSERT_GE(goal, 0);
  const auto f = dijkstra_distances(g, goal);
  for (const auto & n : g.nodes()) {
    EXPECT_TRUE(std::isfinite(f.at(n.node_id)));
  }
  EXPECT_EQ(goal_node_for(g, 12345), -1);
}

TEST(Mapping, DeterministicUnderNoise)
{
  const World w = generate_world(7);
  MappingConfig cfg;
  cfg.noise = {0.2, 0.1, 3};
  const auto route = geodesic_path(w, w.objects[0].position, w.objects[9].position);
  const auto frames = mapping_frames(route, cfg);
  EXPECT_EQ(build_map(w, frames, cfg), build_map(w, frames, cfg));
}

TEST(LabelMatcher, PicksNodeNearestGoal)
{
  const World w = oracle::corridor_world();
  const MappingConfig cfg;
  const auto g = build_map(w, mapping_frames({{1.0, 1.5}, {11.0, 1.5}}, cfg), cfg);
  const InstanceLabel goal_label = w.objects.back().label;
  const auto f = dijkstra_distances(g, goal_node_for(g, goal_label));
  const LabelMatcher m(g, f);
  for (const auto & o : w.objects) {
    const NodeId n = m.match(o.label);
    if (n < 0) {
      EXPECT_TRUE(g.nodes_with_label(o.label).empty());
      continue;
    }
    for (NodeId other : g.nodes_with_label(o.label)) {
      EXPECT_LE(f.at(n), f.at(other));
    }
  }
  EXPECT_EQ(m.match(-7), -1);
}

}  // namespace
}  // namespace intentnav
