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

#include "intentnav/bev.hpp"
#include "oracles.hpp"

namespace intentnav
{
namespace
{

TraversabilityGrid open_window(const Pose2 & robot, int cells = 80)
{
  TraversabilityGrid g;
  g.width = g.height = cells;
  g.origin = robot.position - Vec2{cells * g.resolution / 2, cells * g.resolution / 2};
  g.free.assign(static_cast<std::size_t>(cells) * cells, 1);
  return g;
}

void block(TraversabilityGrid & g, int x0, int y0, int x1, int y1)
{
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      g.free[static_cast<std::size_t>(y) * g.width + x] = 0;
    }
  }
}

TEST(IsFree, Examples)
{
  const Pose2 robot{{3.0, 4.0}, 0.5};
  TraversabilityGrid g = open_window(robot);
  block(g, 50, 40, 55, 45);
  EXPECT_TRUE(is_free(g, robot.position));
  EXPECT_FALSE(is_free(g, robot.position + Vec2{2.5, 0.0}));
  EXPECT_FALSE(is_free(g, robot.position + Vec2{0.0, -2.01}));
  EXPECT_FALSE(is_free(g, g.cell_center(52, 42)));
  EXPECT_TRUE(is_free(g, g.cell_center(49, 42)));
}

TEST(Refine, FreeWaypointIsDirect)
{
  const Pose2 robot{{1, 1}, 0.3};
  const auto g = open_window(robot);
  const auto r = refine(g, {0.5, 0.2}, robot);
  EXPECT_EQ(r.status, RefineStatus::direct);
  const Vec2 want = robot_to_world(robot, {0.5, 0.2});
  EXPECT_EQ(r.point, want);
}

TEST(Refine, BlockedWaypointProjectsAlongRay)
{
  const Pose2 robot{{0, 0}, 0.0};
  TraversabilityGrid g = open_window(robot);
  // Wall from x = 0.5 m to 0.75 m ahead of the robot.
  block(g, 50, 0, 54, 79);
  const auto r = refine(g, {0.6, 0.0}, robot);
  ASSERT_EQ(r.status, RefineStatus::ray_projected);
  EXPECT_TRUE(is_free(g, r.point));
  EXPECT_LT(r.point.x, 0.5);
  EXPECT_NEAR(r.point.y, 0.0, 1e-12);
  const auto o = oracle::ray_projection(g, {0.6, 0.0}, robot);
  ASSERT_TRUE(o.has_value());
  EXPECT_EQ(r.point, *o);
}

TEST(Refine, NeighbourhoodWhenRayIsBlocked)
{
  const Pose2 robot{{0, 0}, 0.0};
  TraversabilityGrid g = open_window(robot);
  // Everything blocked except the robot cell and two openings near the
  // waypoint; the one closer to its bearing wins.
  block(g, 0, 0, 79, 79);
  g.free[static_cast<std::size_t>(40) * 80 + 40] = 1;
  g.free[static_cast<std::size_t>(47) * 80 + 55] = 1;
  g.free[static_cast<std::size_t>(33) * 80 + 56] = 1;
  const auto r = refine(g, {0.8, 0.0}, robot);
  ASSERT_EQ(r.status, RefineStatus::neighborhood);
  EXPECT_EQ(r.point, g.cell_center(56, 33));
}

TEST(Refine, NeighbourhoodTieBreaksOnRange)
{
  const Pose2 robot{{0, 0}, 0.0};
  TraversabilityGrid g = open_window(robot);
  block(g, 0, 0, 79, 79);
  g.free[static_cast<std::size_t>(40) * 80 + 40] = 1;
  // Two cells on the same bearing; the nearer one wins.
  g.free[static_cast<std::size_t>(44) * 80 + 44] = 1;
  g.free[static_cast<std::size_t>(48) * 80 + 48] = 1;
  const auto r = refine(g, {0.4, 0.6}, robot);
  ASSERT_EQ(r.status, RefineStatus::neighborhood);
  EXPECT_EQ(r.point, g.cell_center(44, 44));
}

TEST(Refine, AllBlockedFallsBack)
{
  const Pose2 robot{{2, 2}, 1.0};
  TraversabilityGrid g = open_window(robot);
  block(g, 0, 0, 79, 79);
  g.free[static_cast<std::size_t>(40) * 80 + 40] = 1;
  const auto r = refine(g, {0.7, 0.1}, robot);
  EXPECT_EQ(r.status, RefineStatus::fallback);
}

TEST(Refine, RandomSafetyDirectionIdempotence)
{
  Rng rng(81);
  int ray = 0, nbhd = 0, fallback = 0;
  for (int i = 0; i < 20000; ++i) {
    const Pose2 robot{{rng.uniform(-5, 5), rng.uniform(-5, 5)}, rng.uniform(-kPi, kPi)};
    const auto g = oracle::random_window(rng, robot);
    const double len = rng.uniform(0.0, 1.5), ang = rng.uniform(-kPi, kPi);
    const Vec2 w{len * std::cos(ang), len * std::sin(ang)};
    const auto r = refine(g, w, robot);
    if (r.status == RefineStatus::fallback) {
      ++fallback;
      continue;
    }
    ASSERT_TRUE(is_free(g, r.point));
    if (r.status == RefineStatus::ray_projected) {
      ++ray;
      EXPECT_NEAR(wrap_angle(heading_of(r.point - robot.position) - heading_of(robot_to_world(robot, w) - robot.position)),
        0.0, 1e-9);
      const auto o = oracle::ray_projection(g, w, robot);
      ASSERT_TRUE(o.has_value());
      EXPECT_EQ(r.point, *o);
    } else if (r.status == RefineStatus::neighborhood) {
      ++nbhd;
    }
    const auto again = refine(g, world_to_robot(robot, r.point), robot);
    EXPECT_EQ(again.status, RefineStatus::direct);
  }
  EXPECT_GT(ray, 100);
  EXPECT_GT(nbhd, 100);
  EXPECT_GT(fallback, 10);
}

TEST(TraversabilityWindow, RobotCellFreeAndWallsBlocked)
{
  const World w = oracle::walled_room();
  const auto occ = inflate(w, 0.15);
  const Vec2 robot{3.0, 3.0};
  const auto g = make_traversability_grid(occ, w.grid, robot);
  EXPECT_EQ(g.width, 80);
  EXPECT_TRUE(is_free(g, robot));
  // Behind the internal wall at x = 4 m.
  EXPECT_FALSE(is_free(g, {4.5, 3.0}));
  EXPECT_FALSE(is_free(g, {4.0, 3.0}));
  // Inflated margin next to the wall.
  EXPECT_FALSE(is_free(g, {3.86, 3.0}));
  EXPECT_TRUE(is_free(g, {3.7, 3.0}));
  // Outside the window.
  EXPECT_FALSE(is_free(g, {0.5, 0.5}));
}

TEST(TraversabilityWindow, FreeCellsReachableInStraightLine)
{
  const World w = oracle::walled_room();
  const auto occ = inflate(w, 0.15);
  Rng rng(82);
  for (int i = 0; i < 20; ++i) {
    Vec2 robot{rng.uniform(0.5, 7.5), rng.uniform(0.5, 7.5)};
    if (!occ.grid.is_free(robot)) {
      continue;
    }
    const auto g = make_traversability_grid(occ, w.grid, robot);
    for (int iy = 0; iy < g.height; iy += 3) {
      for (int ix = 0; ix < g.width; ix += 3) {
        if (!g.cell_free(ix, iy)) {
          continue;
        }
        const Vec2 c = g.cell_center(ix, iy);
        EXPECT_TRUE(line_of_sight(w.grid, robot, c));
      }
    }
  }
}

}  // namespace
}  // namespace intentnav
