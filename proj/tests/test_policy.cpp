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

#include <vector>

#include "intentnav/policy.hpp"
#include "oracles.hpp"

namespace intentnav
{
namespace
{

constexpr ConditioningMode kModes[] = {
  ConditioningMode::none, ConditioningMode::film, ConditioningMode::film_sign,
  ConditioningMode::concat, ConditioningMode::film_dist};

TEST(Film, Examples)
{
  const std::vector<double> f{1, 2, 3, 4, 5, 6};
  EXPECT_EQ(film(f, std::vector<double>{1, 1}, std::vector<double>{0, 0}), f);
  EXPECT_EQ(film(f, std::vector<double>{2, 2}, std::vector<double>{0, 0}), (std::vector<double>{2, 4, 6, 8, 10, 12}));
  EXPECT_EQ(film(f, std::vector<double>{0, 0}, std::vector<double>{7, -1}), (std::vector<double>{7, -1, 7, -1, 7, -1}));
  EXPECT_EQ(film(f, std::vector<double>{2, 3}, std::vector<double>{1, 0}), (std::vector<double>{3, 6, 7, 12, 11, 18}));
}

TEST(Film, ShapeMismatchThrows)
{
  const std::vector<double> f{1, 2, 3, 4, 5};
  EXPECT_THROW(film(f, std::vector<double>{1, 1}, std::vector<double>{0, 0}), InvalidArgument);
  EXPECT_THROW(film(f, std::vector<double>{1}, std::vector<double>{0, 0}), InvalidArgument);
}

TEST(Loss, Examples)
{
  EXPECT_EQ(waypoint_loss({0.3, -0.2}, {0.3, -0.2}), 0.0);
  EXPECT_EQ(waypoint_loss({1, 0}, {0, 0}), 1.0);
  EXPECT_EQ(waypoint_loss({0.1, 0.7}, {-0.4, 0.2}), waypoint_loss({-0.4, 0.2}, {0.1, 0.7}));
}

TEST(Policy, IdentityInitMatchesNoneMode)
{
  Rng rng(51);
  PolicyConfig cfg;
  cfg.mode = ConditioningMode::none;
  const PolicyParams none = init_policy(cfg, 9);
  for (auto mode : {ConditioningMode::film, ConditioningMode::film_sign, ConditioningMode::film_dist, ConditioningMode::concat}) {
    cfg.mode = mode;
    const PolicyParams cond = init_policy(cfg, 9);
    for (int i = 0; i < 20; ++i) {
      const auto raster = oracle::random_raster(rng, cfg.W, cfg.R, cfg.C, rng.uniform(0.0, 0.3));
      const Intent in = intent_from_angle(rng.uniform(-kPi, kPi));
      const Vec2 a = forward(raster, in, rng.uniform(0, 30), cond);
      const Vec2 b = forward(raster, in, 0.0, none);
      EXPECT_NEAR(a.x, b.x, 1e-6);
      EXPECT_NEAR(a.y, b.y, 1e-6);
    }
  }
}

TEST(Policy, IdentityInitGammaOneBetaZero)
{
  PolicyConfig cfg;
  const PolicyParams p = init_policy(cfg, 3);
  Rng rng(52);
  PolicyWorkspace ws;
  forward(ws, oracle::random_raster(rng, cfg.W, cfg.R, cfg.C), intent_from_angle(1.0), 0.0, p);
  for (int k = 0; k < cfg.conv2_channels; ++k) {
    EXPECT_NEAR(ws.gamma[k], 1.0, 1e-6);
    EXPECT_NEAR(ws.beta[k], 0.0, 1e-6);
  }
}

TEST(Policy, NoneModeIgnoresIntent)
{
  Rng rng(53);
  PolicyConfig cfg;
  cfg.mode = ConditioningMode::none;
  const PolicyParams p = oracle::random_params(rng, cfg);
  const auto raster = oracle::random_raster(rng, cfg.W, cfg.R, cfg.C);
  const Vec2 a = forward(raster, intent_from_angle(0.3), 1.0, p);
  const Vec2 b = forward(raster, intent_from_angle(-2.0), 9.0, p);
  EXPECT_EQ(a, b);
}

TEST(Policy, ConditionedModesRespondToIntent)
{
  Rng rng(54);
  for (auto mode : {ConditioningMode::film, ConditioningMode::concat, ConditioningMode::film_dist}) {
    PolicyConfig cfg;
    cfg.mode = mode;
    const PolicyParams p = oracle::random_params(rng, cfg);
    const auto raster = oracle::random_raster(rng, cfg.W, cfg.R, cfg.C);
    EXPECT_NE(forward(raster, intent_from_angle(0.3), 1.0, p), forward(raster, intent_from_angle(2.5), 1.0, p));
  }
}

TEST(Policy, FilmSignSeesOnlyQuadrant)
{
  Rng rng(55);
  PolicyConfig cfg;
  cfg.mode = ConditioningMode::film_sign;
  const PolicyParams p = oracle::random_params(rng, cfg);
  const auto raster = oracle::random_raster(rng, cfg.W, cfg.R, cfg.C);
  EXPECT_EQ(forward(raster, intent_from_angle(0.2), 0, p), forward(raster, intent_from_angle(1.3), 0, p));
  EXPECT_NE(forward(raster, intent_from_angle(0.2), 0, p), forward(raster, intent_from_angle(-1.3), 0, p));
}

TEST(Policy, FilmDistUsesClampedDistance)
{
  Rng rng(56);
  PolicyConfig cfg;
  cfg.mode = ConditioningMode::film_dist;
  const PolicyParams p = oracle::random_params(rng, cfg);
  const auto raster = oracle::random_raster(rng, cfg.W, cfg.R, cfg.C);
  const Intent in = intent_from_angle(0.4);
  EXPECT_EQ(forward(raster, in, 25.0, p), forward(raster, in, 40.0, p));
  EXPECT_NE(forward(raster, in, 2.0, p), forward(raster, in, 12.0, p));
}

TEST(Policy, OutputBoundedByWmax)
{
  Rng rng(57);
  for (int i = 0; i < 200; ++i) {
    PolicyConfig cfg = oracle::random_small_config(rng, kModes[rng.below(5)]);
    const PolicyParams p = oracle::random_params(rng, cfg, 5.0);
    const auto raster = oracle::random_raster(rng, cfg.W, cfg.R, cfg.C, 0.5);
    EXPECT_LE(forward(raster, intent_from_angle(rng.uniform(-kPi, kPi)), 3.0, p).norm(), cfg.w_max);
  }
}

TEST(Policy, RasterMismatchThrows)
{
  PolicyConfig cfg;
  const PolicyParams p = init_policy(cfg, 1);
  EXPECT_THROW(forward(EgoRaster(32, 8, 16), intent_from_angle(0), 0, p), InvalidArgument);
  EXPECT_THROW(forward(EgoRaster(64, 8, 8), intent_from_angle(0), 0, p), InvalidArgument);
}

TEST(Policy, ConfigValidation)
{
  PolicyConfig cfg;
  cfg.sectors = 7;
  EXPECT_THROW(init_policy(cfg, 1), InvalidArgument);
  cfg = PolicyConfig{};
  cfg.conv1_kernel = 2;
  EXPECT_THROW(init_policy(cfg, 1), InvalidArgument);
  EXPECT_THROW(parse_mode("bogus"), InvalidArgument);
  for (auto m : kModes) {
    EXPECT_EQ(parse_mode(to_string(m)), m);
  }
}

TEST(Policy, FrozenForwardFixture)
{
  Rng rng(2024);
  PolicyConfig cfg;
  cfg.mode = ConditioningMode::film;
  const PolicyParams p = oracle::random_params(rng, cfg, 0.2);
  const auto raster = oracle::random_raster(rng, 64, 8, 16, 0.1);
  const Vec2 w = forward(raster, intent_from_angle(0.7), 5.0, p);
  EXPECT_NEAR(w.x, -0.050267978546231454, 1e-12);
  EXPECT_NEAR(w.y, -0.31424626258058674, 1e-12);
}

TEST(Gradients, ZeroLossGivesZeroHeadBiasGradient)
{
  Rng rng(58);
  PolicyConfig cfg = oracle::random_small_config(rng, ConditioningMode::film);
  const PolicyParams p = oracle::random_params(rng, cfg);
  TrainSample s{oracle::random_raster(rng, cfg.W, cfg.R, cfg.C), intent_from_angle(0.5), 0.0, {}};
  s.target = forward(s.raster, s.intent, s.aux_dist, p);
  const auto g = gradients(s, p);
  EXPECT_EQ(g.loss, 0.0);
  for (double v : g.grads[kHeadB2]) {
    EXPECT_EQ(v, 0.0);
  }
}

TEST(Gradients, GammaPathZeroWhenFeaturesZero)
{
  Rng rng(59);
  PolicyConfig cfg = oracle::random_small_config(rng, ConditioningMode::film);
  PolicyParams p = oracle::random_params(rng, cfg);
  // Zero second-stage weights and biases make the modulated feature map zero.
  std::fill(p.tensors[kConv2W].begin(), p.tensors[kConv2W].end(), 0.0);
  std::fill(p.tensors[kConv2B].begin(), p.tensors[kConv2B].end(), 0.0);
  const TrainSample s{oracle::random_raster(rng, cfg.W, cfg.R, cfg.C), intent_from_angle(0.5), 0.0, {0.4, -0.3}};
  const auto g = gradients(s, p);
  const int c2 = cfg.conv2_channels, hf = cfg.film_hidden;
  for (int o = 0; o < c2; ++o) {
    EXPECT_EQ(g.grads[kFilmB2][o], 0.0);
    for (int j = 0; j < hf; ++j) {
      EXPECT_EQ(g.grads[kFilmW2][static_cast<std::size_t>(o) * hf + j], 0.0);
    }
  }
  double beta_grad = 0.0;
  for (int o = c2; o < 2 * c2; ++o) {
    beta_grad += std::abs(g.grads[kFilmB2][o]);
  }
  EXPECT_GT(beta_grad, 0.0);
}

TEST(Gradients, MatchFiniteDifferences)
{
  Rng rng(60);
  for (int i = 0; i < 4; ++i) {
    for (auto mode : kModes) {
      const PolicyConfig cfg = oracle::random_small_config(rng, mode);
      const PolicyParams p = oracle::random_params(rng, cfg);
      const TrainSample s{
        oracle::random_raster(rng, cfg.W, cfg.R, cfg.C, 0.4), intent_from_angle(rng.uniform(-kPi, kPi)),
        rng.uniform(0, 30), {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
      const auto r = oracle::finite_difference_check(s, p);
      EXPECT_LT(r.max_rel, 1e-4) << to_string(mode);
      EXPECT_GT(r.group_count[0], 0u);
      EXPECT_GT(r.group_count[2], 0u);
      if (mode != ConditioningMode::none) {
        EXPECT_GT(r.group_count[1], 0u);
      }
    }
  }
}

TEST(Gradients, LossMatchesForward)
{
  Rng rng(61);
  PolicyConfig cfg;
  const PolicyParams p = oracle::random_params(rng, cfg);
  const TrainSample s{oracle::random_raster(rng, cfg.W, cfg.R, cfg.C), intent_from_angle(-0.5), 0.0, {0.5, 0.1}};
  const auto g = gradients(s, p);
  EXPECT_EQ(g.prediction, forward(s.raster, s.intent, s.aux_dist, p));
  EXPECT_EQ(g.loss, waypoint_loss(g.prediction, s.target));
}

}  // namespace
}  // namespace intentnav
