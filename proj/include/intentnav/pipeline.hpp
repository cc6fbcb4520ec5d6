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

#include <cstdint>
#include <vector>

#include "intentnav/policy.hpp"
#include "intentnav/rng.hpp"
#include "intentnav/tasks.hpp"
#include "intentnav/train.hpp"
#include "intentnav/training_data.hpp"
#include "intentnav/world.hpp"

namespace intentnav
{

/// Demonstration worlds and routes for imitation training. Seeds are mixed
/// with a training salt so they never coincide with evaluation worlds.
struct TrainingSetup
{
  int worlds{12};
  int episodes_per_world{6};
  std::uint64_t seed{1000};
  WorldConfig world;
  TaskConfig tasks;
  TrainingDataConfig data;
};

inline std::vector<TrainSample> build_training_set(const TrainingSetup & setup)
{
  std::vector<TrainSample> all;
  const std::uint64_t salt = mix_seed(setup.seed, 0x7a1full);
  for (int w = 0; w < setup.worlds; ++w) {
    const World world = generate_world(mix_seed(salt, static_cast<std::uint64_t>(w)), setup.world);
    Rng rng(mix_seed(salt, 0x10000ull + static_cast<std::uint64_t>(w)));
    std::vector<TrainingEpisode> episodes;
    for (int e = 0; e < setup.episodes_per_world; ++e) {
      const auto base = make_base_trajectory(world, rng.next(), setup.tasks);
      episodes.push_back({base.route.front(), base.goal_label, rng.uniform(-kPi, kPi)});
    }
    TrainingDataConfig data = setup.data;
    data.mapping = setup.tasks.mapping;
    auto samples = generate_training_data(world, episodes, data);
    all.insert(all.end(), std::make_move_iterator(samples.begin()), std::make_move_iterator(samples.end()));
  }
  return all;
}

/// Parameters for `mode` that reuse the encoder and head of `base` and start
/// the conditioning path at the identity.
inline PolicyParams with_mode(const PolicyParams & base, ConditioningMode mode, std::uint64_t seed)
{
  PolicyConfig cfg = base.config;
  cfg.mode = mode;
  PolicyParams p = init_policy(cfg, seed);
  for (int i = 0; i < kTensorCount; ++i) {
    if (group_of(i) != ParamGroup::conditioning) {
      p.tensors[i] = base.tensors[i];
    }
  }
  return p;
}

/// Trains one policy. The unconditioned baseline trains all parameters in a
/// single stage; conditioned modes start from `base` when given and run the
/// two-stage schedule.
inline TrainResult train_policy(
  std::span<const TrainSample> dataset, ConditioningMode mode, const TrainSchedule & schedule,
  const PolicyConfig & config = {}, const PolicyParams * base = nullptr)
{
  PolicyConfig cfg = config;
  cfg.mode = mode;
  PolicyParams init = base ? with_mode(*base, mode, schedule.seed) : init_policy(cfg, schedule.seed);
  TrainSchedule s = schedule;
  if (mode == ConditioningMode::none) {
    s.stage1_epochs = 0;
  }
  return train_staged(dataset, init, s);
}

}  // namespace intentnav
