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
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "intentnav/errors.hpp"
#include "intentnav/policy.hpp"
#include "intentnav/rng.hpp"

namespace intentnav
{

struct TrainSchedule
{
  int stage1_epochs{10};   ///< conditioning parameters only
  int stage2_epochs{30};   ///< all parameters
  double lr{0.05};
  double momentum{0.9};
  int batch_size{32};
  double clip_norm{5.0};   ///< global gradient norm cap; <= 0 disables
  std::uint64_t seed{1};
};

struct EpochLoss
{
  int stage{1};
  int epoch{0};
  double mean_loss{0.0};
};

struct TrainResult
{
  PolicyParams params;
  std::vector<EpochLoss> history;
};

/// Mean loss of the policy over a dataset.
inline double dataset_loss(std::span<const TrainSample> data, const PolicyParams & params)
{
  PolicyWorkspace ws;
  double total = 0.0;
  for (const auto & s : data) {
    total += waypoint_loss(forward(ws, s.raster, s.intent, s.aux_dist, params), s.target);
  }
  return data.empty() ? 0.0 : total / static_cast<double>(data.size());
}

/// Staged imitation training with minibatch SGD + momentum. Stage 1 moves
/// only the conditioning parameters (FiLM MLP or concat weights) and is
/// skipped when the mode has none; stage 2 moves everything. Shuffle order
/// comes from the schedule seed, so runs are bit-reproducible.
inline TrainResult train_staged(
  std::span<const TrainSample> dataset, PolicyParams params, const TrainSchedule & schedule)
{
  if (dataset.empty()) {
    throw InvalidArgument("train_staged: empty dataset");
  }
  if (schedule.batch_size <= 0) {
    throw InvalidArgument("train_staged: batch size must be positive");
  }
  TrainResult result;
  TensorSet velocity = zeros_like(params);
  TensorSet grads = zeros_like(params);
  PolicyWorkspace ws;
  Rng rng(schedule.seed);
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);

  bool has_conditioning = false;
  for (int i = 0; i < kTensorCount; ++i) {
    has_conditioning = has_conditioning || (group_of(i) == ParamGroup::conditioning && !params.tensors[i].empty());
  }

  for (int stage = 1; stage <= 2; ++stage) {
    const int epochs = stage == 1 ? schedule.stage1_epochs : schedule.stage2_epochs;
    if (stage == 1 && !has_conditioning) {
      continue;
    }
    auto trainable = [&](int id) {return stage == 2 || group_of(id) == ParamGroup::conditioning;};
    for (auto & v : velocity) {
      std::fill(v.begin(), v.end(), 0.0);
    }
    for (int epoch = 0; epoch < epochs; ++epoch) {
      rng.shuffle(std::span<std::size_t>(order));
      double epoch_loss = 0.0;
      for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(schedule.batch_size)) {
        const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(schedule.batch_size));
        for (auto & g : grads) {
          std::fill(g.begin(), g.end(), 0.0);
        }
        double batch_loss = 0.0;
        for (std::size_t b = start; b < end; ++b) {
          const TrainSample & s = dataset[order[b]];
          const Vec2 pred = forward(ws, s.raster, s.intent, s.aux_dist, params);
          batch_loss += waypoint_loss(pred, s.target);
          backward(ws, (pred - s.target) * 2.0, params, grads);
        }
        if (!std::isfinite(batch_loss)) {
          std::ostringstream msg;
          msg << "train_staged: non-finite loss at stage " << stage << " epoch " << epoch
              << " batch " << start / static_cast<std::size_t>(schedule.batch_size)
              << " (lr " << schedule.lr << "); lower the learning rate";
          throw TrainingDiverged(msg.str());
        }
        epoch_loss += batch_loss;
        const double scale = 1.0 / static_cast<double>(end - start);
        double norm2 = 0.0;
        for (int i = 0; i < kTensorCount; ++i) {
          if (!trainable(i)) {
            continue;
          }
          for (auto & g : grads[i]) {
            g *= scale;
            norm2 += g * g;
          }
        }
        double clip = 1.0;
        if (schedule.clip_norm > 0.0 && norm2 > schedule.clip_norm * schedule.clip_norm) {
          clip = schedule.clip_norm / std::sqrt(norm2);
        }
        for (int i = 0; i < kTensorCount; ++i) {
          if (!trainable(i)) {
            continue;
          }
          auto & p = params.tensors[i];
          auto & v = velocity[i];
          const auto & g = grads[i];
          for (std::size_t j = 0; j < p.size(); ++j) {
            v[j] = schedule.momentum * v[j] - schedule.lr * clip * g[j];
            p[j] += v[j];
          }
        }
      }
      result.history.push_back({stage, epoch, epoch_loss / static_cast<double>(dataset.size())});
    }
  }
  result.params = std::move(params);
  return result;
}

}  // namespace intentnav
