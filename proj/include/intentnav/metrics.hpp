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

#include <algorithm>
#include <cmath>
#include <iostream>
#include <span>
#include <vector>

#include "intentnav/errors.hpp"

namespace intentnav
{

/// The per-episode numbers every metric is computed from; one CSV row.
struct EpisodeRow
{
  bool success{false};
  int steps{0};
  double p{0.0};
  double l{0.0};
  double d0{0.0};
  double dT{0.0};
};

/// Success weighted by path length, (1/N) sum S * l / max(p, l). Episodes
/// with l <= 0 are excluded with a warning.
inline double spl(std::span<const EpisodeRow> rows)
{
  double total = 0.0;
  std::size_t n = 0;
  for (const auto & r : rows) {
    if (!(r.l > 0.0)) {
      std::cerr << "warning: spl: episode with l = 0 excluded\n";
      continue;
    }
    ++n;
    if (r.success) {
      total += r.l / std::max(r.p, r.l);
    }
  }
  return n == 0 ? 0.0 : total / static_cast<double>(n);
}

/// Soft success of one episode: 1 on success, else normalized progress.
inline double soft_success(const EpisodeRow & r)
{
  if (r.success || r.dT == 0.0) {
    return 1.0;
  }
  if (!std::isfinite(r.dT)) {
    return 0.0;
  }
  return std::max(0.0, 1.0 - r.dT / r.d0);
}

/// Soft-SPL, (1/N) sum soft * l / max(p, l). Episodes with d0 <= 0 are
/// excluded.
inline double sspl(std::span<const EpisodeRow> rows)
{
  double total = 0.0;
  std::size_t n = 0;
  for (const auto & r : rows) {
    if (!(r.d0 > 0.0) || !(r.l > 0.0)) {
      continue;
    }
    ++n;
    total += soft_success(r) * r.l / std::max(r.p, r.l);
  }
  return n == 0 ? 0.0 : total / static_cast<double>(n);
}

inline double success_rate(std::span<const EpisodeRow> rows)
{
  if (rows.empty()) {
    return 0.0;
  }
  const auto hits = std::count_if(rows.begin(), rows.end(), [](const EpisodeRow & r) {return r.success;});
  return static_cast<double>(hits) / static_cast<double>(rows.size());
}

/// Mean step count over successful episodes; 0 when there are none.
inline double mean_steps(std::span<const EpisodeRow> rows)
{
  double total = 0.0;
  std::size_t n = 0;
  for (const auto & r : rows) {
    if (r.success) {
      total += r.steps;
      ++n;
    }
  }
  return n == 0 ? 0.0 : total / static_cast<double>(n);
}

/// Relative SSPL loss in percent against the unrotated baseline.
inline double sspl_drop(double sspl_theta, double sspl_zero)
{
  if (!(sspl_zero > 0.0)) {
    throw UndefinedDrop("sspl_drop: baseline SSPL is zero");
  }
  return (1.0 - sspl_theta / sspl_zero) * 100.0;
}

struct MetricsReport
{
  double sr{0.0};
  double spl{0.0};
  double sspl{0.0};
  double mean_steps{0.0};
  std::size_t episodes{0};
};

inline MetricsReport summarize(std::span<const EpisodeRow> rows)
{
  return {success_rate(rows), spl(rows), sspl(rows), mean_steps(rows), rows.size()};
}

}  // namespace intentnav
