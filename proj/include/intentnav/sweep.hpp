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
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "intentnav/episode.hpp"
#include "intentnav/metrics.hpp"
#include "intentnav/tasks.hpp"
#include "intentnav/world.hpp"

namespace intentnav
{

struct SweepCell
{
  TaskKind task{TaskKind::imitate};
  double offset_deg{0.0};
  double alpha_deg{0.0};
  ConditioningMode mode{ConditioningMode::film};
  bool bev{true};

  bool operator==(const SweepCell &) const = default;

  /// Task column value; opposite carries its offset.
  std::string task_name() const
  {
    if (task != TaskKind::opposite) {
      return to_string(task);
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "opposite_%g", offset_deg);
    return buf;
  }
};

struct SweepConfig
{
  int worlds{20};
  int goals_per_world{3};
  std::uint64_t seed{1};
  WorldConfig world;
  TaskConfig tasks;
  RunConfig run;
  std::vector<SweepCell> cells;
};

/// Cartesian product of the grid axes; opposite expands to every offset.
inline std::vector<SweepCell> grid_cells(
  const std::vector<TaskKind> & tasks, const std::vector<double> & offsets,
  const std::vector<double> & alphas, const std::vector<ConditioningMode> & modes,
  const std::vector<bool> & bevs)
{
  std::vector<SweepCell> out;
  for (auto t : tasks) {
    const std::vector<double> offs = t == TaskKind::opposite ? offsets : std::vector<double>{0.0};
    for (double off : offs) {
      for (double a : alphas) {
        for (auto m : modes) {
          for (bool b : bevs) {
            out.push_back({t, off, a, m, b});
          }
        }
      }
    }
  }
  return out;
}

struct CellResult
{
  SweepCell cell;
  std::vector<int> episodes;
  std::vector<EpisodeRow> rows;
  MetricsReport report;
};

struct SweepResult
{
  std::vector<CellResult> cells;
};

using PolicySet = std::map<ConditioningMode, PolicyParams>;
using EpisodeCallback = std::function<void(const SweepCell &, int, const EpisodeSpec &, const EpisodeResult &)>;

inline EpisodeRow to_row(const EpisodeResult & r)
{
  return {r.success, r.steps, r.p, r.l, r.d0, r.dT};
}

inline std::uint64_t world_seed(const SweepConfig & cfg, int w)
{
  return mix_seed(cfg.seed, static_cast<std::uint64_t>(w));
}

inline std::uint64_t episode_seed(const SweepConfig & cfg, int episode)
{
  return mix_seed(mix_seed(cfg.seed, 0xe915ull), static_cast<std::uint64_t>(episode));
}

/// The episode a cell runs for one base trajectory, or nothing when the
/// task has no eligible configuration there.
inline std::optional<EpisodeSpec> cell_episode(
  const std::vector<EpisodeSpec> & family, const SweepCell & cell)
{
  for (const auto & s : family) {
    if (cell.task != TaskKind::opposite || s.offset_deg == cell.offset_deg) {
      EpisodeSpec out = s;
      out.mode = cell.mode;
      out.bev = cell.bev;
      out.noise_alpha_deg = cell.alpha_deg;
      return out;
    }
  }
  return std::nullopt;
}

/// Runs every cell over worlds x goals_per_world episodes. Rows are ordered
/// by (cell, episode index); the output depends only on the config and the
/// weights.
inline SweepResult sweep(const SweepConfig & cfg, const PolicySet & policies, const EpisodeCallback & on_episode = {})
{
  for (const auto & c : cfg.cells) {
    if (!policies.count(c.mode)) {
      throw ConfigError("sweep: no weights for mode " + std::string(to_string(c.mode)));
    }
  }
  SweepResult out;
  for (const auto & c : cfg.cells) {
    out.cells.push_back({c, {}, {}, {}});
  }
  for (int w = 0; w < cfg.worlds; ++w) {
    auto world = std::make_shared<const World>(generate_world(world_seed(cfg, w), cfg.world));
    EpisodeCache cache;
    for (int g = 0; g < cfg.goals_per_world; ++g) {
      const int episode = w * cfg.goals_per_world + g;
      const std::uint64_t seed = episode_seed(cfg, episode);
      const BaseTrajectory base = make_base_trajectory(*world, seed, cfg.tasks);
      std::map<TaskKind, std::vector<EpisodeSpec>> families;
      for (auto & cr : out.cells) {
        auto it = families.find(cr.cell.task);
        if (it == families.end()) {
          it = families.emplace(cr.cell.task, make_tasks(world, base, cr.cell.task, seed, cfg.tasks)).first;
        }
        auto spec = cell_episode(it->second, cr.cell);
        if (!spec) {
          continue;
        }
        spec->episode = episode;
        const EpisodeResult r = run_episode(*spec, policies.at(cr.cell.mode), cfg.run, &cache);
        cr.episodes.push_back(episode);
        cr.rows.push_back(to_row(r));
        if (on_episode) {
          on_episode(cr.cell, episode, *spec, r);
        }
      }
    }
  }
  for (auto & cr : out.cells) {
    cr.report = summarize(cr.rows);
  }
  return out;
}

/// Runs a single episode index of the first cell, exactly as sweep would.
/// The callback is not invoked when the task has no eligible configuration.
inline void sweep_episode(
  const SweepConfig & cfg, const PolicySet & policies, int episode,
  const std::function<void(const EpisodeSpec &, const EpisodeResult &)> & on_episode)
{
  if (cfg.cells.empty() || episode < 0 || cfg.goals_per_world <= 0) {
    throw ConfigError("sweep_episode: need one cell and a non-negative episode index");
  }
  const SweepCell & cell = cfg.cells.front();
  if (!policies.count(cell.mode)) {
    throw ConfigError("sweep_episode: no weights for mode " + std::string(to_string(cell.mode)));
  }
  auto world = std::make_shared<const World>(
    generate_world(world_seed(cfg, episode / cfg.goals_per_world), cfg.world));
  const std::uint64_t seed = episode_seed(cfg, episode);
  const BaseTrajectory base = make_base_trajectory(*world, seed, cfg.tasks);
  auto spec = cell_episode(make_tasks(world, base, cell.task, seed, cfg.tasks), cell);
  if (!spec) {
    return;
  }
  spec->episode = episode;
  on_episode(*spec, run_episode(*spec, policies.at(cell.mode), cfg.run));
}

inline std::string format_double(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string format_short(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

inline constexpr const char * kMetricsHeader = "task,mode,alpha,bev,episode,success,steps,p,l,d0,dT";

inline void write_metrics_csv(std::ostream & os, const SweepResult & result)
{
  os << kMetricsHeader << '\n';
  for (const auto & cr : result.cells) {
    for (std::size_t i = 0; i < cr.rows.size(); ++i) {
      const auto & r = cr.rows[i];
      os << cr.cell.task_name() << ',' << to_string(cr.cell.mode) << ',' << format_short(cr.cell.alpha_deg) << ','
         << (cr.cell.bev ? 1 : 0) << ',' << cr.episodes[i] << ',' << (r.success ? 1 : 0) << ',' << r.steps << ','
         << format_double(r.p) << ',' << format_double(r.l) << ',' << format_double(r.d0) << ','
         << format_double(r.dT) << '\n';
    }
  }
}

inline const CellResult * find_cell(const SweepResult & result, const SweepCell & cell)
{
  for (const auto & cr : result.cells) {
    if (cr.cell == cell) {
      return &cr;
    }
  }
  return nullptr;
}

/// SPL(alpha) / SPL(0) against the matching zero-noise cell; nullopt when
/// that cell is missing or has zero SPL.
inline std::optional<double> spl_retention(const SweepResult & result, const SweepCell & cell)
{
  SweepCell ref = cell;
  ref.alpha_deg = 0.0;
  const auto * base = find_cell(result, ref);
  const auto * cur = find_cell(result, cell);
  if (!base || !cur || !(base->report.spl > 0.0)) {
    return std::nullopt;
  }
  return cur->report.spl / base->report.spl;
}

/// SSPL drop of an opposite cell against its zero-offset twin.
inline std::optional<double> cell_sspl_drop(const SweepResult & result, const SweepCell & cell)
{
  if (cell.task != TaskKind::opposite) {
    return std::nullopt;
  }
  SweepCell ref = cell;
  ref.offset_deg = 0.0;
  const auto * base = find_cell(result, ref);
  const auto * cur = find_cell(result, cell);
  if (!base || !cur || !(base->report.sspl > 0.0)) {
    return std::nullopt;
  }
  return sspl_drop(cur->report.sspl, base->report.sspl);
}

inline void write_aggregate_csv(std::ostream & os, const SweepResult & result)
{
  os << "task,mode,alpha,bev,episodes,sr,spl,sspl,mean_steps,spl_retention,sspl_drop\n";
  for (const auto & cr : result.cells) {
    const auto & m = cr.report;
    const auto ret = spl_retention(result, cr.cell);
    const auto drop = cell_sspl_drop(result, cr.cell);
    os << cr.cell.task_name() << ',' << to_string(cr.cell.mode) << ',' << format_short(cr.cell.alpha_deg) << ','
       << (cr.cell.bev ? 1 : 0) << ',' << m.episodes << ',' << format_double(m.sr * 100) << ','
       << format_double(m.spl * 100) << ',' << format_double(m.sspl * 100) << ',' << format_double(m.mean_steps)
       << ',' << (ret ? format_double(*ret) : "") << ',' << (drop ? format_double(*drop) : "") << '\n';
  }
}

}  // namespace intentnav
