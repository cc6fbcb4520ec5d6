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
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "intentnav/json_util.hpp"
#include "intentnav/pipeline.hpp"
#include "intentnav/sweep.hpp"

namespace intentnav
{

/// Flat settings read from `key = value` lines (# starts a comment) or from
/// a JSON object whose values are scalars or arrays of scalars. Lists are
/// comma separated.
class Config
{
public:
  Config() = default;

  static Config parse(const std::string & text, const std::string & origin = "config")
  {
    Config c;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      const auto j = json_util::parse(text, origin);
      for (const auto & [k, v] : j.items()) {
        c.values_[k] = scalar_text(v, origin + "." + k);
      }
      return c;
    }
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      line = trim(line.substr(0, line.find('#')));
      if (line.empty()) {
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
      }
      const std::string key = trim(line.substr(0, eq));
      if (key.empty()) {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
      }
      c.values_[key] = trim(line.substr(eq + 1));
    }
    return c;
  }

  static Config load(const std::string & path)
  {
    return parse(json_util::read_file(path), path);
  }

  bool has(const std::string & key) const {return values_.count(key) != 0;}
  void set(const std::string & key, const std::string & value) {values_[key] = value;}

  /// Throws on keys nobody consumed, so typos surface.
  void check_consumed() const
  {
    for (const auto & [k, v] : values_) {
      if (!used_.count(k)) {
        throw ConfigError("unknown config key '" + k + "'");
      }
    }
  }

  void get(const std::string & key, double & out) const
  {
    if (const auto * v = find(key)) {
      out = to_double(key, *v);
    }
  }

  void get(const std::string & key, int & out) const
  {
    if (const auto * v = find(key)) {
      out = static_cast<int>(to_integer(key, *v));
    }
  }

  void get(const std::string & key, std::uint64_t & out) const
  {
    if (const auto * v = find(key)) {
      const long long n = to_integer(key, *v);
      if (n < 0) {
        throw ConfigError(key + ": expected a non-negative integer");
      }
      out = static_cast<std::uint64_t>(n);
    }
  }

  void get(const std::string & key, bool & out) const
  {
    if (const auto * v = find(key)) {
      out = to_bool(key, *v);
    }
  }

  void get(const std::string & key, std::string & out) const
  {
    if (const auto * v = find(key)) {
      out = *v;
    }
  }

  std::vector<std::string> list(const std::string & key) const
  {
    std::vector<std::string> out;
    if (const auto * v = find(key)) {
      std::istringstream in(*v);
      std::string item;
      while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
          out.push_back(item);
        }
      }
    }
    return out;
  }

  void get(const std::string & key, std::vector<double> & out) const
  {
    if (!has(key)) {
      return;
    }
    out.clear();
    for (const auto & s : list(key)) {
      out.push_back(to_double(key, s));
    }
  }

  static bool to_bool(const std::string & key, const std::string & s)
  {
    if (s == "true" || s == "1" || s == "on") {
      return true;
    }
    if (s == "false" || s == "0" || s == "off") {
      return false;
    }
    throw ConfigError(key + ": expected a boolean, got '" + s + "'");
  }

private:
  const std::string * find(const std::string & key) const
  {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      return nullptr;
    }
    used_.insert(key);
    return &it->second;
  }

  static std::string trim(const std::string & s)
  {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) {
      return "";
    }
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
  }

  static std::string scalar_text(const json_util::json & v, const std::string & path)
  {
    if (v.is_string()) {
      return v.get<std::string>();
    }
    if (v.is_boolean()) {
      return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number()) {
      return v.dump();
    }
    if (v.is_array()) {
      std::string out;
      for (const auto & item : v) {
        if (item.is_array() || item.is_object()) {
          throw ConfigError(path + ": nested values are not supported");
        }
        out += (out.empty() ? "" : ",") + scalar_text(item, path);
      }
      return out;
    }
    throw ConfigError(path + ": unsupported value type");
  }

  static double to_double(const std::string & key, const std::string & s)
  {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos == s.size()) {
        return v;
      }
    } catch (const std::exception &) {
    }
    throw ConfigError(key + ": expected a number, got '" + s + "'");
  }

  static long long to_integer(const std::string & key, const std::string & s)
  {
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(s, &pos);
      if (pos == s.size()) {
        return v;
      }
    } catch (const std::exception &) {
    }
    throw ConfigError(key + ": expected an integer, got '" + s + "'");
  }

  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
};

inline void apply(const Config & c, WorldConfig & w)
{
  c.get("world.size", w.size);
  c.get("world.rooms", w.rooms);
  c.get("world.objects", w.objects);
  c.get("world.corridor_width", w.corridor_width);
  c.get("world.extra_connections", w.extra_connections);
  w.validate();
}

inline void apply(const Config & c, TaskConfig & t)
{
  c.get("tasks.min_separation", t.min_separation);
  c.get("tasks.max_separation", t.max_separation);
  c.get("tasks.offsets", t.offsets);
  c.get("mapping.frame_spacing", t.mapping.frame_spacing);
  c.get("mapping.scan_views", t.mapping.scan_views);
  c.get("mapping.drop_prob", t.mapping.noise.drop_prob);
  c.get("mapping.swap_prob", t.mapping.noise.swap_prob);
  c.get("mapping.noise_seed", t.mapping.noise.seed);
}

inline void apply(const Config & c, RunConfig & r)
{
  c.get("run.max_steps", r.max_steps);
  c.get("run.step_len", r.step_len);
  c.get("run.success_radius", r.success_radius);
  c.get("bev.inflation", r.bev.inflation);
  c.get("bev.neighborhood_radius", r.refine.neighborhood_radius);
}

inline void apply(const Config & c, TrainSchedule & s)
{
  c.get("train.stage1_epochs", s.stage1_epochs);
  c.get("train.stage2_epochs", s.stage2_epochs);
  c.get("train.lr", s.lr);
  c.get("train.momentum", s.momentum);
  c.get("train.batch_size", s.batch_size);
  c.get("train.clip_norm", s.clip_norm);
  c.get("train.seed", s.seed);
}

inline void apply(const Config & c, TrainingSetup & t)
{
  c.get("train.worlds", t.worlds);
  c.get("train.episodes_per_world", t.episodes_per_world);
  c.get("train.data_seed", t.seed);
  c.get("train.lookahead", t.data.lookahead);
  apply(c, t.world);
  apply(c, t.tasks);
}

/// Sweep grid from `sweep.*` keys; axes default to the full protocol.
inline void apply(const Config & c, SweepConfig & s)
{
  c.get("sweep.worlds", s.worlds);
  c.get("sweep.goals_per_world", s.goals_per_world);
  c.get("sweep.seed", s.seed);
  apply(c, s.world);
  apply(c, s.tasks);
  apply(c, s.run);
  std::vector<TaskKind> tasks{TaskKind::imitate, TaskKind::opposite};
  if (c.has("sweep.tasks")) {
    tasks.clear();
    for (const auto & t : c.list("sweep.tasks")) {
      tasks.push_back(parse_task(t));
    }
  }
  std::vector<double> alphas{0, 5, 10, 20, 30};
  c.get("sweep.alphas", alphas);
  std::vector<ConditioningMode> modes{ConditioningMode::none, ConditioningMode::film};
  if (c.has("sweep.modes")) {
    modes.clear();
    for (const auto & m : c.list("sweep.modes")) {
      try {
        modes.push_back(parse_mode(m));
      } catch (const InvalidArgument & e) {
        throw ConfigError(std::string("sweep.modes: ") + e.what());
      }
    }
  }
  std::vector<bool> bevs{false, true};
  if (c.has("sweep.bev")) {
    bevs.clear();
    for (const auto & b : c.list("sweep.bev")) {
      bevs.push_back(Config::to_bool("sweep.bev", b));
    }
  }
  s.cells = grid_cells(tasks, s.tasks.offsets, alphas, modes, bevs);
}

}  // namespace intentnav
