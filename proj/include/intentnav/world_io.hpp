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
#include <string>
#include <vector>

#include "intentnav/json_util.hpp"
#include "intentnav/world.hpp"

namespace intentnav
{

inline constexpr int kWorldFormatVersion = 1;

/// Grid stored as [value, run length] pairs in row-major order.
inline std::string world_to_json(const World & w)
{
  using nlohmann::json;
  json runs = json::array();
  const auto & f = w.grid.free;
  for (std::size_t i = 0; i < f.size(); ) {
    std::size_t j = i;
    while (j < f.size() && f[j] == f[i]) {
      ++j;
    }
    runs.push_back(json::array({static_cast<int>(f[i]), j - i}));
    i = j;
  }
  json objects = json::array();
  for (const auto & o : w.objects) {
    objects.push_back({{"label", o.label}, {"x", o.position.x}, {"y", o.position.y}, {"radius", o.radius}});
  }
  json doc = {
    {"version", kWorldFormatVersion}, {"seed", w.seed}, {"resolution", w.grid.resolution},
    {"grid", {{"width", w.grid.width}, {"height", w.grid.height}, {"runs", runs}}},
    {"objects", objects}};
  return doc.dump();
}

inline World world_from_json(const std::string & text)
{
  namespace ju = json_util;
  const auto doc = ju::parse(text, "world");
  ju::require_object(doc, "world");
  ju::only_keys(doc, "world", {"version", "seed", "resolution", "grid", "objects"});
  ju::check_version(doc, "world", kWorldFormatVersion);
  World w;
  const auto & seed = ju::field(doc, "world", "seed");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    throw ParseError("world.seed: expected an integer");
  }
  w.seed = seed.get<std::uint64_t>();
  w.grid.resolution = ju::number(doc, "world", "resolution");
  if (!(w.grid.resolution > 0.0)) {
    throw ParseError("world.resolution: must be positive");
  }
  const auto & g = ju::field(doc, "world", "grid");
  ju::require_object(g, "world.grid");
  ju::only_keys(g, "world.grid", {"width", "height", "runs"});
  w.grid.width = static_cast<int>(ju::integer(g, "world.grid", "width"));
  w.grid.height = static_cast<int>(ju::integer(g, "world.grid", "height"));
  if (w.grid.width <= 0 || w.grid.height <= 0) {
    throw ParseError("world.grid: width and height must be positive");
  }
  const std::size_t total = static_cast<std::size_t>(w.grid.width) * w.grid.height;
  const auto & runs = ju::array(g, "world.grid", "runs");
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto & r = runs[i];
    const std::string path = "world.grid.runs[" + std::to_string(i) + "]";
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer()) {
      throw ParseError(path + ": expected [value, length]");
    }
    const long long v = r[0].get<long long>();
    const long long n = r[1].get<long long>();
    if ((v != 0 && v != 1) || n <= 0 || w.grid.free.size() + static_cast<std::size_t>(n) > total) {
      throw ParseError(path + ": invalid run");
    }
    w.grid.free.insert(w.grid.free.end(), static_cast<std::size_t>(n), static_cast<std::uint8_t>(v));
  }
  if (w.grid.free.size() != total) {
    throw ParseError("world.grid.runs: covers " + std::to_string(w.grid.free.size()) + " of " + std::to_string(total) + " cells");
  }
  const auto & objs = ju::array(doc, "world", "objects");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const std::string path = "world.objects[" + std::to_string(i) + "]";
    ju::require_object(objs[i], path);
    ju::only_keys(objs[i], path, {"label", "x", "y", "radius"});
    WorldObject o;
    o.label = static_cast<InstanceLabel>(ju::integer(objs[i], path, "label"));
    o.position = {ju::number(objs[i], path, "x"), ju::number(objs[i], path, "y")};
    o.radius = ju::number(objs[i], path, "radius");
    if (!w.grid.is_free(o.position)) {
      throw ParseError(path + ": object centre not in free space");
    }
    if (w.find_object(o.label)) {
      throw ParseError(path + ": duplicate label " + std::to_string(o.label));
    }
    w.objects.push_back(o);
  }
  return w;
}

inline void save_world(const World & w, const std::string & path)
{
  json_util::write_file(path, world_to_json(w));
}

inline World load_world(const std::string & path)
{
  return world_from_json(json_util::read_file(path));
}

}  // namespace intentnav
