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

#include <string>
#include <vector>

#include "intentnav/json_util.hpp"
#include "intentnav/topomap.hpp"

namespace intentnav
{

inline constexpr int kMapFormatVersion = 1;

inline std::string map_to_json(const TopoGraph & g)
{
  using nlohmann::json;
  json nodes = json::array();
  for (const auto & n : g.nodes()) {
    nodes.push_back(
      {{"id", n.node_id}, {"label", n.instance_label}, {"x", n.position.x}, {"y", n.position.y},
        {"frame", n.frame_index}, {"extent", n.angular_extent}});
  }
  json edges = json::array();
  for (const auto & e : g.edges()) {
    edges.push_back({{"a", e.a}, {"b", e.b}, {"w", e.weight}});
  }
  json doc = {{"version", kMapFormatVersion}, {"nodes", nodes}, {"edges", edges}};
  return doc.dump(1);
}

/// Parses a map document. Errors name the JSON path of the bad field, or
/// the line/column for syntax errors.
inline TopoGraph map_from_json(const std::string & text)
{
  namespace ju = json_util;
  const auto doc = ju::parse(text, "map");
  ju::require_object(doc, "map");
  ju::only_keys(doc, "map", {"version", "nodes", "edges"});
  ju::check_version(doc, "map", kMapFormatVersion);

  std::vector<ObjectNode> nodes;
  const auto & jn = ju::array(doc, "map", "nodes");
  for (std::size_t i = 0; i < jn.size(); ++i) {
    const std::string path = "map.nodes[" + std::to_string(i) + "]";
    ju::require_object(jn[i], path);
    ju::only_keys(jn[i], path, {"id", "label", "x", "y", "frame", "extent"});
    ObjectNode n;
    n.node_id = static_cast<NodeId>(ju::integer(jn[i], path, "id"));
    n.instance_label = static_cast<InstanceLabel>(ju::integer(jn[i], path, "label"));
    n.position = {ju::number(jn[i], path, "x"), ju::number(jn[i], path, "y")};
    n.frame_index = static_cast<int>(ju::integer(jn[i], path, "frame"));
    n.angular_extent = ju::number(jn[i], path, "extent");
    nodes.push_back(n);
  }
  std::vector<Edge> edges;
  const auto & je = ju::array(doc, "map", "edges");
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string path = "map.edges[" + std::to_string(i) + "]";
    ju::require_object(je[i], path);
    ju::only_keys(je[i], path, {"a", "b", "w"});
    edges.push_back(
      {static_cast<NodeId>(ju::integer(je[i], path, "a")),
        static_cast<NodeId>(ju::integer(je[i], path, "b")), ju::number(je[i], path, "w")});
  }
  try {
    return TopoGraph(std::move(nodes), std::move(edges));
  } catch (const InvalidArgument & e) {
    throw ParseError(std::string("map: ") + e.what());
  }
}

inline void save_map(const TopoGraph & g, const std::string & path)
{
  json_util::write_file(path, map_to_json(g));
}

inline TopoGraph load_map(const std::string & path)
{
  return map_from_json(json_util::read_file(path));
}

}  // namespace intentnav
