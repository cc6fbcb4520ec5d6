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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "intentnav/delaunay.hpp"
#include "intentnav/errors.hpp"
#include "intentnav/geom.hpp"
#include "intentnav/rng.hpp"

namespace intentnav
{

using NodeId = int;
using InstanceLabel = int;

/// One object instance seen in one mapping frame. angular_extent is the
/// half-width of the object seen from the mapping pose.
struct ObjectNode
{
  NodeId node_id{0};
  InstanceLabel instance_label{0};
  Vec2 position;
  int frame_index{0};
  double angular_extent{0.0};

  bool operator==(const ObjectNode &) const = default;
};

/// Undirected edge. Weight 0 marks an inter-frame identity edge; intra-frame
/// edges carry the Euclidean distance between endpoints.
struct Edge
{
  NodeId a{0};
  NodeId b{0};
  double weight{0.0};

  bool operator==(const Edge &) const = default;
};

struct Detection
{
  InstanceLabel instance_label{0};
  Vec2 position;
  double angular_extent{0.0};
};

struct ObservationRecord
{
  int frame_index{0};
  Pose2 pose;
  std::vector<Detection> detections;
};

/// Label-oracle association with injected failures. Every true match is
/// dropped with drop_prob; surviving matches are rewired with swap_prob to a
/// uniformly random wrong node of the current frame.
struct AssociationNoise
{
  double drop_prob{0.0};
  double swap_prob{0.0};
  std::uint64_t seed{0};
};

/// Object-level topological graph.
class TopoGraph
{
public:
  struct Neighbor
  {
    NodeId node;
    double weight;
  };

  TopoGraph() = default;

  /// Builds a graph from explicit nodes and edges, validating every
  /// invariant. Throws InvalidArgument naming the offending element.
  TopoGraph(std::vector<ObjectNode> nodes, std::vector<Edge> edges)
  {
    for (auto & n : nodes) {
      add_node(n);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge & e = edges[i];
      if (!has_node(e.a) || !has_node(e.b)) {
        throw InvalidArgument(
                "edge " + std::to_string(i) + " (" + std::to_string(e.a) + "," +
                std::to_string(e.b) + ") has a dangling endpoint");
      }
      if (!add_edge(e.a, e.b, e.weight)) {
        throw InvalidArgument("edge " + std::to_string(i) + " is a duplicate or self loop");
      }
    }
  }

  const std::vector<ObjectNode> & nodes() const {return nodes_;}
  const std::vector<Edge> & edges() const {return edges_;}
  std::size_t size() const {return nodes_.size();}
  bool empty() const {return nodes_.empty();}

  bool has_node(NodeId id) const {return index_.count(id) != 0;}

  const ObjectNode & node(NodeId id) const
  {
    const auto it = index_.find(id);
    if (it == index_.end()) {
      throw InvalidArgument("unknown node id " + std::to_string(id));
    }
    return nodes_[it->second];
  }

  const std::vector<Neighbor> & neighbors(NodeId id) const
  {
    const auto it = index_.find(id);
    if (it == index_.end()) {
      throw InvalidArgument("unknown node id " + std::to_string(id));
    }
    return adjacency_[it->second];
  }

  bool has_edge(NodeId a, NodeId b) const
  {
    return edge_keys_.count(key(a, b)) != 0;
  }

  /// Highest frame index present, if any frame has been added.
  std::optional<int> last_frame() const {return last_frame_;}

  bool has_frame(int frame) const {return frame_nodes_.count(frame) != 0;}

  /// Node ids of one frame in insertion order.
  const std::vector<NodeId> & frame_nodes(int frame) const
  {
    const auto it = frame_nodes_.find(frame);
    if (it == frame_nodes_.end()) {
      throw InvalidArgument("unknown frame " + std::to_string(frame));
    }
    return it->second;
  }

  /// All nodes carrying a label, ascending id.
  std::vector<NodeId> nodes_with_label(InstanceLabel label) const
  {
    std::vector<NodeId> out;
    const auto it = label_nodes_.find(label);
    if (it != label_nodes_.end()) {
      out = it->second;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  NodeId next_node_id() const {return next_id_;}

  /// Appends one node per detection and triangulates the frame. Returns the
  /// new node ids.
  std::vector<NodeId> add_observation(const ObservationRecord & obs)
  {
    if (last_frame_ && obs.frame_index <= *last_frame_) {
      throw InvalidSequence(
              "frame " + std::to_string(obs.frame_index) + " not after frame " +
              std::to_string(*last_frame_));
    }
    std::set<InstanceLabel> labels;
    std::vector<Vec2> points;
    for (const auto & d : obs.detections) {
      if (!labels.insert(d.instance_label).second) {
        throw InvalidArgument("duplicate label " + std::to_string(d.instance_label) + " in frame");
      }
      if (!(d.angular_extent > 0.0 && d.angular_extent <= kPi / 2)) {
        throw InvalidArgument("angular extent out of (0, pi/2]");
      }
      for (const auto & p : points) {
        if (distance(p, d.position) < 1e-6) {
          throw InvalidArgument("coincident detections in one frame");
        }
      }
      points.push_back(d.position);
    }
    last_frame_ = obs.frame_index;
    std::vector<NodeId> ids;
    frame_nodes_[obs.frame_index];
    for (const auto & d : obs.detections) {
      ObjectNode n{next_id_, d.instance_label, d.position, obs.frame_index, d.angular_extent};
      add_node(n);
      ids.push_back(n.node_id);
    }
    for (const auto & [i, j] : delaunay_edges(points)) {
      add_edge(ids[i], ids[j], distance(points[i], points[j]));
    }
    return ids;
  }

  /// Adds zero-weight identity edges between two frames for each shared
  /// label, under the given association noise. Returns the edges added.
  std::vector<Edge> associate_frames(int prev_frame, int cur_frame, const AssociationNoise & noise = {})
  {
    if (!has_frame(prev_frame) || !has_frame(cur_frame)) {
      throw InvalidArgument(
              "associate_frames: unknown frame " +
              std::to_string(has_frame(prev_frame) ? cur_frame : prev_frame));
    }
    Rng rng(mix_seed(noise.seed, (static_cast<std::uint64_t>(prev_frame) << 32) ^
      static_cast<std::uint32_t>(cur_frame)));
    const auto & prev = frame_nodes_.at(prev_frame);
    const auto & cur = frame_nodes_.at(cur_frame);
    std::map<InstanceLabel, NodeId> cur_by_label;
    for (NodeId id : cur) {
      cur_by_label[node(id).instance_label] = id;
    }
    std::vector<Edge> added;
    for (NodeId a : prev) {
      const auto it = cur_by_label.find(node(a).instance_label);
      if (it == cur_by_label.end()) {
        continue;
      }
      NodeId b = it->second;
      // Both draws happen for every match so the stream does not depend on
      // earlier outcomes.
      const bool drop = rng.bernoulli(noise.drop_prob);
      const bool swap = rng.bernoulli(noise.swap_prob);
      const std::uint64_t pick = cur.size() > 1 ? rng.below(cur.size() - 1) : 0;
      if (drop) {
        continue;
      }
      if (swap && cur.size() > 1) {
        std::vector<NodeId> wrong;
        for (NodeId c : cur) {
          if (c != b) {
            wrong.push_back(c);
          }
        }
        b = wrong[pick];
      }
      if (add_edge(a, b, 0.0)) {
        added.push_back(edges_.back());
      }
    }
    return added;
  }

  /// Field-for-field equality of nodes and edges.
  bool operator==(const TopoGraph & o) const
  {
    return nodes_ == o.nodes_ && edges_ == o.edges_;
  }

private:
  static std::uint64_t key(NodeId a, NodeId b)
  {
    if (a > b) {
      std::swap(a, b);
    }
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }

  void add_node(const ObjectNode & n)
  {
    if (has_node(n.node_id)) {
      throw InvalidArgument("duplicate node id " + std::to_string(n.node_id));
    }
    if (!std::isfinite(n.position.x) || !std::isfinite(n.position.y)) {
      throw InvalidArgument("node " + std::to_string(n.node_id) + " has non-finite position");
    }
    if (!(n.angular_extent > 0.0 && n.angular_extent <= kPi / 2)) {
      throw InvalidArgument("node " + std::to_string(n.node_id) + " extent out of (0, pi/2]");
    }
    index_[n.node_id] = nodes_.size();
    nodes_.push_back(n);
    adjacency_.emplace_back();
    frame_nodes_[n.frame_index].push_back(n.node_id);
    label_nodes_[n.instance_label].push_back(n.node_id);
    last_frame_ = last_frame_ ? std::max(*last_frame_, n.frame_index) : n.frame_index;
    next_id_ = std::max(next_id_, n.node_id + 1);
  }

  bool add_edge(NodeId a, NodeId b, double w)
  {
    if (a == b || !(w >= 0.0) || !std::isfinite(w) || !edge_keys_.insert(key(a, b)).second) {
      return false;
    }
    edges_.push_back({a, b, w});
    adjacency_[index_.at(a)].push_back({b, w});
    adjacency_[index_.at(b)].push_back({a, w});
    return true;
  }

  std::vector<ObjectNode> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::unordered_map<NodeId, std::size_t> index_;
  std::set<std::uint64_t> edge_keys_;
  std::map<int, std::vector<NodeId>> frame_nodes_;
  std::map<InstanceLabel, std::vector<NodeId>> label_nodes_;
  std::optional<int> last_frame_;
  NodeId next_id_{0};
};

}  // namespace intentnav
