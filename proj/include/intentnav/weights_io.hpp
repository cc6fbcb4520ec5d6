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
#include "intentnav/policy.hpp"

namespace intentnav
{

inline constexpr int kWeightsFormatVersion = 1;

inline nlohmann::json policy_config_to_json(const PolicyConfig & c)
{
  return {
    {"W", c.W}, {"R", c.R}, {"C", c.C},
    {"conv1_channels", c.conv1_channels}, {"conv1_kernel", c.conv1_kernel},
    {"conv2_channels", c.conv2_channels}, {"conv2_kernel", c.conv2_kernel},
    {"sectors", c.sectors}, {"film_hidden", c.film_hidden}, {"head_hidden", c.head_hidden},
    {"w_max", c.w_max}, {"dist_norm", c.dist_norm}, {"mode", std::string(to_string(c.mode))}};
}

inline PolicyConfig policy_config_from_json(const nlohmann::json & j, const std::string & path)
{
  namespace ju = json_util;
  ju::require_object(j, path);
  ju::only_keys(
    j, path, {"W", "R", "C", "conv1_channels", "conv1_kernel", "conv2_channels", "conv2_kernel",
      "sectors", "film_hidden", "head_hidden", "w_max", "dist_norm", "mode"});
  PolicyConfig c;
  c.W = static_cast<int>(ju::integer(j, path, "W"));
  c.R = static_cast<int>(ju::integer(j, path, "R"));
  c.C = static_cast<int>(ju::integer(j, path, "C"));
  c.conv1_channels = static_cast<int>(ju::integer(j, path, "conv1_channels"));
  c.conv1_kernel = static_cast<int>(ju::integer(j, path, "conv1_kernel"));
  c.conv2_channels = static_cast<int>(ju::integer(j, path, "conv2_channels"));
  c.conv2_kernel = static_cast<int>(ju::integer(j, path, "conv2_kernel"));
  c.sectors = static_cast<int>(ju::integer(j, path, "sectors"));
  c.film_hidden = static_cast<int>(ju::integer(j, path, "film_hidden"));
  c.head_hidden = static_cast<int>(ju::integer(j, path, "head_hidden"));
  c.w_max = ju::number(j, path, "w_max");
  c.dist_norm = ju::number(j, path, "dist_norm");
  const auto & m = ju::field(j, path, "mode");
  if (!m.is_string()) {
    throw ParseError(path + ".mode: expected a string");
  }
  try {
    c.mode = parse_mode(m.get<std::string>());
    c.validate();
  } catch (const InvalidArgument & e) {
    throw ParseError(path + ": " + e.what());
  }
  return c;
}

inline std::string weights_to_json(const PolicyParams & p)
{
  using nlohmann::json;
  const auto shapes = tensor_shapes(p.config);
  json tensors = json::object();
  for (int i = 0; i < kTensorCount; ++i) {
    if (shapes[i].empty()) {
      continue;
    }
    tensors[std::string(kTensorNames[i])] = {{"shape", shapes[i]}, {"data", p.tensors[i]}};
  }
  json doc = {{"version", kWeightsFormatVersion}, {"config", policy_config_to_json(p.config)}, {"tensors", tensors}};
  return doc.dump();
}

inline PolicyParams weights_from_json(const std::string & text)
{
  namespace ju = json_util;
  const auto doc = ju::parse(text, "weights");
  ju::require_object(doc, "weights");
  ju::only_keys(doc, "weights", {"version", "config", "tensors"});
  ju::check_version(doc, "weights", kWeightsFormatVersion);
  PolicyParams p;
  p.config = policy_config_from_json(ju::field(doc, "weights", "config"), "weights.config");
  const auto shapes = tensor_shapes(p.config);
  const auto & jt = ju::field(doc, "weights", "tensors");
  ju::require_object(jt, "weights.tensors");
  for (const auto & [name, value] : jt.items()) {
    bool known = false;
    for (int i = 0; i < kTensorCount; ++i) {
      known = known || (kTensorNames[i] == name && !shapes[i].empty());
    }
    if (!known) {
      throw ParseError("weights.tensors: unexpected tensor '" + name + "' for this config");
    }
  }
  for (int i = 0; i < kTensorCount; ++i) {
    if (shapes[i].empty()) {
      continue;
    }
    const std::string name(kTensorNames[i]);
    const std::string path = "weights.tensors." + name;
    const auto & t = ju::field(jt, "weights.tensors", name);
    ju::require_object(t, path);
    ju::only_keys(t, path, {"shape", "data"});
    if (ju::array(t, path, "shape").get<std::vector<int>>() != shapes[i]) {
      throw ParseError(path + ".shape: does not match the config");
    }
    const auto & data = ju::array(t, path, "data");
    if (data.size() != shape_size(shapes[i])) {
      throw ParseError(path + ".data: expected " + std::to_string(shape_size(shapes[i])) + " values");
    }
    p.tensors[i].resize(data.size());
    for (std::size_t k = 0; k < data.size(); ++k) {
      if (!data[k].is_number()) {
        throw ParseError(path + ".data[" + std::to_string(k) + "]: expected a number");
      }
      p.tensors[i][k] = data[k].get<double>();
    }
  }
  return p;
}

inline void save_weights(const PolicyParams & p, const std::string & path)
{
  json_util::write_file(path, weights_to_json(p));
}

inline PolicyParams load_weights(const std::string & path)
{
  return weights_from_json(json_util::read_file(path));
}

}  // namespace intentnav
