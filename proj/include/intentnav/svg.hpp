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
#include <ostream>
#include <vector>

#include "intentnav/episode.hpp"
#include "intentnav/world.hpp"

namespace intentnav
{

struct SvgStyle
{
  double pixels_per_meter{20.0};
  int arrow_every{10};       ///< intent arrow spacing in steps
  double arrow_length{0.6};  ///< metres
};

/// Top-down episode plot: walls, mapping route, agent path, goal disc and
/// intent arrows.
inline void write_trajectory_svg(
  std::ostream & os, const World & world, const EpisodeSpec & spec, const EpisodeResult & result,
  const SvgStyle & style = {})
{
  const auto & g = world.grid;
  const double s = style.pixels_per_meter;
  const double w = g.width * g.resolution * s, h = g.height * g.resolution * s;
  auto X = [&](double x) {return x * s;};
  auto Y = [&](double y) {return h - y * s;};
  auto polyline = [&](const std::vector<Vec2> & pts, const char * color, double width) {
      if (pts.size() < 2) {
        return;
      }
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\" points=\"";
      for (const auto & p : pts) {
        os << X(p.x) << ',' << Y(p.y) << ' ';
      }
      os << "\"/>\n";
    };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  const double cell = g.resolution * s;
  for (int iy = 0; iy < g.height; ++iy) {
    int ix = 0;
    while (ix < g.width) {
      if (g.cell_free(ix, iy)) {
        ++ix;
        continue;
      }
      const int run_start = ix;
      while (ix < g.width && !g.cell_free(ix, iy)) {
        ++ix;
      }
      os << "<rect x=\"" << run_start * cell << "\" y=\"" << h - (iy + 1) * cell << "\" width=\""
         << (ix - run_start) * cell << "\" height=\"" << cell << "\" fill=\"#444\"/>\n";
    }
  }
  polyline(spec.mapping_route, "#3b82f6", 2.0);
  std::vector<Vec2> path;
  for (const auto & st : result.trace) {
    path.push_back(st.pose.position);
  }
  path.push_back(result.final_pose.position);
  polyline(path, "#dc2626", 2.0);
  if (const WorldObject * goal = world.find_object(spec.goal_label)) {
    os << "<circle cx=\"" << X(goal->position.x) << "\" cy=\"" << Y(goal->position.y) << "\" r=\"" << s
       << "\" fill=\"#16a34a\" fill-opacity=\"0.35\" stroke=\"#16a34a\"/>\n";
  }
  os << "<circle cx=\"" << X(spec.start.position.x) << "\" cy=\"" << Y(spec.start.position.y)
     << "\" r=\"4\" fill=\"black\"/>\n";
  if (style.arrow_every > 0) {
    for (std::size_t i = 0; i < result.trace.size(); i += static_cast<std::size_t>(style.arrow_every)) {
      const auto & st = result.trace[i];
      if (!st.planned) {
        continue;
      }
      const double a = st.pose.yaw + st.intent_phi;
      const Vec2 tip = st.pose.position + Vec2{std::cos(a), std::sin(a)} * style.arrow_length;
      os << "<line x1=\"" << X(st.pose.position.x) << "\" y1=\"" << Y(st.pose.position.y) << "\" x2=\""
         << X(tip.x) << "\" y2=\"" << Y(tip.y) << "\" stroke=\"#f59e0b\" stroke-width=\"2\"/>\n";
    }
  }
  os << "</svg>\n";
}

}  // namespace intentnav
