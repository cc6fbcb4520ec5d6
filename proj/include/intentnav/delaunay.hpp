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
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "intentnav/geom.hpp"

namespace intentnav
{

using IndexPair = std::pair<std::size_t, std::size_t>;
using Triangle = std::array<std::size_t, 3>;

namespace detail
{

inline double orient(const Vec2 & a, const Vec2 & b, const Vec2 & c)
{
  return (b - a).cross(c - a);
}

/// > 0 when d lies strictly inside the circumcircle of the CCW triangle abc.
inline double incircle(const Vec2 & a, const Vec2 & b, const Vec2 & c, const Vec2 & d)
{
  const long double adx = a.x - d.x, ady = a.y - d.y;
  const long double bdx = b.x - d.x, bdy = b.y - d.y;
  const long double cdx = c.x - d.x, cdy = c.y - d.y;
  const long double ad = adx * adx + ady * ady;
  const long double bd = bdx * bdx + bdy * bdy;
  const long double cd = cdx * cdx + cdy * cdy;
  return static_cast<double>(
    adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx));
}

inline IndexPair ordered(std::size_t a, std::size_t b)
{
  return a < b ? IndexPair{a, b} : IndexPair{b, a};
}

inline double scale_of(std::span<const Vec2> pts)
{
  double s = 0.0;
  for (const auto & p : pts) {
    s = std::max({s, std::abs(p.x), std::abs(p.y)});
  }
  return std::max(s, 1.0);
}

}  // namespace detail

/// Delaunay triangles (CCW vertex order) of a point set. Built by a
/// left-to-right sweep followed by Lawson edge flips. Collinear inputs
/// yield no triangles.
inline std::vector<Triangle> delaunay_triangles(std::span<const Vec2> pts)
{
  using detail::orient;
  const std::size_t n = pts.size();
  std::vector<Triangle> tris;
  if (n < 3) {
    return tris;
  }
  const double scale = detail::scale_of(pts);
  const double orient_eps = 1e-12 * scale * scale;
  const double circle_eps = 1e-12 * scale * scale * scale * scale;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(
    order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pts[a].x != pts[b].x ? pts[a].x < pts[b].x : pts[a].y < pts[b].y;
    });

  // Leading collinear run.
  std::size_t k = 2;
  while (k < n && std::abs(orient(pts[order[0]], pts[order[1]], pts[order[k]])) <= orient_eps) {
    ++k;
  }
  if (k == n) {
    return tris;
  }

  auto add_ccw = [&](std::size_t a, std::size_t b, std::size_t c) {
      if (orient(pts[a], pts[b], pts[c]) < 0.0) {
        std::swap(b, c);
      }
      tris.push_back({a, b, c});
    };

  // Fan from the first off-line point; hull kept as a CCW cycle.
  const std::size_t apex = order[k];
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    add_ccw(order[i], order[i + 1], apex);
  }
  if (orient(pts[order[0]], pts[order[k - 1]], pts[apex]) > 0.0) {
    for (std::size_t i = 0; i < k; ++i) {
      hull.push_back(order[i]);
    }
    hull.push_back(apex);
  } else {
    hull.push_back(apex);
    for (std::size_t i = k; i-- > 0; ) {
      hull.push_back(order[i]);
    }
  }

  for (std::size_t idx = k + 1; idx < n; ++idx) {
    const std::size_t p = order[idx];
    const std::size_t h = hull.size();
    std::vector<bool> visible(h);
    for (std::size_t i = 0; i < h; ++i) {
      visible[i] = orient(pts[hull[i]], pts[hull[(i + 1) % h]], pts[p]) < -orient_eps;
    }
    // Visible edges form one contiguous arc; find its first edge.
    std::size_t first = h;
    for (std::size_t i = 0; i < h; ++i) {
      if (visible[i] && !visible[(i + h - 1) % h]) {
        first = i;
        break;
      }
    }
    if (first == h) {
      continue;  // unreachable for distinct points in sweep order
    }
    std::size_t last = first;
    while (visible[(last + 1) % h]) {
      last = (last + 1) % h;
    }
    for (std::size_t i = first;; i = (i + 1) % h) {
      add_ccw(hull[i], hull[(i + 1) % h], p);
      if (i == last) {
        break;
      }
    }
    // Replace hull vertices strictly between first and last+1 by p.
    std::vector<std::size_t> next_hull;
    const std::size_t start = (last + 1) % h;
    for (std::size_t i = start;; i = (i + 1) % h) {
      next_hull.push_back(hull[i]);
      if (i == first) {
        break;
      }
    }
    next_hull.push_back(p);
    hull = std::move(next_hull);
  }

  // Lawson flips until every interior edge is locally Delaunay.
  bool flipped = true;
  std::size_t guard = 0;
  while (flipped && guard++ < 10 * n * n + 100) {
    flipped = false;
    std::map<IndexPair, std::vector<std::size_t>> edge_tris;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      for (int e = 0; e < 3; ++e) {
        edge_tris[detail::ordered(tris[t][e], tris[t][(e + 1) % 3])].push_back(t);
      }
    }
    for (const auto & [edge, owners] : edge_tris) {
      if (owners.size() != 2) {
        continue;
      }
      const Triangle & t0 = tris[owners[0]];
      const Triangle & t1 = tris[owners[1]];
      auto opposite = [&](const Triangle & t) {
          for (auto v : t) {
            if (v != edge.first && v != edge.second) {
              return v;
            }
          }
          return t[0];
        };
      const std::size_t c0 = opposite(t0);
      const std::size_t c1 = opposite(t1);
      if (detail::incircle(pts[t0[0]], pts[t0[1]], pts[t0[2]], pts[c1]) > circle_eps) {
        const std::size_t a = edge.first;
        const std::size_t b = edge.second;
        const std::size_t i0 = owners[0];
        const std::size_t i1 = owners[1];
        tris[i0] = {c0, c1, a};
        if (orient(pts[c0], pts[c1], pts[a]) < 0.0) {
          std::swap(tris[i0][1], tris[i0][2]);
        }
        tris[i1] = {c0, c1, b};
        if (orient(pts[c0], pts[c1], pts[b]) < 0.0) {
          std::swap(tris[i1][1], tris[i1][2]);
        }
        flipped = true;
        break;  // adjacency is stale; rebuild
      }
    }
  }
  return tris;
}

/// Edge set of the Delaunay triangulation, pairs ordered (i < j). Collinear
/// inputs give the nearest-neighbour chain along the line.
inline std::set<IndexPair> delaunay_edges(std::span<const Vec2> pts)
{
  std::set<IndexPair> edges;
  const std::size_t n = pts.size();
  if (n < 2) {
    return edges;
  }
  const auto tris = delaunay_triangles(pts);
  if (tris.empty()) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(
      order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return pts[a].x != pts[b].x ? pts[a].x < pts[b].x : pts[a].y < pts[b].y;
      });
    for (std::size_t i = 0; i + 1 < n; ++i) {
      edges.insert(detail::ordered(order[i], order[i + 1]));
    }
    return edges;
  }
  for (const auto & t : tris) {
    for (int e = 0; e < 3; ++e) {
      edges.insert(detail::ordered(t[e], t[(e + 1) % 3]));
    }
  }
  return edges;
}

}  // namespace intentnav
