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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "intentnav/costmap.hpp"
#include "intentnav/errors.hpp"
#include "intentnav/geom.hpp"
#include "intentnav/planner.hpp"
#include "intentnav/rng.hpp"

namespace intentnav
{

/// How the intent reaches the controller.
enum class ConditioningMode { none, film, film_sign, concat, film_dist };

inline std::string_view to_string(ConditioningMode m)
{
  switch (m) {
    case ConditioningMode::none: return "none";
    case ConditioningMode::film: return "film";
    case ConditioningMode::film_sign: return "film_sign";
    case ConditioningMode::concat: return "concat";
    case ConditioningMode::film_dist: return "film_dist";
  }
  return "none";
}

inline ConditioningMode parse_mode(std::string_view s)
{
  for (auto m : {ConditioningMode::none, ConditioningMode::film, ConditioningMode::film_sign,
      ConditioningMode::concat, ConditioningMode::film_dist})
  {
    if (to_string(m) == s) {
      return m;
    }
  }
  throw InvalidArgument("unknown conditioning mode '" + std::string(s) + "'");
}

inline bool uses_film(ConditioningMode m)
{
  return m == ConditioningMode::film || m == ConditioningMode::film_sign || m == ConditioningMode::film_dist;
}

struct PolicyConfig
{
  int W{64};
  int R{8};
  int C{16};
  int conv1_channels{8};
  int conv1_kernel{3};
  int conv2_channels{16};   ///< C', the channels FiLM modulates
  int conv2_kernel{1};
  int sectors{8};           ///< azimuth sectors kept by pooling
  int film_hidden{32};
  int head_hidden{32};
  double w_max{1.0};
  double dist_norm{20.0};   ///< film_dist input: min(d, dist_norm) / dist_norm
  ConditioningMode mode{ConditioningMode::film};

  bool operator==(const PolicyConfig &) const = default;

  int film_inputs() const {return mode == ConditioningMode::film_dist ? 3 : 2;}
  int pooled_size() const {return sectors * conv2_channels;}

  void validate() const
  {
    if (W <= 0 || R <= 0 || C <= 0 || conv1_channels <= 0 || conv2_channels <= 0 ||
      film_hidden <= 0 || head_hidden <= 0)
    {
      throw InvalidArgument("policy config: sizes must be positive");
    }
    if (conv1_kernel % 2 == 0 || conv2_kernel % 2 == 0 || conv1_kernel < 1 || conv2_kernel < 1) {
      throw InvalidArgument("policy config: kernel sizes must be odd");
    }
    if (sectors <= 0 || W % sectors != 0) {
      throw InvalidArgument("policy config: sectors must divide W");
    }
    if (!(w_max > 0.0) || !(dist_norm > 0.0)) {
      throw InvalidArgument("policy config: w_max and dist_norm must be positive");
    }
  }
};

enum class ParamGroup { encoder, conditioning, head };

enum TensorId : int
{
  kConv1W, kConv1B, kConv2W, kConv2B,
  kFilmW1, kFilmB1, kFilmW2, kFilmB2,
  kConcatW,
  kHeadW1, kHeadB1, kHeadW2, kHeadB2,
  kTensorCount
};

inline constexpr std::array<std::string_view, kTensorCount> kTensorNames = {
  "conv1_w", "conv1_b", "conv2_w", "conv2_b",
  "film_w1", "film_b1", "film_w2", "film_b2",
  "concat_w",
  "head_w1", "head_b1", "head_w2", "head_b2"};

inline ParamGroup group_of(int id)
{
  if (id <= kConv2B) {
    return ParamGroup::encoder;
  }
  if (id <= kConcatW) {
    return ParamGroup::conditioning;
  }
  return ParamGroup::head;
}

using TensorSet = std::array<std::vector<double>, kTensorCount>;

/// Declared shape of every tensor for a config; unused tensors are empty.
inline std::array<std::vector<int>, kTensorCount> tensor_shapes(const PolicyConfig & c)
{
  std::array<std::vector<int>, kTensorCount> s;
  s[kConv1W] = {c.conv1_kernel, c.conv1_kernel, c.C, c.conv1_channels};
  s[kConv1B] = {c.conv1_channels};
  s[kConv2W] = {c.conv2_kernel, c.conv2_kernel, c.conv1_channels, c.conv2_channels};
  s[kConv2B] = {c.conv2_channels};
  if (uses_film(c.mode)) {
    s[kFilmW1] = {c.film_hidden, c.film_inputs()};
    s[kFilmB1] = {c.film_hidden};
    s[kFilmW2] = {2 * c.conv2_channels, c.film_hidden};
    s[kFilmB2] = {2 * c.conv2_channels};
  }
  if (c.mode == ConditioningMode::concat) {
    s[kConcatW] = {c.head_hidden, 2};
  }
  s[kHeadW1] = {c.head_hidden, c.pooled_size()};
  s[kHeadB1] = {c.head_hidden};
  s[kHeadW2] = {2, c.head_hidden};
  s[kHeadB2] = {2};
  return s;
}

inline std::size_t shape_size(const std::vector<int> & shape)
{
  if (shape.empty()) {
    return 0;
  }
  std::size_t n = 1;
  for (int d : shape) {
    n *= static_cast<std::size_t>(d);
  }
  return n;
}

/// Learnable weights of the waypoint predictor.
struct PolicyParams
{
  PolicyConfig config;
  TensorSet tensors;

  bool operator==(const PolicyParams &) const = default;

  std::size_t parameter_count() const
  {
    std::size_t n = 0;
    for (const auto & t : tensors) {
      n += t.size();
    }
    return n;
  }
};

inline TensorSet zeros_like(const PolicyParams & p)
{
  TensorSet g;
  for (int i = 0; i < kTensorCount; ++i) {
    g[i].assign(p.tensors[i].size(), 0.0);
  }
  return g;
}

/// Seeded initialization. Encoder and head draws do not depend on the
/// mode, so every mode built from one seed shares them; the conditioning
/// path starts as the identity (gamma = 1, beta = 0, concat weights 0).
inline PolicyParams init_policy(const PolicyConfig & config, std::uint64_t seed)
{
  config.validate();
  PolicyParams p;
  p.config = config;
  const auto shapes = tensor_shapes(config);
  for (int i = 0; i < kTensorCount; ++i) {
    p.tensors[i].assign(shape_size(shapes[i]), 0.0);
  }
  Rng rng(seed);
  auto fill = [&](std::vector<double> & t, double stddev) {
      for (auto & v : t) {
        v = stddev * rng.normal();
      }
    };
  const int c = config.conv2_channels;
  fill(p.tensors[kConv1W], 1.0 / std::sqrt(config.conv1_kernel * config.conv1_kernel * config.C));
  fill(p.tensors[kConv2W], 1.0 / std::sqrt(config.conv2_kernel * config.conv2_kernel * config.conv1_channels));
  fill(p.tensors[kHeadW1], 1.0 / std::sqrt(config.pooled_size()));
  fill(p.tensors[kHeadW2], 0.1 / std::sqrt(config.head_hidden));

  Rng cond(mix_seed(seed, 0xf11f));
  if (uses_film(config.mode)) {
    for (auto & v : p.tensors[kFilmW1]) {
      v = cond.normal() / std::sqrt(config.film_inputs());
    }
    for (int k = 0; k < c; ++k) {
      p.tensors[kFilmB2][k] = 1.0;
    }
  }
  return p;
}

/// FiLM: per-channel affine transform of a feature map laid out
/// [cell][channel]; spatial structure is untouched.
inline std::vector<double> film(std::span<const double> features, std::span<const double> gamma, std::span<const double> beta)
{
  if (gamma.size() != beta.size() || gamma.empty() || features.size() % gamma.size() != 0) {
    throw InvalidArgument("film: feature map and modulation shapes disagree");
  }
  const std::size_t c = gamma.size();
  std::vector<double> out(features.size());
  for (std::size_t i = 0; i < features.size(); i += c) {
    for (std::size_t k = 0; k < c; ++k) {
      out[i + k] = gamma[k] * features[i + k] + beta[k];
    }
  }
  return out;
}

/// Squared Euclidean error between waypoints.
inline double waypoint_loss(const Vec2 & pred, const Vec2 & target)
{
  return (pred - target).squaredNorm();
}

/// Activations kept for the backward pass. Reused across samples.
struct PolicyWorkspace
{
  std::vector<std::size_t> active;  ///< painted input cells
  std::vector<double> h1, h2, ft, dh1, dz2;
  std::vector<double> film_in, film_h, gamma, beta;
  std::vector<double> pooled, head_h;
  Vec2 cond_z;
  std::array<double, 2> u{};
  Vec2 out;
  const EgoRaster * raster{nullptr};
};

namespace detail
{

inline void check_raster(const EgoRaster & r, const PolicyConfig & c)
{
  if (r.W != c.W || r.R != c.R || r.C != c.C) {
    throw InvalidArgument(
            "policy: raster " + std::to_string(r.W) + "x" + std::to_string(r.R) + "x" +
            std::to_string(r.C) + " does not match config " + std::to_string(c.W) + "x" +
            std::to_string(c.R) + "x" + std::to_string(c.C));
  }
}

inline double sgn(double v) {return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);}

}  // namespace detail

/// Forward pass, keeping activations in ws.
inline Vec2 forward(
  PolicyWorkspace & ws, const EgoRaster & raster, const Intent & intent, double aux_dist,
  const PolicyParams & params)
{
  const PolicyConfig & c = params.config;
  detail::check_raster(raster, c);
  for (int i = 0; i < kTensorCount; ++i) {
    if (params.tensors[i].size() != shape_size(tensor_shapes(c)[i])) {
      throw InvalidArgument("policy: tensor " + std::string(kTensorNames[i]) + " has the wrong size");
    }
  }
  const auto & T = params.tensors;
  const int cells = c.W * c.R;
  const int c1 = c.conv1_channels, c2 = c.conv2_channels;
  ws.raster = &raster;

  // Stage 1: sparse scatter; unpainted inputs are exactly zero.
  ws.active.clear();
  for (int i = 0; i < cells; ++i) {
    if (raster.occupancy[static_cast<std::size_t>(i)]) {
      ws.active.push_back(static_cast<std::size_t>(i));
    }
  }
  ws.h1.assign(static_cast<std::size_t>(cells) * c1, 0.0);
  for (int i = 0; i < cells; ++i) {
    std::copy(T[kConv1B].begin(), T[kConv1B].end(), ws.h1.begin() + static_cast<long>(i) * c1);
  }
  const int k1 = c.conv1_kernel, hk1 = k1 / 2;
  for (std::size_t cell : ws.active) {
    const int r0 = static_cast<int>(cell) / c.W, w0 = static_cast<int>(cell) % c.W;
    const double * x = raster.values.data() + cell * c.C;
    for (int dr = -hk1; dr <= hk1; ++dr) {
      for (int dw = -hk1; dw <= hk1; ++dw) {
        const int r = r0 - dr, w = w0 - dw;
        if (r < 0 || r >= c.R || w < 0 || w >= c.W) {
          continue;
        }
        const double * wt = T[kConv1W].data() + static_cast<std::size_t>((dr + hk1) * k1 + (dw + hk1)) * c.C * c1;
        double * out = ws.h1.data() + (static_cast<std::size_t>(r) * c.W + w) * c1;
        for (int ci = 0; ci < c.C; ++ci) {
          const double xv = x[ci];
          const double * wrow = wt + static_cast<std::size_t>(ci) * c1;
          for (int co = 0; co < c1; ++co) {
            out[co] += wrow[co] * xv;
          }
        }
      }
    }
  }
  for (auto & v : ws.h1) {
    v = std::tanh(v);
  }

  // Stage 2: dense convolution.
  const int k2 = c.conv2_kernel, hk2 = k2 / 2;
  ws.h2.assign(static_cast<std::size_t>(cells) * c2, 0.0);
  for (int r = 0; r < c.R; ++r) {
    for (int w = 0; w < c.W; ++w) {
      double * out = ws.h2.data() + (static_cast<std::size_t>(r) * c.W + w) * c2;
      std::copy(T[kConv2B].begin(), T[kConv2B].end(), out);
      for (int dr = -hk2; dr <= hk2; ++dr) {
        for (int dw = -hk2; dw <= hk2; ++dw) {
          const int rr = r + dr, ww = w + dw;
          if (rr < 0 || rr >= c.R || ww < 0 || ww >= c.W) {
            continue;
          }
          const double * in = ws.h1.data() + (static_cast<std::size_t>(rr) * c.W + ww) * c1;
          const double * wt = T[kConv2W].data() + static_cast<std::size_t>((dr + hk2) * k2 + (dw + hk2)) * c1 * c2;
          for (int ci = 0; ci < c1; ++ci) {
            const double xv = in[ci];
            const double * wrow = wt + static_cast<std::size_t>(ci) * c2;
            for (int co = 0; co < c2; ++co) {
              out[co] += wrow[co] * xv;
            }
          }
        }
      }
      for (int co = 0; co < c2; ++co) {
        out[co] = std::tanh(out[co]);
      }
    }
  }

  // Conditioning.
  ws.cond_z = intent.z;
  if (uses_film(c.mode)) {
    ws.film_in.assign(static_cast<std::size_t>(c.film_inputs()), 0.0);
    if (c.mode == ConditioningMode::film_sign) {
      ws.film_in[0] = detail::sgn(intent.z.x);
      ws.film_in[1] = detail::sgn(intent.z.y);
    } else {
      ws.film_in[0] = intent.z.x;
      ws.film_in[1] = intent.z.y;
    }
    if (c.mode == ConditioningMode::film_dist) {
      const double d = std::isfinite(aux_dist) ? aux_dist : c.dist_norm;
      ws.film_in[2] = std::min(std::max(d, 0.0), c.dist_norm) / c.dist_norm;
    }
    const int hf = c.film_hidden, m = c.film_inputs();
    ws.film_h.assign(static_cast<std::size_t>(hf), 0.0);
    for (int j = 0; j < hf; ++j) {
      double a = T[kFilmB1][j];
      for (int i = 0; i < m; ++i) {
        a += T[kFilmW1][static_cast<std::size_t>(j) * m + i] * ws.film_in[i];
      }
      ws.film_h[j] = std::tanh(a);
    }
    ws.gamma.assign(static_cast<std::size_t>(c2), 0.0);
    ws.beta.assign(static_cast<std::size_t>(c2), 0.0);
    for (int o = 0; o < 2 * c2; ++o) {
      double a = T[kFilmB2][o];
      for (int j = 0; j < hf; ++j) {
        a += T[kFilmW2][static_cast<std::size_t>(o) * hf + j] * ws.film_h[j];
      }
      (o < c2 ? ws.gamma[o] : ws.beta[o - c2]) = a;
    }
    ws.ft = film(ws.h2, ws.gamma, ws.beta);
  } else {
    ws.ft = ws.h2;
  }

  // Sector pooling: average over bands and over each azimuth sector.
  const int per_sector = c.W / c.sectors;
  const double inv = 1.0 / (per_sector * c.R);
  ws.pooled.assign(static_cast<std::size_t>(c.pooled_size()), 0.0);
  for (int r = 0; r < c.R; ++r) {
    for (int w = 0; w < c.W; ++w) {
      const int s = w / per_sector;
      const double * f = ws.ft.data() + (static_cast<std::size_t>(r) * c.W + w) * c2;
      double * p = ws.pooled.data() + static_cast<std::size_t>(s) * c2;
      for (int co = 0; co < c2; ++co) {
        p[co] += f[co];
      }
    }
  }
  for (auto & v : ws.pooled) {
    v *= inv;
  }

  // Head.
  const int hh = c.head_hidden, np = c.pooled_size();
  ws.head_h.assign(static_cast<std::size_t>(hh), 0.0);
  for (int j = 0; j < hh; ++j) {
    double a = T[kHeadB1][j];
    const double * wrow = T[kHeadW1].data() + static_cast<std::size_t>(j) * np;
    for (int i = 0; i < np; ++i) {
      a += wrow[i] * ws.pooled[i];
    }
    if (c.mode == ConditioningMode::concat) {
      a += T[kConcatW][static_cast<std::size_t>(j) * 2] * intent.z.x +
        T[kConcatW][static_cast<std::size_t>(j) * 2 + 1] * intent.z.y;
    }
    ws.head_h[j] = std::tanh(a);
  }
  for (int o = 0; o < 2; ++o) {
    double a = T[kHeadB2][o];
    for (int j = 0; j < hh; ++j) {
      a += T[kHeadW2][static_cast<std::size_t>(o) * hh + j] * ws.head_h[j];
    }
    ws.u[o] = a;
  }
  // Smooth saturation to radius w_max.
  const double q = ws.u[0] * ws.u[0] + ws.u[1] * ws.u[1];
  const double k = c.w_max / std::sqrt(c.w_max * c.w_max + q);
  ws.out = {ws.u[0] * k, ws.u[1] * k};
  return ws.out;
}

inline Vec2 forward(const EgoRaster & raster, const Intent & intent, double aux_dist, const PolicyParams & params)
{
  PolicyWorkspace ws;
  return forward(ws, raster, intent, aux_dist, params);
}

/// Accumulates d(loss)/d(params) into grads given d(loss)/d(output), using
/// the activations of the last forward call on ws.
inline void backward(PolicyWorkspace & ws, const Vec2 & d_out, const PolicyParams & params, TensorSet & grads)
{
  const PolicyConfig & c = params.config;
  const auto & T = params.tensors;
  const int cells = c.W * c.R;
  const int c1 = c.conv1_channels, c2 = c.conv2_channels;
  const int hh = c.head_hidden, np = c.pooled_size();

  // Saturation Jacobian (symmetric).
  const double q = ws.u[0] * ws.u[0] + ws.u[1] * ws.u[1];
  const double s2 = c.w_max * c.w_max + q;
  const double k = c.w_max / std::sqrt(s2);
  const double k3 = k / s2;
  const double udot = ws.u[0] * d_out.x + ws.u[1] * d_out.y;
  const std::array<double, 2> du = {k * d_out.x - k3 * ws.u[0] * udot, k * d_out.y - k3 * ws.u[1] * udot};

  std::vector<double> dhh(static_cast<std::size_t>(hh), 0.0);
  for (int o = 0; o < 2; ++o) {
    grads[kHeadB2][o] += du[o];
    for (int j = 0; j < hh; ++j) {
      grads[kHeadW2][static_cast<std::size_t>(o) * hh + j] += du[o] * ws.head_h[j];
      dhh[j] += T[kHeadW2][static_cast<std::size_t>(o) * hh + j] * du[o];
    }
  }
  std::vector<double> dpooled(static_cast<std::size_t>(np), 0.0);
  for (int j = 0; j < hh; ++j) {
    const double dz = dhh[j] * (1.0 - ws.head_h[j] * ws.head_h[j]);
    grads[kHeadB1][j] += dz;
    double * grow = grads[kHeadW1].data() + static_cast<std::size_t>(j) * np;
    const double * wrow = T[kHeadW1].data() + static_cast<std::size_t>(j) * np;
    for (int i = 0; i < np; ++i) {
      grow[i] += dz * ws.pooled[i];
      dpooled[i] += wrow[i] * dz;
    }
    if (c.mode == ConditioningMode::concat) {
      grads[kConcatW][static_cast<std::size_t>(j) * 2] += dz * ws.cond_z.x;
      grads[kConcatW][static_cast<std::size_t>(j) * 2 + 1] += dz * ws.cond_z.y;
    }
  }

  // Pooling and FiLM: d(ft) is dpooled / N per cell of the sector.
  const int per_sector = c.W / c.sectors;
  const double inv = 1.0 / (per_sector * c.R);
  const bool has_film = uses_film(c.mode);
  std::vector<double> dgamma(static_cast<std::size_t>(c2), 0.0), dbeta(static_cast<std::size_t>(c2), 0.0);
  ws.dz2.assign(static_cast<std::size_t>(cells) * c2, 0.0);
  for (int r = 0; r < c.R; ++r) {
    for (int w = 0; w < c.W; ++w) {
      const int s = w / per_sector;
      const std::size_t base = (static_cast<std::size_t>(r) * c.W + w) * c2;
      const double * dp = dpooled.data() + static_cast<std::size_t>(s) * c2;
      for (int co = 0; co < c2; ++co) {
        const double dft = dp[co] * inv;
        const double h = ws.h2[base + co];
        double dh = dft;
        if (has_film) {
          dgamma[co] += dft * h;
          dbeta[co] += dft;
          dh = ws.gamma[co] * dft;
        }
        ws.dz2[base + co] = dh * (1.0 - h * h);
      }
    }
  }

  if (has_film) {
    const int hf = c.film_hidden, m = c.film_inputs();
    std::vector<double> dfh(static_cast<std::size_t>(hf), 0.0);
    for (int o = 0; o < 2 * c2; ++o) {
      const double g = o < c2 ? dgamma[o] : dbeta[o - c2];
      grads[kFilmB2][o] += g;
      for (int j = 0; j < hf; ++j) {
        grads[kFilmW2][static_cast<std::size_t>(o) * hf + j] += g * ws.film_h[j];
        dfh[j] += T[kFilmW2][static_cast<std::size_t>(o) * hf + j] * g;
      }
    }
    for (int j = 0; j < hf; ++j) {
      const double dz = dfh[j] * (1.0 - ws.film_h[j] * ws.film_h[j]);
      grads[kFilmB1][j] += dz;
      for (int i = 0; i < m; ++i) {
        grads[kFilmW1][static_cast<std::size_t>(j) * m + i] += dz * ws.film_in[i];
      }
    }
  }

  // Stage 2 backward.
  const int k2 = c.conv2_kernel, hk2 = k2 / 2;
  ws.dh1.assign(static_cast<std::size_t>(cells) * c1, 0.0);
  for (int r = 0; r < c.R; ++r) {
    for (int w = 0; w < c.W; ++w) {
      const double * dz = ws.dz2.data() + (static_cast<std::size_t>(r) * c.W + w) * c2;
      for (int co = 0; co < c2; ++co) {
        grads[kConv2B][co] += dz[co];
      }
      for (int dr = -hk2; dr <= hk2; ++dr) {
        for (int dw = -hk2; dw <= hk2; ++dw) {
          const int rr = r + dr, ww = w + dw;
          if (rr < 0 || rr >= c.R || ww < 0 || ww >= c.W) {
            continue;
          }
          const std::size_t nb = (static_cast<std::size_t>(rr) * c.W + ww) * c1;
          const std::size_t off = static_cast<std::size_t>((dr + hk2) * k2 + (dw + hk2)) * c1 * c2;
          for (int ci = 0; ci < c1; ++ci) {
            const double xv = ws.h1[nb + ci];
            const double * wrow = T[kConv2W].data() + off + static_cast<std::size_t>(ci) * c2;
            double * grow = grads[kConv2W].data() + off + static_cast<std::size_t>(ci) * c2;
            double acc = 0.0;
            for (int co = 0; co < c2; ++co) {
              grow[co] += xv * dz[co];
              acc += wrow[co] * dz[co];
            }
            ws.dh1[nb + ci] += acc;
          }
        }
      }
    }
  }

  // Stage 1 backward; bias sees every cell, weights only painted inputs.
  for (std::size_t i = 0; i < ws.dh1.size(); ++i) {
    ws.dh1[i] *= 1.0 - ws.h1[i] * ws.h1[i];
  }
  for (int i = 0; i < cells; ++i) {
    for (int co = 0; co < c1; ++co) {
      grads[kConv1B][co] += ws.dh1[static_cast<std::size_t>(i) * c1 + co];
    }
  }
  const int k1 = c.conv1_kernel, hk1 = k1 / 2;
  const EgoRaster & raster = *ws.raster;
  for (std::size_t cell : ws.active) {
    const int r0 = static_cast<int>(cell) / c.W, w0 = static_cast<int>(cell) % c.W;
    const double * x = raster.values.data() + cell * c.C;
    for (int dr = -hk1; dr <= hk1; ++dr) {
      for (int dw = -hk1; dw <= hk1; ++dw) {
        const int r = r0 - dr, w = w0 - dw;
        if (r < 0 || r >= c.R || w < 0 || w >= c.W) {
          continue;
        }
        const double * dz = ws.dh1.data() + (static_cast<std::size_t>(r) * c.W + w) * c1;
        double * g = grads[kConv1W].data() + static_cast<std::size_t>((dr + hk1) * k1 + (dw + hk1)) * c.C * c1;
        for (int ci = 0; ci < c.C; ++ci) {
          const double xv = x[ci];
          double * grow = g + static_cast<std::size_t>(ci) * c1;
          for (int co = 0; co < c1; ++co) {
            grow[co] += xv * dz[co];
          }
        }
      }
    }
  }
}

struct TrainSample
{
  EgoRaster raster;
  Intent intent;
  double aux_dist{0.0};
  Vec2 target;
};

struct GradientResult
{
  double loss{0.0};
  Vec2 prediction;
  TensorSet grads;
};

/// Exact gradient of the squared waypoint error for one sample.
inline GradientResult gradients(const TrainSample & sample, const PolicyParams & params)
{
  PolicyWorkspace ws;
  GradientResult r;
  r.prediction = forward(ws, sample.raster, sample.intent, sample.aux_dist, params);
  r.loss = waypoint_loss(r.prediction, sample.target);
  r.grads = zeros_like(params);
  backward(ws, (r.prediction - sample.target) * 2.0, params, r.grads);
  return r;
}

}  // namespace intentnav
