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
#include <fstream>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "intentnav/errors.hpp"
#include "intentnav/geom.hpp"
#include "intentnav/planner.hpp"

namespace intentnav
{

/// Fixed sinusoidal distance encoding: C/2 frequency pairs with wavelengths
/// base_wavelength * ratio^k.
struct SinEncodingSpec
{
  int channels{16};
  double base_wavelength{0.5};
  double ratio{2.0};

  void validate() const
  {
    if (channels < 2 || channels % 2 != 0) {
      throw InvalidArgument("encoding channels must be even and >= 2");
    }
    if (!(base_wavelength > 0.0) || !(ratio > 1.0)) {
      throw InvalidArgument("encoding needs base_wavelength > 0 and ratio > 1");
    }
  }

  double wavelength(int k) const {return base_wavelength * std::pow(ratio, k);}
  double max_wavelength() const {return wavelength(channels / 2 - 1);}

  /// Stand-in distance for unreachable nodes. Three quarters of the longest
  /// wavelength keeps it distinct from d = 0 on the coarsest channel pair.
  double sentinel() const {return 0.75 * max_wavelength();}
};

inline std::vector<double> encode_distance(double d, const SinEncodingSpec & spec)
{
  spec.validate();
  if (std::isinf(d) && d > 0) {
    d = spec.sentinel();
  }
  if (!std::isfinite(d) || d < 0.0) {
    throw InvalidArgument("encode_distance: distance must be finite and >= 0");
  }
  std::vector<double> out(static_cast<std::size_t>(spec.channels));
  for (int k = 0; k < spec.channels / 2; ++k) {
    const double w = 2.0 * kPi / spec.wavelength(k);
    out[2 * k] = std::sin(w * d);
    out[2 * k + 1] = std::cos(w * d);
  }
  return out;
}

/// Nearest-encoding lookup over [0, max_wavelength) on a grid of `step`.
inline double decode_distance(std::span<const double> code, const SinEncodingSpec & spec, double step = 0.01)
{
  double best = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  const double top = spec.max_wavelength();
  const auto n = static_cast<long>(std::floor(top / step));
  for (long i = 0; i < n; ++i) {
    const double d = static_cast<double>(i) * step;
    double err = 0.0;
    for (int k = 0; k < spec.channels / 2; ++k) {
      const double w = 2.0 * kPi / spec.wavelength(k);
      const double ds = std::sin(w * d) - code[2 * k];
      const double dc = std::cos(w * d) - code[2 * k + 1];
      err += ds * ds + dc * dc;
    }
    if (err < best_err) {
      best_err = err;
      best = d;
    }
  }
  return best;
}

struct RasterSpec
{
  int azimuth_bins{64};       ///< W
  int range_bands{8};         ///< R
  double fov{kPi / 2};        ///< radians, centred on the heading
  double max_range{8.0};      ///< metres
  SinEncodingSpec encoding;

  int channels() const {return encoding.channels;}
};

/// One visible object handed to the rasterizer.
struct VisibleObject
{
  NodeId node_id{0};
  double bearing{0.0};
  double range{0.0};
  double angular_extent{0.0};
};

/// Egocentric azimuth x range raster; layout [band][bin][channel]. Unpainted
/// cells hold the all-zero code.
struct EgoRaster
{
  int W{0};
  int R{0};
  int C{0};
  std::vector<double> values;
  std::vector<std::uint8_t> occupancy;  ///< [band][bin]
  std::vector<double> cell_distance;    ///< painted distance, +inf when free

  EgoRaster() = default;
  EgoRaster(int w, int r, int c)
  : W(w), R(r), C(c),
    values(static_cast<std::size_t>(w) * r * c, 0.0),
    occupancy(static_cast<std::size_t>(w) * r, 0),
    cell_distance(static_cast<std::size_t>(w) * r, std::numeric_limits<double>::infinity()) {}

  std::size_t cell(int band, int bin) const {return static_cast<std::size_t>(band) * W + bin;}
  std::span<const double> code(int band, int bin) const
  {
    return {values.data() + cell(band, bin) * C, static_cast<std::size_t>(C)};
  }
  bool painted(int band, int bin) const {return occupancy[cell(band, bin)] != 0;}
  std::size_t painted_count() const
  {
    return static_cast<std::size_t>(std::count(occupancy.begin(), occupancy.end(), 1));
  }

  bool operator==(const EgoRaster &) const = default;
};

inline double bin_center(const RasterSpec & spec, int bin)
{
  const double width = spec.fov / spec.azimuth_bins;
  return -spec.fov / 2 + (bin + 0.5) * width;
}

/// Paints each object over the azimuth bins whose centre lies within
/// bearing +- extent (at least the bin containing the bearing), in the band
/// of its range. Overlaps keep the smaller distance.
inline EgoRaster rasterize(
  std::span<const VisibleObject> visible, const DistanceField & field, const RasterSpec & spec)
{
  spec.encoding.validate();
  EgoRaster raster(spec.azimuth_bins, spec.range_bands, spec.channels());
  const double width = spec.fov / spec.azimuth_bins;
  for (const auto & v : visible) {
    const double d = field.at(v.node_id);
    const double dkey = std::isfinite(d) ? d : spec.encoding.sentinel();
    int band = static_cast<int>(std::floor(v.range / spec.max_range * spec.range_bands));
    band = std::clamp(band, 0, spec.range_bands - 1);
    const double lo = v.bearing - v.angular_extent;
    const double hi = v.bearing + v.angular_extent;
    int first = static_cast<int>(std::ceil((lo + spec.fov / 2) / width - 0.5));
    int last = static_cast<int>(std::floor((hi + spec.fov / 2) / width - 0.5));
    first = std::max(first, 0);
    last = std::min(last, spec.azimuth_bins - 1);
    if (first > last) {
      int own = static_cast<int>(std::floor((v.bearing + spec.fov / 2) / width));
      first = last = std::clamp(own, 0, spec.azimuth_bins - 1);
    }
    std::vector<double> code;
    for (int bin = first; bin <= last; ++bin) {
      const std::size_t c = raster.cell(band, bin);
      if (raster.occupancy[c] && raster.cell_distance[c] <= dkey) {
        continue;
      }
      if (code.empty()) {
        code = encode_distance(dkey, spec.encoding);
      }
      raster.occupancy[c] = 1;
      raster.cell_distance[c] = dkey;
      std::copy(code.begin(), code.end(), raster.values.begin() + static_cast<long>(c) * spec.channels());
    }
  }
  return raster;
}

/// Grayscale dump: one pixel row per band (nearest band at the bottom), one
/// column per bin; free cells white, painted cells darker for larger decoded
/// distance.
inline void write_raster_pgm(const EgoRaster & raster, const SinEncodingSpec & spec, const std::string & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << "P2\n" << raster.W << " " << raster.R << "\n255\n";
  const double top = spec.max_wavelength();
  for (int band = raster.R - 1; band >= 0; --band) {
    for (int bin = 0; bin < raster.W; ++bin) {
      int v = 255;
      if (raster.painted(band, bin)) {
        const double d = decode_distance(raster.code(band, bin), spec, 0.05);
        v = static_cast<int>(std::lround(200.0 * (1.0 - std::min(d / (top / 4), 1.0))));
      }
      out << v << (bin + 1 < raster.W ? " " : "\n");
    }
  }
}

}  // namespace intentnav
