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
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace intentnav
{

/// Seeded generator with distribution code owned here, so sequences are
/// identical across standard library implementations.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
  : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {return static_cast<double>(engine_() >> 11) * 0x1.0p-53;}

  double uniform(double lo, double hi) {return lo + (hi - lo) * uniform();}

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n)
  {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) {
      x = engine_();
    }
    return x % n;
  }

  bool bernoulli(double p) {return uniform() < p;}

  double normal()
  {
    double u1 = uniform();
    while (u1 <= 0.0) {
      u1 = uniform();
    }
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  template<typename T>
  void shuffle(std::span<T> items)
  {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  std::uint64_t next() {return engine_();}

private:
  std::mt19937_64 engine_;
};

/// Stable 64-bit mixing for deriving child seeds.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b)
{
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace intentnav
