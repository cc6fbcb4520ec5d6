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
#include <numbers>

#include "intentnav/errors.hpp"

namespace intentnav
{

inline constexpr double kPi = std::numbers::pi;

struct Vec2
{
  double x{0.0};
  double y{0.0};

  constexpr Vec2 operator+(const Vec2 & o) const {return {x + o.x, y + o.y};}
  constexpr Vec2 operator-(const Vec2 & o) const {return {x - o.x, y - o.y};}
  constexpr Vec2 operator*(double s) const {return {x * s, y * s};}
  constexpr Vec2 operator-() const {return {-x, -y};}
  constexpr bool operator==(const Vec2 &) const = default;

  double norm() const {return std::hypot(x, y);}
  constexpr double squaredNorm() const {return x * x + y * y;}
  constexpr double dot(const Vec2 & o) const {return x * o.x + y * o.y;}
  constexpr double cross(const Vec2 & o) const {return x * o.y - y * o.x;}
};

inline double distance(const Vec2 & a, const Vec2 & b) {return (a - b).norm();}

/// Planar pose; yaw is kept in (-pi, pi] by the functions that produce it.
struct Pose2
{
  Vec2 position;
  double yaw{0.0};

  constexpr bool operator==(const Pose2 &) const = default;
};

/// Wraps an angle to (-pi, pi]; -pi maps to pi.
inline double wrap_angle(double a)
{
  if (!std::isfinite(a)) {
    throw InvalidArgument("wrap_angle: non-finite angle");
  }
  if (a > -kPi && a <= kPi) {
    return a;
  }
  double r = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) {
    r += 2.0 * kPi;
  }
  return r;
}

/// Strongly typed wrapped angle.
class AngleRad
{
public:
  constexpr AngleRad() = default;
  explicit AngleRad(double a)
  : value_(wrap_angle(a)) {}

  constexpr double value() const {return value_;}
  constexpr bool operator==(const AngleRad &) const = default;

private:
  double value_{0.0};
};

inline Vec2 rotate(const Vec2 & v, double angle)
{
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

inline Vec2 world_to_robot(const Pose2 & pose, const Vec2 & p)
{
  return rotate(p - pose.position, -pose.yaw);
}

inline Vec2 robot_to_world(const Pose2 & pose, const Vec2 & q)
{
  return rotate(q, pose.yaw) + pose.position;
}

inline double heading_of(const Vec2 & v) {return std::atan2(v.y, v.x);}

/// Bearing of p relative to the robot heading.
inline AngleRad bearing(const Pose2 & pose, const Vec2 & p)
{
  const Vec2 d = p - pose.position;
  if (d.x == 0.0 && d.y == 0.0) {
    throw DegenerateGeometry("bearing: point coincides with robot position");
  }
  return AngleRad(std::atan2(d.y, d.x) - pose.yaw);
}

}  // namespace intentnav
