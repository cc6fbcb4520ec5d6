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

#include <stdexcept>
#include <string>

namespace intentnav
{

/// Base for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error
{
public:
  using Error::Error;
};

/// Bearing or intent requested toward the robot's own position.
class DegenerateGeometry : public Error
{
public:
  using Error::Error;
};

/// Observation frames added out of order.
class InvalidSequence : public Error
{
public:
  using Error::Error;
};

/// Malformed map / world / weights / config file. The message carries the
/// offending line or JSON field path.
class ParseError : public Error
{
public:
  using Error::Error;
};

/// No visible node has a finite distance to the goal.
class NoSubgoal : public Error
{
public:
  using Error::Error;
};

class GenerationError : public Error
{
public:
  using Error::Error;
};

class TrainingDiverged : public Error
{
public:
  using Error::Error;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

/// SSPL(0) is zero, so the relative drop is undefined.
class UndefinedDrop : public Error
{
public:
  using Error::Error;
};

}  // namespace intentnav
