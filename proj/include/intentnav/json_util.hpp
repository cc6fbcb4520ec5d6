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

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "intentnav/errors.hpp"

namespace intentnav::json_util
{

using nlohmann::json;

/// Parses text, converting syntax errors into ParseError with the line and
/// column reported by the parser.
inline json parse(const std::string & text, std::string_view what)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error & e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(
            std::string(what) + ": syntax error at line " + std::to_string(line) + ", column " +
            std::to_string(col) + ": " + e.what());
  }
}

inline std::string read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write " + path);
  }
  out << text;
}

inline void require_object(const json & j, const std::string & path)
{
  if (!j.is_object()) {
    throw ParseError(path + ": expected an object");
  }
}

/// Rejects any key outside the allowed set.
inline void only_keys(const json & j, const std::string & path, std::initializer_list<std::string_view> keys)
{
  for (const auto & [k, v] : j.items()) {
    bool known = false;
    for (auto allowed : keys) {
      known = known || k == allowed;
    }
    if (!known) {
      throw ParseError(path + ": unknown field '" + k + "'");
    }
  }
}

inline const json & field(const json & j, const std::string & path, const std::string & key)
{
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(path + ": missing field '" + key + "'");
  }
  return *it;
}

inline double number(const json & j, const std::string & path, const std::string & key)
{
  const json & v = field(j, path, key);
  if (!v.is_number()) {
    throw ParseError(path + "." + key + ": expected a number");
  }
  return v.get<double>();
}

inline long long integer(const json & j, const std::string & path, const std::string & key)
{
  const json & v = field(j, path, key);
  if (!v.is_number_integer()) {
    throw ParseError(path + "." + key + ": expected an integer");
  }
  return v.get<long long>();
}

inline const json & array(const json & j, const std::string & path, const std::string & key)
{
  const json & v = field(j, path, key);
  if (!v.is_array()) {
    throw ParseError(path + "." + key + ": expected an array");
  }
  return v;
}

inline void check_version(const json & j, const std::string & what, int expected)
{
  const long long v = integer(j, what, "version");
  if (v != expected) {
    throw ParseError(what + ".version: unsupported version " + std::to_string(v));
  }
}

}  // namespace intentnav::json_util
