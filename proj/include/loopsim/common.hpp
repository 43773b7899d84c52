// Copyright 2026 The Loopsim Authors.
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

#ifndef LOOPSIM_COMMON_HPP_
#define LOOPSIM_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace loopsim {

// External identifiers as they appear in the data files.
using UserId = std::int64_t;
using ItemId = std::int64_t;

// Dense internal indices. Index order equals ascending external id order.
using UserIndex = std::uint32_t;
using ItemIndex = std::uint32_t;

struct RatingBounds {
  int min = 1;
  int max = 5;

  bool contains(int r) const { return r >= min && r <= max; }
};

// Origin tag of a rating: 0 for the initial data, t >= 1 for a rating
// injected by simulation iteration t.
inline constexpr int kInitialOrigin = 0;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Carries the offending file and 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

class DuplicateRatingError : public Error {
 public:
  using Error::Error;
};

class RatingRangeError : public Error {
 public:
  using Error::Error;
};

class UnknownEntityError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration value. field() names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace loopsim

#endif  // LOOPSIM_COMMON_HPP_
