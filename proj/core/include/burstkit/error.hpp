/* Copyright 2026 The burstkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace burstkit {

// Base for every error raised by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid distribution or model parameter (non-positive scale, bad weights...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Invalid scenario/fragmentation configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input data. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Wire decode failure (short buffer, inconsistent header fields).
class DecodeError : public Error {
 public:
  using Error::Error;
};

// GenerateBurst() called on a generator with no bursts left.
class ExhaustedError : public Error {
 public:
  using Error::Error;
};

// Not enough (or degenerate) data to run a statistical fit.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// I/O failure on files or sockets.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace burstkit
