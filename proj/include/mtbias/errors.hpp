// Copyright 2026 The mtbias Authors.
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

namespace mtbias {

// Base for every error raised by the library. The CLI maps subclasses to
// exit statuses.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration, detected before any work starts (exit status 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data: unknown category, participation out
// of range, duplicate adjective, corrupt snapshot line.
class DataError : public Error {
 public:
  using Error::Error;
};

// A stage file did not carry the schema the reader expected (exit status 4).
class SchemaError : public Error {
 public:
  SchemaError(const std::string& file, const std::string& expected,
              const std::string& found)
      : Error(file + ": expected schema '" + expected + "', found '" + found +
              "'"),
        expected_(expected),
        found_(found) {}

  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string expected_;
  std::string found_;
};

// The translation backend could not produce an answer after retries
// (exit status 3 when fatal to a run).
class Unavailable : public Error {
 public:
  using Error::Error;
};

// The backend answered with something that could not be interpreted.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A statistics scope selected no results.
class EmptyScope : public Error {
 public:
  using Error::Error;
};

}  // namespace mtbias
