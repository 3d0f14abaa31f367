// Copyright 2026 The measqc Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace measqc {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : Error(format(msg, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& msg, std::size_t line,
                            std::size_t column) {
    if (line == 0) return msg;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + msg;
  }

  std::size_t line_;
  std::size_t column_;
};

// Well-formed input that violates a data-model invariant. Carries the
// offending annotation ids (or document ids) so callers can report them.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& msg, std::vector<std::string> ids = {})
      : Error(format(msg, ids)), ids_(std::move(ids)) {}

  const std::vector<std::string>& ids() const { return ids_; }

 private:
  static std::string format(const std::string& msg,
                            const std::vector<std::string>& ids) {
    if (ids.empty()) return msg;
    std::string out = msg + " [";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out += ", ";
      out += ids[i];
    }
    return out + "]";
  }

  std::vector<std::string> ids_;
};

// A file that cannot be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Invalid reward or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace measqc
