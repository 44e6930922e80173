// Copyright 2026 The Authors.
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

namespace tip {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid model parameters, option values or solver configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnknownIdError : public Error {
 public:
  using Error::Error;
};

// A billboard was committed or evaluated twice against the same set.
class DuplicateIdError : public Error {
 public:
  using Error::Error;
};

class QuantizationError : public Error {
 public:
  using Error::Error;
};

class PartitionError : public Error {
 public:
  using Error::Error;
};

// The exact oracle refuses universes above its size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tip
