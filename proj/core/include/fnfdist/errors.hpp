// Copyright 2026 The fnfdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
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

namespace fnfdist {

// Base class of every error thrown by the library. Outcomes that callers are
// expected to branch on (a singular matrix, a non-generic Krylov pair) are
// returned as std::optional instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroInverse : public Error {
 public:
  ZeroInverse() : Error("inverse of zero") {}
};

class NotInvertibleSeries : public Error {
 public:
  NotInvertibleSeries() : Error("power series with zero constant term is not invertible") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class GenericityFailure : public Error {
 public:
  using Error::Error;
};

class DuplicatePosition : public Error {
 public:
  using Error::Error;
};

class EdgeAlreadyPresent : public Error {
 public:
  using Error::Error;
};

class EdgeAbsent : public Error {
 public:
  using Error::Error;
};

class WeightOutOfRange : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fnfdist
