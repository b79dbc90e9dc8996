// Copyright 2026 The eqfuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EQFUZZ_ERRORS_HPP_
#define EQFUZZ_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqfuzz {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text. `line` is 1-based when the input is line-delimited, 0
// otherwise.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class CorpusError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Rejection sampling hit its retry cap: the schema is over-constrained.
class GenerationExhausted : public Error {
 public:
  using Error::Error;
};

// Failure of the harness itself (spawn failure, adapter protocol violation,
// unrunnable reference). Never folded into an ExecutionOutcome.
class HarnessError : public Error {
 public:
  using Error::Error;
};

// Too many inputs had to be discarded for one problem.
class DataQualityError : public Error {
 public:
  using Error::Error;
};

class ServiceError : public Error {
 public:
  using Error::Error;
};

class AuthError : public ServiceError {
 public:
  using ServiceError::ServiceError;
};

class RateLimitError : public ServiceError {
 public:
  using ServiceError::ServiceError;
};

class TransportError : public ServiceError {
 public:
  using ServiceError::ServiceError;
};

class EmptyRefactoring : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace eqfuzz

#endif  // EQFUZZ_ERRORS_HPP_
