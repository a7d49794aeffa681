// Copyright 2026 The robcep Authors.
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
#include <utility>
#include <vector>

namespace robcep {

/// Base of every error raised by the library. The CLI maps subclasses onto
/// exit codes, so new error kinds should derive from one of the three
/// families below rather than from Error directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input values: out-of-range lags, bad lengths, non-finite data.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Too few replicates to estimate a quantity.
class InsufficientDataError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Parameter ranges that cannot be satisfied (e.g. stationarity rejection).
class ConfigurationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed input files.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Numerical failures: IRLS divergence, Cholesky breakdown.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Raised when iteratively reweighted least squares hits its iteration cap.
/// Carries the last iterate so callers can inspect how far it got.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate)
      : NumericalError(what), last_iterate_(std::move(last_iterate)) {}

  const std::vector<double>& last_iterate() const noexcept {
    return last_iterate_;
  }

 private:
  std::vector<double> last_iterate_;
};

}  // namespace robcep
