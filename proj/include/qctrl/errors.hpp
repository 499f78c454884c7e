// Copyright 2026 The qctrl Authors
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

namespace qctrl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied something outside an operation's domain.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The request is well-formed but falls outside the regime a formula covers
/// (e.g. complex coupling for the standard-quantum-limit bound).
class UnsupportedRegime : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A computation ran but its result cannot be trusted.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Fock-space truncation lost too much probability weight.
class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, double t = 0.0)
      : NumericalError(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Step halving or adaptive refinement did not reach the requested tolerance.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A quantity is mathematically undefined at the requested point
/// (ratio with a vanishing denominator, bound with zero photons).
class UndefinedResult : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An integral or sum grows without bound; no finite value exists.
class DivergentIntegral : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qctrl
