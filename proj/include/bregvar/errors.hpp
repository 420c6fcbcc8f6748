// Copyright 2026 The bregvar Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bregvar {

// Malformed input: dimension mismatch, bad parameters, unknown names.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the (interior of the) domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what, std::ptrdiff_t coordinate = -1)
      : std::domain_error(what), coordinate_(coordinate) {}

  // Offending coordinate, or -1 for scalar operations.
  std::ptrdiff_t coordinate() const noexcept { return coordinate_; }

 private:
  std::ptrdiff_t coordinate_;
};

// A root-find or minimization that could not be brought to tolerance.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The target set does not meet the interior of the kernel domain.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No catalogued closed form for the requested kernel/penalty pair.
class NoClosedForm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bregvar
