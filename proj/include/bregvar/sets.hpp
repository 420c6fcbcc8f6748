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

#include <span>
#include <string>
#include <variant>

#include "bregvar/kernels.hpp"

namespace bregvar {

// {x : <a, x> = b}
struct HyperplaneSet {
  Vector a;
  double b = 0.0;
};

// {x : <a, x> <= b}
struct HalfspaceSet {
  Vector a;
  double b = 0.0;
};

// Product of closed intervals [lo_i, hi_i].
struct BoxSet {
  Vector lo;
  Vector hi;
};

using ConvexSet = std::variant<HyperplaneSet, HalfspaceSet, BoxSet>;

// Structural checks: nonzero normal, nonempty intervals. Throws InputError.
void validate_set(const ConvexSet& set, std::size_t dim);

// Membership up to tol (scaled by the data magnitude for linear sets).
bool set_contains(const ConvexSet& set, std::span<const double> x,
                  double tol = 1e-9);

std::string describe(const ConvexSet& set);

}  // namespace bregvar
