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

// Safeguarded scalar root finding shared by the prox solvers, the Bregman
// projector, and the Lambert W fallback.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>

namespace bregvar::roots {

struct RootResult {
  double x = 0.0;
  int iterations = 0;
  double residual = 0.0;  // |g(x)|
  bool converged = false;
};

// Value and derivative of g at a point.
using ValueAndSlope = std::function<std::pair<double, double>(double)>;

struct Bracket {
  double lo;
  double hi;
};

// Searches for [a, b] with g(a) <= 0 <= g(b) for a nondecreasing g defined on
// the open interval (domain_lo, domain_hi), starting from x0 inside it.
// Finite endpoints are approached by halving the gap; infinite ones by
// geometric expansion. Returns nullopt if no sign change is found.
std::optional<Bracket> bracket_increasing(const std::function<double(double)>& g,
                                          double x0, double domain_lo,
                                          double domain_hi);

// Hybrid Newton/bisection on a bracket with g(lo) <= 0 <= g(hi) (g
// nondecreasing). Newton steps that leave the current bracket, or fail to
// halve it, fall back to bisection. Stops when |g| <= ftol, or the bracket
// shrinks below xtol * max(|lo|, |hi|) or to adjacent doubles.
RootResult safeguarded_newton(const ValueAndSlope& g, Bracket bracket,
                              double ftol, double xtol = 4 * std::numeric_limits<double>::epsilon(),
                              int max_iter = 200);

}  // namespace bregvar::roots
