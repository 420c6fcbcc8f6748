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

// Brute-force reference solvers. These evaluate only function values of the
// kernel and penalty (in extended precision) and never call the prox or
// projection code they are used to check.

#include <span>

#include "bregvar/kernels.hpp"
#include "bregvar/penalties.hpp"
#include "bregvar/sets.hpp"

namespace bregvar {

inline constexpr int kOracleGridPoints = 10000;
inline constexpr int kOracleGoldenSteps = 200;

// argmin_x gamma phi(x) + D^theta(x, xi): a 10^4-point grid in a
// coordinate that is logarithmic near finite endpoints, then golden-section
// refinement of the best cell. Throws InfeasibleError if the objective is
// +inf on the whole grid, DomainError if xi is not interior.
double prox_oracle(const ScalarKernel& kernel, const ScalarPenalty& penalty,
                   double gamma, double xi, double tol = 1e-18);

// Central differences of the weighted kernel values. Throws DomainError if
// x +/- h leaves the interior.
Vector finite_diff_gradient(const SeparableLegendre& f,
                            std::span<const double> x, double h = 1e-5);

// argmin_{x in set} D^f(x, y) by grid search and cyclic golden-section
// refinement over a parametrization of the set. Dimension <= 3.
Vector projection_oracle(const SeparableLegendre& f, const ConvexSet& set,
                         std::span<const double> y, double tol = 1e-12);

}  // namespace bregvar
