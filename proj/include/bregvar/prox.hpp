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

// D^f-proximal operators and Bregman projectors.
//
// prox^theta_{gamma phi}(xi) is the unique minimizer of
//   gamma phi(x) + D^theta(x, xi),
// characterized by gamma phi'(eta) + theta'(eta) - theta'(xi) = 0 on the
// interior, with boundary solutions where dom phi has a closed endpoint
// inside int dom theta.

#include <span>
#include <vector>

#include "bregvar/kernels.hpp"
#include "bregvar/penalties.hpp"
#include "bregvar/sets.hpp"

namespace bregvar {

// Closed-form scalar prox from the catalog. Throws NoClosedForm when the
// (kernel, penalty, gamma) triple has no catalogued formula, and
// DomainError when xi is not interior or gamma <= 0.
double prox_scalar_closed(const ScalarKernel& kernel,
                          const ScalarPenalty& penalty, double gamma,
                          double xi);

// Solves the optimality equation by bracketed Newton/bisection. Throws
// NumericalFailure if no bracket can be established or the residual stays
// above tol (relative to 1 + |theta'(xi)|).
double prox_scalar_numeric(const ScalarKernel& kernel,
                           const ScalarPenalty& penalty, double gamma,
                           double xi, double tol = 1e-13);

// Closed form when catalogued, numeric otherwise.
double prox_scalar(const ScalarKernel& kernel, const ScalarPenalty& penalty,
                   double gamma, double xi);

// gamma phi'(eta) + theta'(eta) - theta'(xi).
double optimality_residual(const ScalarKernel& kernel,
                           const ScalarPenalty& penalty, double gamma,
                           double xi, double eta);

enum class ProxRoute { Auto, NumericOnly };

// Coordinatewise prox under f = sum_i w_i theta: coordinate i uses step
// gamma / w_i. Errors carry the coordinate index.
Vector prox_separable(const SeparableLegendre& f,
                      std::span<const ScalarPenalty> penalties, double gamma,
                      std::span<const double> y,
                      ProxRoute route = ProxRoute::Auto);

struct PythagorasCertificate {
  double lhs = 0.0;  // D(x, v) + D(v, y)
  double rhs = 0.0;  // D(x, y)
  bool holds = false;
};

// Checks D^f(x, v) + D^f(v, y) <= D^f(x, y) + slack.
PythagorasCertificate pythagoras_check(const SeparableLegendre& f,
                                       std::span<const double> x,
                                       std::span<const double> y,
                                       std::span<const double> v,
                                       double slack = 1e-10);

// argmin_{x in set} D^f(x, y). Throws InfeasibleError when the set misses
// int dom f, DomainError when y is not interior.
Vector bregman_project(const SeparableLegendre& f, const ConvexSet& set,
                       std::span<const double> y);

struct HalfspaceTest {
  double inner = 0.0;  // <z - y, grad f(x) - grad f(y)>
  double gap = 0.0;    // D(z, y) + D(y, x) - D(z, x); equals inner
  bool holds = false;
};

// Membership of z in H^f(x, y) = {z : <z - y, grad f(x) - grad f(y)> <= 0}.
HalfspaceTest hf_halfspace_test(const SeparableLegendre& f,
                                std::span<const double> x,
                                std::span<const double> y,
                                std::span<const double> z);
bool hf_halfspace_contains(const SeparableLegendre& f,
                           std::span<const double> x,
                           std::span<const double> y,
                           std::span<const double> z);

}  // namespace bregvar
