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

// Variable Bregman proximal point iterations and block/cyclic Bregman
// projections for convex feasibility.

#include <cstddef>
#include <string>
#include <vector>

#include "bregvar/monotone.hpp"
#include "bregvar/penalties.hpp"
#include "bregvar/prox.hpp"
#include "bregvar/schedules.hpp"
#include "bregvar/sets.hpp"

namespace bregvar {

struct StopConfig {
  // PPA: halt when D^{f_n}(x_{n+1}, x_n) <= tol * (1 + |f_n(x_n)|).
  double step_distance_tol = 1e-12;
  // Feasibility: halt when max_i D^{f_n}(P_i x, x) <= tol.
  double residual_tol = 1e-12;
  std::size_t max_iter = 10000;
};

struct PpaProblem {
  std::string id;
  DistanceSchedule schedule;
  std::vector<ScalarPenalty> penalties;  // one per coordinate
  Vector gammas;            // gamma_0, gamma_1, ...
  double gamma_tail = 1.0;  // used once the list runs out
  Vector x0;
  StopConfig stop;
  std::vector<Vector> certified;  // known minimizers, may be empty

  double gamma_at(std::size_t n) const {
    return n < gammas.size() ? gammas[n] : gamma_tail;
  }
};

struct FeasibilityProblem {
  std::string id;
  DistanceSchedule schedule;
  std::vector<ConvexSet> sets;
  ControlMap control;
  Vector x0;
  StopConfig stop;
  std::vector<Vector> certified;  // points of the intersection
};

// Throws InputError on broken invariants (dimensions, gammas, x0 outside
// int dom f, control map over the wrong number of sets).
void validate_problem(const PpaProblem& p);
void validate_problem(const FeasibilityProblem& p);

struct StopDecision {
  bool halt = false;
  HaltReason reason = HaltReason::Running;
};

// Inspects the last record: non-finite values, then the residual (when
// recorded) or the scaled step distance, then the iteration cap.
StopDecision stop_rule(const IterateTrace& trace, const StopConfig& stop);

// x_{n+1} = prox^{f_n}_{gamma_n phi} x_n. A prox failure at step n is
// rethrown as NumericalFailure naming n.
IterateTrace solve_ppa(const PpaProblem& p, ProxRoute route = ProxRoute::Auto);

// x_{n+1} = P^{f_n}_{C_{i(n)}} x_n.
IterateTrace solve_feasibility(const FeasibilityProblem& p);

// max_i D^f(P^f_{C_i} x, x).
double feasibility_residual(const SeparableLegendre& f,
                            const std::vector<ConvexSet>& sets,
                            std::span<const double> x);

// Separable objective phi(x) = sum_i phi_i(x_i).
double ppa_objective(const std::vector<ScalarPenalty>& penalties,
                     std::span<const double> x);

}  // namespace bregvar
