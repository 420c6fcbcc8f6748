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

// Iterate traces and the quasi-Bregman monotonicity diagnostics run on them.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bregvar/kernels.hpp"
#include "bregvar/sets.hpp"

namespace bregvar {

// Record n describes x_n and the step that produced it.
struct TraceRecord {
  Vector x;    // x_n
  Vector w;    // weights of f_n
  double eta = 0.0;  // eta_n, used for the step n -> n+1
  std::optional<double> step_distance;  // D^{f_{n-1}}(x_n, x_{n-1}), n >= 1
  std::optional<double> objective;      // phi(x_n) for proximal runs
  std::optional<double> gamma;          // gamma_{n-1}
  std::optional<std::size_t> set_index; // i(n-1) for projection runs
  std::optional<double> residual;       // max_i D^{f_n}(P_i x_n, x_n)
};

enum class HaltReason { Running, Converged, MaxIter, NumericalFailure };

std::string halt_reason_name(HaltReason r);

struct TraceMeta {
  std::string solver;
  std::string problem_id;
  HaltReason halt = HaltReason::Running;
  std::string message;
};

struct IterateTrace {
  KernelKind kernel = KernelKind::Energy;
  std::vector<TraceRecord> records;
  TraceMeta meta;

  std::size_t size() const { return records.size(); }
  SeparableLegendre f_at(std::size_t n) const;
};

struct MonotoneCertificate {
  std::vector<Vector> targets;
  Vector eta;      // eta_n per step
  Vector eps;      // observed slack per step
  double sum_eps = 0.0;
  double budget = 0.0;
  bool verdict = false;
  std::optional<std::size_t> worst_step;
};

// eps_n = max(0, D^{f_{n+1}}(x, x_{n+1}) - (1 + eta_n) D^{f_n}(x, x_n));
// verdict iff sum eps_n <= budget.
MonotoneCertificate check_quasi_monotone(const IterateTrace& trace,
                                         std::span<const double> x,
                                         double budget);

// One slack sequence shared by all targets: eps_n = max over xs.
MonotoneCertificate check_stationary_quasi_monotone(
    const IterateTrace& trace, const std::vector<Vector>& xs, double budget);

// D^{f_n}(x_{n+1}, x_n), n = 0 .. N-1, recomputed from the iterates.
Vector step_distance_decay(const IterateTrace& trace);
// First n with series[n] <= tol.
std::optional<std::size_t> first_below(std::span<const double> series,
                                       double tol);

// D^f(P^f_C x, x): the D^f-distance of x to C, set in the first slot.
double df_distance_to_set(const SeparableLegendre& f, const ConvexSet& set,
                          std::span<const double> x);

struct ObjectiveDecay {
  bool ok = true;
  std::optional<std::size_t> first_increase;
  double max_increase = 0.0;
};

// phi(x_{n+1}) <= phi(x_n) + slack along the recorded objective values.
ObjectiveDecay check_objective_nonincreasing(const IterateTrace& trace,
                                             double slack = 1e-10);

struct SmallStepProbe {
  bool ok = true;
  std::size_t probed_steps = 0;
  double max_norm = 0.0;  // largest ||x_{n+1} - x_n||_inf among probed steps
};

// Empirical check that tiny Bregman steps are tiny in norm: whenever
// D^{f_n}(x_{n+1}, x_n) <= threshold, ||x_{n+1} - x_n||_inf <= max_norm.
SmallStepProbe probe_small_steps(const IterateTrace& trace, double threshold,
                                 double max_norm);

}  // namespace bregvar
