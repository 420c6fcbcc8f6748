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

#include "bregvar/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bregvar/errors.hpp"
#include "bregvar/prox.hpp"

namespace bregvar {
namespace {

bool all_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void check_x0(const DistanceSchedule& s, const Vector& x0) {
  if (x0.size() != s.dim()) throw InputError("x0 has the wrong dimension");
  const SeparableLegendre f = s.f_at(0);
  if (!f.in_interior(x0)) throw InputError("x0 is not in int dom f");
}

TraceRecord start_record(const DistanceSchedule& s, const Vector& x0) {
  TraceRecord r;
  r.x = x0;
  r.w = s.weights_at(0);
  r.eta = s.eta_at(0);
  return r;
}

}  // namespace

double ppa_objective(const std::vector<ScalarPenalty>& penalties,
                     std::span<const double> x) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += penalties[i].value(x[i]);
  return sum;
}

double feasibility_residual(const SeparableLegendre& f,
                            const std::vector<ConvexSet>& sets,
                            std::span<const double> x) {
  double r = 0.0;
  for (const auto& c : sets) r = std::max(r, df_distance_to_set(f, c, x));
  return r;
}

void validate_problem(const PpaProblem& p) {
  if (p.penalties.size() != p.schedule.dim()) {
    throw InputError("need one penalty per coordinate");
  }
  for (double g : p.gammas) {
    if (!(g > 0.0) || !std::isfinite(g)) throw InputError("gammas must be > 0");
  }
  if (!(p.gamma_tail > 0.0) || !std::isfinite(p.gamma_tail)) {
    throw InputError("gamma tail must be > 0");
  }
  check_x0(p.schedule, p.x0);
  for (const auto& c : p.certified) {
    if (c.size() != p.schedule.dim()) {
      throw InputError("certified solution has the wrong dimension");
    }
  }
}

void validate_problem(const FeasibilityProblem& p) {
  if (p.sets.empty()) throw InputError("no sets");
  for (const auto& c : p.sets) validate_set(c, p.schedule.dim());
  if (p.control.sets() != p.sets.size()) {
    throw InputError("control map does not match the number of sets");
  }
  std::size_t longest = 1;
  for (std::size_t j = 0; j < p.sets.size(); ++j) {
    longest = std::max(longest, p.control.window(j));
  }
  if (const WindowReport w = check_control_windows(p.control, 4 * longest);
      !w.ok) {
    throw InputError("control map skips set " + std::to_string(*w.j + 1) +
                     " in the window starting at n=" + std::to_string(*w.n));
  }
  check_x0(p.schedule, p.x0);
  for (const auto& c : p.certified) {
    if (c.size() != p.schedule.dim()) {
      throw InputError("certified point has the wrong dimension");
    }
  }
}

StopDecision stop_rule(const IterateTrace& trace, const StopConfig& stop) {
  if (trace.records.empty()) return {};
  const TraceRecord& last = trace.records.back();
  const std::size_t n = trace.size() - 1;
  bool finite = all_finite(last.x);
  if (last.step_distance && !std::isfinite(*last.step_distance)) finite = false;
  if (last.residual && !std::isfinite(*last.residual)) finite = false;
  if (last.objective && std::isnan(*last.objective)) finite = false;
  if (!finite) return {true, HaltReason::NumericalFailure};

  if (last.residual) {
    if (*last.residual <= stop.residual_tol) {
      return {true, HaltReason::Converged};
    }
  } else if (last.step_distance && n >= 1) {
    const SeparableLegendre f = trace.f_at(n - 1);
    const double scale = 1.0 + std::abs(f.value(trace.records[n - 1].x));
    if (*last.step_distance <= stop.step_distance_tol * scale) {
      return {true, HaltReason::Converged};
    }
  }
  if (n >= stop.max_iter) return {true, HaltReason::MaxIter};
  return {};
}

IterateTrace solve_ppa(const PpaProblem& p, ProxRoute route) {
  validate_problem(p);
  IterateTrace trace;
  trace.kernel = p.schedule.kernel();
  trace.meta.solver = "ppa";
  trace.meta.problem_id = p.id;

  TraceRecord r0 = start_record(p.schedule, p.x0);
  r0.objective = ppa_objective(p.penalties, p.x0);
  trace.records.push_back(std::move(r0));

  for (std::size_t n = 0;; ++n) {
    const SeparableLegendre f = p.schedule.f_at(n);
    const double gamma = p.gamma_at(n);
    const Vector& x = trace.records.back().x;
    Vector next;
    try {
      next = prox_separable(f, p.penalties, gamma, x, route);
    } catch (const NumericalFailure& e) {
      throw NumericalFailure("prox failed at iteration " + std::to_string(n) +
                             ": " + e.what());
    }
    TraceRecord r;
    r.step_distance = all_finite(next) ? bregman_distance(f, next, x) : kInf;
    r.x = std::move(next);
    r.w = p.schedule.weights_at(n + 1);
    r.eta = p.schedule.eta_at(n + 1);
    r.objective = ppa_objective(p.penalties, r.x);
    r.gamma = gamma;
    trace.records.push_back(std::move(r));

    const StopDecision d = stop_rule(trace, p.stop);
    if (d.halt) {
      trace.meta.halt = d.reason;
      break;
    }
  }
  return trace;
}

IterateTrace solve_feasibility(const FeasibilityProblem& p) {
  validate_problem(p);
  IterateTrace trace;
  trace.kernel = p.schedule.kernel();
  trace.meta.solver = "feasibility";
  trace.meta.problem_id = p.id;

  TraceRecord r0 = start_record(p.schedule, p.x0);
  r0.residual = feasibility_residual(p.schedule.f_at(0), p.sets, p.x0);
  trace.records.push_back(std::move(r0));
  if (const StopDecision d = stop_rule(trace, p.stop); d.halt) {
    trace.meta.halt = d.reason;
    return trace;
  }

  for (std::size_t n = 0;; ++n) {
    const SeparableLegendre f = p.schedule.f_at(n);
    const std::size_t i = p.control.index(n);
    const Vector& x = trace.records.back().x;
    Vector next = bregman_project(f, p.sets[i], x);

    TraceRecord r;
    r.step_distance = bregman_distance(f, next, x);
    r.x = std::move(next);
    r.w = p.schedule.weights_at(n + 1);
    r.eta = p.schedule.eta_at(n + 1);
    r.set_index = i;
    r.residual = feasibility_residual(p.schedule.f_at(n + 1), p.sets, r.x);
    trace.records.push_back(std::move(r));

    const StopDecision d = stop_rule(trace, p.stop);
    if (d.halt) {
      trace.meta.halt = d.reason;
      break;
    }
  }
  return trace;
}

}  // namespace bregvar
