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

#include "bregvar/monotone.hpp"

#include <algorithm>
#include <cmath>

#include "bregvar/errors.hpp"
#include "bregvar/prox.hpp"

namespace bregvar {

std::string halt_reason_name(HaltReason r) {
  switch (r) {
    case HaltReason::Running: return "running";
    case HaltReason::Converged: return "converged";
    case HaltReason::MaxIter: return "max_iter";
    case HaltReason::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

SeparableLegendre IterateTrace::f_at(std::size_t n) const {
  return SeparableLegendre(ScalarKernel(kernel), records.at(n).w);
}

MonotoneCertificate check_quasi_monotone(const IterateTrace& trace,
                                         std::span<const double> x,
                                         double budget) {
  return check_stationary_quasi_monotone(
      trace, {Vector(x.begin(), x.end())}, budget);
}

MonotoneCertificate check_stationary_quasi_monotone(
    const IterateTrace& trace, const std::vector<Vector>& xs, double budget) {
  if (xs.empty()) throw InputError("certificate: no targets");
  MonotoneCertificate c;
  c.targets = xs;
  c.budget = budget;
  const std::size_t steps = trace.size() > 0 ? trace.size() - 1 : 0;
  c.eta.resize(steps);
  c.eps.assign(steps, 0.0);

  // D^{f_n}(x, x_n) per target, carried forward.
  std::vector<double> prev(xs.size());
  if (!trace.records.empty()) {
    const auto f0 = trace.f_at(0);
    for (std::size_t t = 0; t < xs.size(); ++t) {
      prev[t] = bregman_distance(f0, xs[t], trace.records[0].x);
    }
  }
  double worst = -1.0;
  for (std::size_t n = 0; n < steps; ++n) {
    const double eta = trace.records[n].eta;
    c.eta[n] = eta;
    const auto f_next = trace.f_at(n + 1);
    double slack = 0.0;
    for (std::size_t t = 0; t < xs.size(); ++t) {
      const double next = bregman_distance(f_next, xs[t], trace.records[n + 1].x);
      double s;
      if (next == kInf) {
        s = kInf;
      } else if (prev[t] == kInf) {
        s = 0.0;
      } else {
        s = std::max(0.0, next - (1.0 + eta) * prev[t]);
      }
      slack = std::max(slack, s);
      prev[t] = next;
    }
    c.eps[n] = slack;
    c.sum_eps += slack;
    if (slack > worst) {
      worst = slack;
      c.worst_step = n;
    }
  }
  c.verdict = c.sum_eps <= budget;
  return c;
}

Vector step_distance_decay(const IterateTrace& trace) {
  Vector out;
  for (std::size_t n = 0; n + 1 < trace.size(); ++n) {
    out.push_back(bregman_distance(trace.f_at(n), trace.records[n + 1].x,
                                   trace.records[n].x));
  }
  return out;
}

std::optional<std::size_t> first_below(std::span<const double> series,
                                       double tol) {
  for (std::size_t n = 0; n < series.size(); ++n) {
    if (series[n] <= tol) return n;
  }
  return std::nullopt;
}

double df_distance_to_set(const SeparableLegendre& f, const ConvexSet& set,
                          std::span<const double> x) {
  const Vector p = bregman_project(f, set, x);
  return bregman_distance(f, p, x);
}

ObjectiveDecay check_objective_nonincreasing(const IterateTrace& trace,
                                             double slack) {
  ObjectiveDecay r;
  for (std::size_t n = 0; n + 1 < trace.size(); ++n) {
    const auto& a = trace.records[n].objective;
    const auto& b = trace.records[n + 1].objective;
    if (!a || !b) continue;
    const double inc = *b - *a;
    r.max_increase = std::max(r.max_increase, inc);
    if (inc > slack && r.ok) {
      r.ok = false;
      r.first_increase = n;
    }
  }
  return r;
}

SmallStepProbe probe_small_steps(const IterateTrace& trace, double threshold,
                                 double max_norm) {
  SmallStepProbe p;
  const Vector d = step_distance_decay(trace);
  for (std::size_t n = 0; n < d.size(); ++n) {
    if (!(d[n] <= threshold)) continue;
    ++p.probed_steps;
    double norm = 0.0;
    const auto& a = trace.records[n].x;
    const auto& b = trace.records[n + 1].x;
    for (std::size_t i = 0; i < a.size(); ++i) {
      norm = std::max(norm, std::abs(b[i] - a[i]));
    }
    p.max_norm = std::max(p.max_norm, norm);
    if (norm > max_norm) p.ok = false;
  }
  return p;
}

}  // namespace bregvar
