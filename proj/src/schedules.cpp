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

#include "bregvar/schedules.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "bregvar/errors.hpp"

namespace bregvar {

DistanceSchedule::DistanceSchedule(KernelKind kernel, std::size_t dim,
                                   WeightSpec weights, Vector eta,
                                   double alpha, std::optional<double> beta,
                                   std::size_t horizon)
    : kernel_(kernel),
      dim_(dim),
      weights_(std::move(weights)),
      eta_(std::move(eta)),
      alpha_(alpha),
      beta_(beta),
      horizon_(horizon) {
  if (dim_ == 0) throw InputError("schedule: dimension must be positive");
  if (!(alpha_ >= 0.0) || !std::isfinite(alpha_)) {
    throw InputError("schedule: alpha must be finite and >= 0");
  }
  if (beta_ && !(*beta_ > 0.0)) throw InputError("schedule: beta must be > 0");
  switch (weights_.kind) {
    case WeightKind::Constant:
      if (weights_.values.size() != 1 && weights_.values.size() != dim_) {
        throw InputError("schedule: constant weights must have 1 or m values");
      }
      break;
    case WeightKind::GeometricDecay:
      if (!(weights_.ratio >= 0.0)) {
        throw InputError("schedule: geometric ratio must be >= 0");
      }
      break;
    case WeightKind::Explicit:
      if (weights_.table.empty()) {
        throw InputError("schedule: explicit weight table is empty");
      }
      for (const auto& row : weights_.table) {
        if (row.size() != 1 && row.size() != dim_) {
          throw InputError("schedule: explicit weight rows need 1 or m values");
        }
      }
      horizon_ = std::min(horizon_, weights_.table.size());
      break;
  }
}

DistanceSchedule DistanceSchedule::constant(KernelKind kernel, std::size_t dim,
                                            std::size_t horizon) {
  return DistanceSchedule(kernel, dim, WeightSpec{}, {}, 1.0, std::nullopt,
                          horizon);
}

Vector DistanceSchedule::weights_at(std::size_t n) const {
  if (n >= horizon_) {
    std::ostringstream os;
    os << "schedule horizon exceeded at n=" << n << " (horizon " << horizon_
       << ")";
    throw InputError(os.str());
  }
  Vector w(dim_);
  switch (weights_.kind) {
    case WeightKind::Constant:
      for (std::size_t i = 0; i < dim_; ++i) {
        w[i] = weights_.values.size() == 1 ? weights_.values[0]
                                           : weights_.values[i];
      }
      break;
    case WeightKind::GeometricDecay: {
      const double v = weights_.base +
                       weights_.amplitude *
                           std::pow(weights_.ratio, static_cast<double>(n));
      std::fill(w.begin(), w.end(), v);
      break;
    }
    case WeightKind::Explicit: {
      const auto& row = weights_.table[n];
      for (std::size_t i = 0; i < dim_; ++i) {
        w[i] = row.size() == 1 ? row[0] : row[i];
      }
      break;
    }
  }
  return w;
}

double DistanceSchedule::eta_at(std::size_t n) const {
  return n < eta_.size() ? eta_[n] : 0.0;
}

double DistanceSchedule::eta_sum() const {
  return std::accumulate(eta_.begin(), eta_.end(), 0.0);
}

SeparableLegendre DistanceSchedule::f_at(std::size_t n) const {
  return SeparableLegendre(ScalarKernel(kernel_), weights_at(n));
}

ScheduleReport validate_schedule(const DistanceSchedule& s) {
  ScheduleReport r;
  auto fail = [&](std::size_t n, std::optional<std::size_t> i,
                  const std::string& msg) {
    r.ok = false;
    r.n = n;
    r.i = i;
    r.message = msg;
    return r;
  };
  for (std::size_t n = 0; n < s.eta_list().size(); ++n) {
    const double e = s.eta_list()[n];
    if (!(e >= 0.0) || !std::isfinite(e)) {
      return fail(n, std::nullopt, "eta_n must be finite and >= 0");
    }
  }
  if (s.horizon() == 0) return fail(0, std::nullopt, "empty horizon");
  Vector prev;
  for (std::size_t n = 0; n < s.horizon(); ++n) {
    const Vector w = s.weights_at(n);
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::ostringstream os;
      if (!(w[i] > 0.0) || !std::isfinite(w[i])) {
        os << "w[" << n << "][" << i << "]=" << w[i] << " is not positive";
        return fail(n, i, os.str());
      }
      if (w[i] < s.alpha()) {
        os << "w[" << n << "][" << i << "]=" << w[i] << " < alpha=" << s.alpha();
        return fail(n, i, os.str());
      }
      if (s.beta() && w[i] > *s.beta()) {
        os << "w[" << n << "][" << i << "]=" << w[i] << " > beta=" << *s.beta();
        return fail(n, i, os.str());
      }
      if (n > 0) {
        const double bound = (1.0 + s.eta_at(n - 1)) * prev[i];
        if (w[i] > bound) {
          os << "w[" << n << "][" << i << "]=" << w[i] << " > (1+eta_" << n - 1
             << ") w[" << n - 1 << "][" << i << "]=" << bound;
          return fail(n - 1, i, os.str());
        }
      }
    }
    prev = w;
  }
  return r;
}

ControlMap ControlMap::cyclic(std::size_t m) {
  if (m == 0) throw InputError("control map: need at least one set");
  ControlMap c;
  c.kind_ = ControlKind::Cyclic;
  c.m_ = m;
  return c;
}

ControlMap ControlMap::quasi_cyclic(std::vector<std::size_t> pattern,
                                    std::vector<std::size_t> bounds,
                                    std::size_t m) {
  if (pattern.empty()) throw InputError("control map: empty pattern");
  if (bounds.size() != m) throw InputError("control map: need one bound per set");
  for (auto j : pattern) {
    if (j >= m) throw InputError("control map: set index out of range");
  }
  ControlMap c;
  c.kind_ = ControlKind::QuasiCyclic;
  c.m_ = m;
  c.table_ = std::move(pattern);
  c.bounds_ = std::move(bounds);
  return c;
}

ControlMap ControlMap::explicit_list(std::vector<std::size_t> sequence,
                                     std::size_t m) {
  if (sequence.empty()) throw InputError("control map: empty sequence");
  for (auto j : sequence) {
    if (j >= m) throw InputError("control map: set index out of range");
  }
  ControlMap c;
  c.kind_ = ControlKind::Explicit;
  c.m_ = m;
  c.table_ = std::move(sequence);
  return c;
}

std::size_t ControlMap::window(std::size_t j) const {
  switch (kind_) {
    case ControlKind::Cyclic: return m_;
    case ControlKind::QuasiCyclic: return bounds_.at(j);
    case ControlKind::Explicit: return table_.size();
  }
  return m_;
}

std::size_t ControlMap::index(std::size_t n) const {
  switch (kind_) {
    case ControlKind::Cyclic: return n % m_;
    case ControlKind::QuasiCyclic: return table_[n % table_.size()];
    case ControlKind::Explicit:
      if (n >= table_.size()) {
        throw InputError("control map exhausted at n=" + std::to_string(n));
      }
      return table_[n];
  }
  return 0;
}

std::size_t control_index(const ControlMap& c, std::size_t n) {
  return c.index(n);
}

WindowReport check_control_windows(const ControlMap& c, std::size_t horizon) {
  WindowReport r;
  if (c.kind() == ControlKind::Explicit) {
    horizon = std::min(horizon, c.window(0));
  }
  for (std::size_t j = 0; j < c.sets(); ++j) {
    const std::size_t mj = c.window(j);
    if (mj == 0 || mj > horizon) continue;
    for (std::size_t n = 0; n + mj <= horizon; ++n) {
      bool seen = false;
      for (std::size_t k = n; k < n + mj && !seen; ++k) seen = c.index(k) == j;
      if (!seen) {
        r.ok = false;
        r.j = j;
        r.n = n;
        return r;
      }
    }
  }
  return r;
}

}  // namespace bregvar
