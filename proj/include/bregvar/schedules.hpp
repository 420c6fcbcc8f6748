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

// Variable distance sequences (f_n) realized as positive diagonal weights on
// a fixed kernel, and control maps selecting the set processed at step n.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bregvar/kernels.hpp"

namespace bregvar {

enum class WeightKind { Constant, GeometricDecay, Explicit };

// w_n by kind:
//   Constant:        values (one per coordinate, or one broadcast value)
//   GeometricDecay:  base + amplitude * ratio^n, same for every coordinate
//   Explicit:        table[n] (one vector per iteration)
struct WeightSpec {
  WeightKind kind = WeightKind::Constant;
  Vector values{1.0};
  double base = 1.0;
  double amplitude = 0.0;
  double ratio = 0.5;
  std::vector<Vector> table;
};

class DistanceSchedule {
 public:
  DistanceSchedule(KernelKind kernel, std::size_t dim, WeightSpec weights,
                   Vector eta, double alpha, std::optional<double> beta,
                   std::size_t horizon);

  // w = 1, eta = 0, alpha = 1: the fixed distance D^f.
  static DistanceSchedule constant(KernelKind kernel, std::size_t dim,
                                   std::size_t horizon);

  KernelKind kernel() const { return kernel_; }
  std::size_t dim() const { return dim_; }
  std::size_t horizon() const { return horizon_; }
  double alpha() const { return alpha_; }
  std::optional<double> beta() const { return beta_; }
  const Vector& eta_list() const { return eta_; }
  const WeightSpec& weight_spec() const { return weights_; }

  // Throws InputError("schedule horizon exceeded") when n >= horizon.
  Vector weights_at(std::size_t n) const;
  // eta_n; zero past the explicit list.
  double eta_at(std::size_t n) const;
  double eta_sum() const;
  SeparableLegendre f_at(std::size_t n) const;

 private:
  KernelKind kernel_;
  std::size_t dim_;
  WeightSpec weights_;
  Vector eta_;
  double alpha_;
  std::optional<double> beta_;
  std::size_t horizon_;
};

struct ScheduleReport {
  bool ok = true;
  std::optional<std::size_t> n;  // first violating iteration
  std::optional<std::size_t> i;  // and coordinate
  std::string message;
};

// Checks alpha <= w_{n,i} (<= beta), w_{n+1,i} <= (1 + eta_n) w_{n,i},
// eta_n >= 0 for every n < horizon.
ScheduleReport validate_schedule(const DistanceSchedule& s);

enum class ControlKind { Cyclic, QuasiCyclic, Explicit };

// Set indices are 0-based here; the problem JSON uses 1-based indices.
class ControlMap {
 public:
  static ControlMap cyclic(std::size_t m);
  // `pattern` repeats periodically; `bounds[j]` is the window length M_j.
  static ControlMap quasi_cyclic(std::vector<std::size_t> pattern,
                                 std::vector<std::size_t> bounds,
                                 std::size_t m);
  static ControlMap explicit_list(std::vector<std::size_t> sequence,
                                  std::size_t m);

  ControlKind kind() const { return kind_; }
  std::size_t sets() const { return m_; }
  // M_j: m for cyclic maps; for explicit lists, the declared bound or the
  // list length.
  std::size_t window(std::size_t j) const;

  // Throws InputError when an explicit list is exhausted.
  std::size_t index(std::size_t n) const;

 private:
  ControlKind kind_ = ControlKind::Cyclic;
  std::size_t m_ = 1;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> bounds_;
};

std::size_t control_index(const ControlMap& c, std::size_t n);

struct WindowReport {
  bool ok = true;
  std::optional<std::size_t> j;
  std::optional<std::size_t> n;
};

// For every j and every n <= horizon - M_j: j in {i(n), ..., i(n + M_j - 1)}.
WindowReport check_control_windows(const ControlMap& c, std::size_t horizon);

}  // namespace bregvar
