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

// One-dimensional convex penalties phi used by the D^f-prox catalog.

#include <string>
#include <string_view>

namespace bregvar {

enum class PenaltyKind {
  Zero,
  LinearEntropy,      // xi ln xi - omega xi on [0, inf)
  Power,              // |xi|^p / p on R, or xi^p / p on [0, inf) when nonneg
  NegativePower,      // xi^-p / p on (0, inf), p >= 1
  NegativeRoot,       // -xi^p / p on [0, inf), p in (0, 1)
  OneMinusEntropy,    // (1 - xi) ln(1 - xi) + xi on (-inf, 1]
  ScaledBurg,         // -gamma ln xi on (0, inf)
  BurgLinearInverse,  // -gamma ln xi + omega xi + alpha / xi on (0, inf)
  BurgPower,          // -gamma ln xi + alpha xi^p on (0, inf)
  InversePower,       // alpha xi^-p on (0, inf)
  HellingerSelf,      // -sqrt(1 - xi^2) on [-1, 1]
  KLToTarget,         // xi ln(xi / c) - xi + c on [0, inf)
};

// Config/CLI names, e.g. "scaled_burg", "kl_to_target".
std::string_view penalty_name(PenaltyKind kind);

struct PenaltyDomain {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;
};

struct PenaltyParams {
  double gamma = 0.0;
  double omega = 0.0;
  double alpha = 0.0;
  double p = 1.0;
  double c = 1.0;
  bool nonneg = false;  // Power only
};

class ScalarPenalty {
 public:
  ScalarPenalty() = default;
  // Validates parameters; throws InputError.
  ScalarPenalty(PenaltyKind kind, PenaltyParams params);

  static ScalarPenalty zero() { return {}; }
  static ScalarPenalty linear_entropy(double omega);
  static ScalarPenalty power(double p, bool nonneg = false);
  static ScalarPenalty negative_power(double p);
  static ScalarPenalty negative_root(double p);
  static ScalarPenalty one_minus_entropy();
  static ScalarPenalty scaled_burg(double gamma);
  static ScalarPenalty burg_linear_inverse(double gamma, double omega,
                                           double alpha);
  static ScalarPenalty burg_power(double gamma, double alpha, double p);
  static ScalarPenalty inverse_power(double alpha, double p);
  static ScalarPenalty hellinger_self();
  static ScalarPenalty kl_to_target(double c);

  PenaltyKind kind() const { return kind_; }
  const PenaltyParams& params() const { return params_; }
  std::string_view name() const { return penalty_name(kind_); }

  PenaltyDomain domain() const;
  bool in_domain(double xi) const;

  double value(double xi) const;  // +inf outside the domain
  // phi' and phi'' on the open interior of the domain. For Power with p = 1
  // the derivative at 0 is taken as 0.
  double derivative(double xi) const;
  double second_derivative(double xi) const;

  // "name" or "name:key=value,key=value".
  std::string to_string() const;

 private:
  PenaltyKind kind_ = PenaltyKind::Zero;
  PenaltyParams params_{};
};

// Parses "scaled_burg:gamma=0.5" style strings; throws InputError.
ScalarPenalty parse_penalty(std::string_view text);

}  // namespace bregvar
