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

// Legendre scalar kernels, separable Legendre functions on R^m, and the
// Bregman distances they induce.

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bregvar {

using Vector = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Interior membership uses this absolute margin from finite open endpoints.
inline constexpr double kBoundaryMargin = 1e-300;

enum class KernelKind { Energy, BoltzmannShannon, FermiDirac, Burg, Hellinger };

// Config/CLI names: "energy", "boltzmann_shannon", "fermi_dirac", "burg",
// "hellinger".
std::string_view kernel_name(KernelKind kind);
KernelKind parse_kernel(std::string_view name);  // throws InputError

struct Interval {
  double lo;
  double hi;
};

// One-dimensional Legendre function theta. All members are total: points
// outside the domain yield +inf (value) or a DomainError (derivatives).
class ScalarKernel {
 public:
  constexpr explicit ScalarKernel(KernelKind kind) : kind_(kind) {}

  KernelKind kind() const { return kind_; }
  std::string_view name() const { return kernel_name(kind_); }

  // Open domain (lo, hi); the closure may carry finite values at endpoints.
  Interval domain() const;
  // Open range of theta' over the open domain.
  Interval derivative_range() const;

  bool in_interior(double xi) const;
  // Interior or an endpoint where theta has a finite closure value.
  bool in_closure(double xi) const;

  double value(double xi) const;
  double derivative(double xi) const;         // DomainError outside interior
  double second_derivative(double xi) const;  // DomainError outside interior
  // Solves theta'(xi) = u. DomainError if u is outside derivative_range().
  double inverse_derivative(double u) const;

  // D^theta(x, y) evaluated in a cancellation-free form. +inf when y is not
  // interior or x is outside the closure.
  double divergence(double x, double y) const;

 private:
  KernelKind kind_;
};

// Inverts theta' by safeguarded bisection/Newton to 1e-14 relative. Used for
// kernels without a closed-form conjugate gradient and as a test reference.
double inverse_derivative_numeric(const ScalarKernel& kernel, double u);

// f(x) = sum_i w_i theta(x_i) with a shared kernel and positive weights.
class SeparableLegendre {
 public:
  SeparableLegendre(ScalarKernel kernel, Vector weights);
  // Unit weights in dimension m.
  SeparableLegendre(ScalarKernel kernel, std::size_t m);

  const ScalarKernel& kernel() const { return kernel_; }
  const Vector& weights() const { return weights_; }
  std::size_t dim() const { return weights_.size(); }

  bool in_interior(std::span<const double> x) const;
  bool in_closure(std::span<const double> x) const;

  double value(std::span<const double> x) const;
  Vector gradient(std::span<const double> x) const;
  Vector gradient_conjugate(std::span<const double> u) const;

 private:
  void check_dim(std::span<const double> x) const;

  ScalarKernel kernel_;
  Vector weights_;
};

double kernel_value(const ScalarKernel& k, double xi);

// D^f(x, y) = f(x) - f(y) - <x - y, grad f(y)>; +inf unless y is interior.
double bregman_distance(const SeparableLegendre& f, std::span<const double> x,
                        std::span<const double> y);

Vector gradient(const SeparableLegendre& f, std::span<const double> x);
Vector gradient_conjugate(const SeparableLegendre& f, std::span<const double> u);

}  // namespace bregvar
