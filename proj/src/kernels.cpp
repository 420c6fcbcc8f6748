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

#include "bregvar/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bregvar/errors.hpp"
#include "bregvar/roots.hpp"

namespace bregvar {
namespace {

// x ln(x/y) - x + y for x >= 0, y > 0.
double kl_term(double x, double y) {
  if (x == 0.0) return y;
  const double t = (x - y) / y;
  if (std::abs(t) < 1e-3) {
    // (1+t) ln(1+t) - t = sum_{k>=2} (-1)^k t^k / (k (k-1))
    double term = t * t;
    double sum = 0.0;
    for (int k = 2; k <= 9; ++k) {
      sum += term / (k * (k - 1.0)) * ((k % 2 == 0) ? 1.0 : -1.0);
      term *= t;
    }
    return y * sum;
  }
  if (std::abs(t) < 0.5) return y * ((1.0 + t) * std::log1p(t) - t);
  return x * std::log(x / y) - x + y;
}

// t - ln(1 + t) for t > -1.
double burg_term(double t) {
  if (std::abs(t) < 1e-3) {
    double term = t * t;
    double sum = 0.0;
    for (int k = 2; k <= 9; ++k) {
      sum += term / k * ((k % 2 == 0) ? 1.0 : -1.0);
      term *= t;
    }
    return sum;
  }
  return t - std::log1p(t);
}

double one_minus_sq(double xi) { return (1.0 - xi) * (1.0 + xi); }

[[noreturn]] void outside(const ScalarKernel& k, double xi, const char* what) {
  std::ostringstream os;
  os << what << ": " << xi << " is outside the interior of the "
     << k.name() << " kernel domain";
  throw DomainError(os.str());
}

}  // namespace

std::string_view kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::Energy: return "energy";
    case KernelKind::BoltzmannShannon: return "boltzmann_shannon";
    case KernelKind::FermiDirac: return "fermi_dirac";
    case KernelKind::Burg: return "burg";
    case KernelKind::Hellinger: return "hellinger";
  }
  return "?";
}

KernelKind parse_kernel(std::string_view name) {
  for (auto k : {KernelKind::Energy, KernelKind::BoltzmannShannon,
                 KernelKind::FermiDirac, KernelKind::Burg,
                 KernelKind::Hellinger}) {
    if (kernel_name(k) == name) return k;
  }
  throw InputError("unknown kernel '" + std::string(name) + "'");
}

Interval ScalarKernel::domain() const {
  switch (kind_) {
    case KernelKind::Energy: return {-kInf, kInf};
    case KernelKind::BoltzmannShannon: return {0.0, kInf};
    case KernelKind::FermiDirac: return {0.0, 1.0};
    case KernelKind::Burg: return {0.0, kInf};
    case KernelKind::Hellinger: return {-1.0, 1.0};
  }
  return {0.0, 0.0};
}

Interval ScalarKernel::derivative_range() const {
  if (kind_ == KernelKind::Burg) return {-kInf, 0.0};
  return {-kInf, kInf};
}

bool ScalarKernel::in_interior(double xi) const {
  if (!std::isfinite(xi)) return false;
  const auto [lo, hi] = domain();
  return xi - lo > kBoundaryMargin && hi - xi > kBoundaryMargin;
}

bool ScalarKernel::in_closure(double xi) const {
  return std::isfinite(value(xi));
}

double ScalarKernel::value(double xi) const {
  if (std::isnan(xi)) return kInf;
  switch (kind_) {
    case KernelKind::Energy:
      return std::isfinite(xi) ? 0.5 * xi * xi : kInf;
    case KernelKind::BoltzmannShannon:
      if (xi == 0.0) return 0.0;
      if (xi > 0.0 && std::isfinite(xi)) return xi * std::log(xi) - xi;
      return kInf;
    case KernelKind::FermiDirac:
      if (xi == 0.0 || xi == 1.0) return 0.0;
      if (xi > 0.0 && xi < 1.0)
        return xi * std::log(xi) + (1.0 - xi) * std::log1p(-xi);
      return kInf;
    case KernelKind::Burg:
      if (xi > 0.0 && std::isfinite(xi)) return -std::log(xi);
      return kInf;
    case KernelKind::Hellinger:
      if (xi >= -1.0 && xi <= 1.0) return -std::sqrt(one_minus_sq(xi));
      return kInf;
  }
  return kInf;
}

double ScalarKernel::derivative(double xi) const {
  if (!in_interior(xi)) outside(*this, xi, "derivative");
  switch (kind_) {
    case KernelKind::Energy: return xi;
    case KernelKind::BoltzmannShannon: return std::log(xi);
    case KernelKind::FermiDirac: return std::log(xi) - std::log1p(-xi);
    case KernelKind::Burg: return -1.0 / xi;
    case KernelKind::Hellinger: return xi / std::sqrt(one_minus_sq(xi));
  }
  return 0.0;
}

double ScalarKernel::second_derivative(double xi) const {
  if (!in_interior(xi)) outside(*this, xi, "second_derivative");
  switch (kind_) {
    case KernelKind::Energy: return 1.0;
    case KernelKind::BoltzmannShannon: return 1.0 / xi;
    case KernelKind::FermiDirac: return 1.0 / (xi * (1.0 - xi));
    case KernelKind::Burg: return 1.0 / (xi * xi);
    case KernelKind::Hellinger: {
      const double s = one_minus_sq(xi);
      return 1.0 / (s * std::sqrt(s));
    }
  }
  return 0.0;
}

double ScalarKernel::inverse_derivative(double u) const {
  const auto [lo, hi] = derivative_range();
  if (!(u > lo && u < hi)) {
    std::ostringstream os;
    os << "inverse_derivative: " << u << " is outside the range of the "
       << name() << " kernel derivative";
    throw DomainError(os.str());
  }
  switch (kind_) {
    case KernelKind::Energy: return u;
    case KernelKind::BoltzmannShannon: return std::exp(u);
    case KernelKind::FermiDirac:
      return u >= 0.0 ? 1.0 / (1.0 + std::exp(-u))
                      : std::exp(u) / (1.0 + std::exp(u));
    case KernelKind::Burg: return -1.0 / u;
    case KernelKind::Hellinger: return u / std::sqrt(1.0 + u * u);
  }
  return 0.0;
}

double ScalarKernel::divergence(double x, double y) const {
  if (!in_interior(y) || !in_closure(x)) return kInf;
  switch (kind_) {
    case KernelKind::Energy: return 0.5 * (x - y) * (x - y);
    case KernelKind::BoltzmannShannon: return kl_term(x, y);
    case KernelKind::FermiDirac:
      return kl_term(x, y) + kl_term(1.0 - x, 1.0 - y);
    case KernelKind::Burg: return burg_term((x - y) / y);
    case KernelKind::Hellinger: {
      const double sx = std::sqrt(one_minus_sq(x));
      const double sy = std::sqrt(one_minus_sq(y));
      const double ds = (y - x) * (y + x) / (sx + sy);
      return 0.5 * ((x - y) * (x - y) + ds * ds) / sy;
    }
  }
  return kInf;
}

double inverse_derivative_numeric(const ScalarKernel& kernel, double u) {
  const auto [rlo, rhi] = kernel.derivative_range();
  if (!(u > rlo && u < rhi)) {
    throw DomainError("inverse_derivative_numeric: argument outside range");
  }
  const auto [lo, hi] = kernel.domain();
  double x0;
  if (std::isfinite(lo) && std::isfinite(hi)) {
    x0 = 0.5 * (lo + hi);
  } else if (std::isfinite(lo)) {
    x0 = lo + 1.0;
  } else if (std::isfinite(hi)) {
    x0 = hi - 1.0;
  } else {
    x0 = 0.0;
  }
  auto g = [&](double x) { return kernel.derivative(x) - u; };
  auto br = roots::bracket_increasing(g, x0, lo, hi);
  if (!br) throw NumericalFailure("inverse_derivative_numeric: no bracket");
  auto res = roots::safeguarded_newton(
      [&](double x) {
        return std::pair{kernel.derivative(x) - u, kernel.second_derivative(x)};
      },
      *br, 0.0, 1e-14);
  if (!res.converged) {
    throw NumericalFailure("inverse_derivative_numeric: no convergence");
  }
  return res.x;
}

SeparableLegendre::SeparableLegendre(ScalarKernel kernel, Vector weights)
    : kernel_(kernel), weights_(std::move(weights)) {
  if (weights_.empty()) throw InputError("SeparableLegendre: empty weights");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InputError("SeparableLegendre: weights must be finite and > 0");
    }
  }
}

SeparableLegendre::SeparableLegendre(ScalarKernel kernel, std::size_t m)
    : SeparableLegendre(kernel, Vector(m, 1.0)) {}

void SeparableLegendre::check_dim(std::span<const double> x) const {
  if (x.size() != dim()) {
    std::ostringstream os;
    os << "dimension mismatch: expected " << dim() << ", got " << x.size();
    throw InputError(os.str());
  }
}

bool SeparableLegendre::in_interior(std::span<const double> x) const {
  check_dim(x);
  return std::all_of(x.begin(), x.end(),
                     [&](double xi) { return kernel_.in_interior(xi); });
}

bool SeparableLegendre::in_closure(std::span<const double> x) const {
  check_dim(x);
  return std::all_of(x.begin(), x.end(),
                     [&](double xi) { return kernel_.in_closure(xi); });
}

double SeparableLegendre::value(std::span<const double> x) const {
  check_dim(x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = kernel_.value(x[i]);
    if (v == kInf) return kInf;
    s += weights_[i] * v;
  }
  return s;
}

Vector SeparableLegendre::gradient(std::span<const double> x) const {
  check_dim(x);
  Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!kernel_.in_interior(x[i])) {
      std::ostringstream os;
      os << "gradient: coordinate " << i << " (" << x[i]
         << ") is outside the interior of the " << kernel_.name()
         << " domain";
      throw DomainError(os.str(), static_cast<std::ptrdiff_t>(i));
    }
    g[i] = weights_[i] * kernel_.derivative(x[i]);
  }
  return g;
}

Vector SeparableLegendre::gradient_conjugate(std::span<const double> u) const {
  check_dim(u);
  const auto [lo, hi] = kernel_.derivative_range();
  Vector x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = u[i] / weights_[i];
    if (!(v > lo && v < hi)) {
      std::ostringstream os;
      os << "gradient_conjugate: coordinate " << i << " (" << u[i]
         << ") is outside the range of the weighted " << kernel_.name()
         << " gradient";
      throw DomainError(os.str(), static_cast<std::ptrdiff_t>(i));
    }
    x[i] = kernel_.inverse_derivative(v);
  }
  return x;
}

double kernel_value(const ScalarKernel& k, double xi) { return k.value(xi); }

double bregman_distance(const SeparableLegendre& f, std::span<const double> x,
                        std::span<const double> y) {
  if (x.size() != f.dim() || y.size() != f.dim()) {
    throw InputError("bregman_distance: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = f.kernel().divergence(x[i], y[i]);
    if (d == kInf) return kInf;
    s += f.weights()[i] * d;
  }
  return std::max(s, 0.0);
}

Vector gradient(const SeparableLegendre& f, std::span<const double> x) {
  return f.gradient(x);
}

Vector gradient_conjugate(const SeparableLegendre& f,
                          std::span<const double> u) {
  return f.gradient_conjugate(u);
}

}  // namespace bregvar
