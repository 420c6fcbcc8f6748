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

#include "bregvar/prox.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <variant>

#include "bregvar/catalog.hpp"
#include "bregvar/errors.hpp"
#include "bregvar/roots.hpp"

namespace bregvar {
namespace {

void check_prox_args(const ScalarKernel& kernel, double gamma, double xi,
                     const char* who) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError(std::string(who) + ": gamma must be finite and > 0");
  }
  if (!kernel.in_interior(xi)) {
    std::ostringstream os;
    os << who << ": xi=" << xi << " is not in the interior of the "
       << kernel.name() << " domain";
    throw DomainError(os.str());
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

Vector project_hyperplane(const SeparableLegendre& f, const Vector& a,
                          double b, std::span<const double> y) {
  const auto& k = f.kernel();
  const auto& w = f.weights();
  const std::size_t m = f.dim();
  const auto [ulo, uhi] = k.derivative_range();

  Vector base(m);
  for (std::size_t i = 0; i < m; ++i) base[i] = k.derivative(y[i]);

  // Admissible multipliers: theta'(y_i) + lambda a_i / w_i stays in the
  // open range of theta'.
  double lam_lo = -kInf;
  double lam_hi = kInf;
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i] == 0.0) continue;
    const double s = a[i] / w[i];
    if (std::isfinite(uhi)) {
      const double e = (uhi - base[i]) / s;
      if (s > 0) lam_hi = std::min(lam_hi, e); else lam_lo = std::max(lam_lo, e);
    }
    if (std::isfinite(ulo)) {
      const double e = (ulo - base[i]) / s;
      if (s > 0) lam_lo = std::max(lam_lo, e); else lam_hi = std::min(lam_hi, e);
    }
  }

  auto point = [&](double lam, Vector& p) -> bool {
    for (std::size_t i = 0; i < m; ++i) {
      const double u = base[i] + lam * a[i] / w[i];
      if (!(u > ulo && u < uhi)) return false;
      p[i] = a[i] == 0.0 ? y[i] : k.inverse_derivative(u);
    }
    return true;
  };
  Vector p(m);
  auto h = [&](double lam) {
    if (!point(lam, p)) return std::nan("");
    return dot(a, p) - b;
  };
  auto h_and_slope = [&](double lam) {
    if (!point(lam, p)) return std::pair{std::nan(""), 1.0};
    double slope = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (a[i] != 0.0) slope += a[i] * a[i] / (w[i] * k.second_derivative(p[i]));
    }
    return std::pair{dot(a, p) - b, slope};
  };

  auto br = roots::bracket_increasing(h, 0.0, lam_lo, lam_hi);
  if (!br) {
    std::ostringstream os;
    os << "bregman_project: hyperplane <a,x> = " << b
       << " does not meet the interior of the " << k.name() << " domain";
    throw InfeasibleError(os.str());
  }
  double scale = 1.0 + std::abs(b);
  for (std::size_t i = 0; i < m; ++i) scale += std::abs(a[i] * y[i]);
  auto r = roots::safeguarded_newton(h_and_slope, *br, 1e-15 * scale);
  Vector out(m);
  if (!point(r.x, out)) throw NumericalFailure("bregman_project: lost domain");
  const double resid = std::abs(dot(a, out) - b);
  if (resid > 1e-10 * scale) {
    std::ostringstream os;
    os << "bregman_project: hyperplane residual " << resid
       << " above tolerance";
    throw NumericalFailure(os.str());
  }
  return out;
}

}  // namespace

double optimality_residual(const ScalarKernel& kernel,
                           const ScalarPenalty& penalty, double gamma,
                           double xi, double eta) {
  return gamma * penalty.derivative(eta) + kernel.derivative(eta) -
         kernel.derivative(xi);
}

double prox_scalar_closed(const ScalarKernel& kernel,
                          const ScalarPenalty& penalty, double gamma,
                          double xi) {
  check_prox_args(kernel, gamma, xi, "prox_scalar_closed");
  const auto* entry = find_catalog_entry(kernel, penalty, gamma);
  if (entry == nullptr) {
    std::ostringstream os;
    os << "no closed form for kernel " << kernel.name() << " with penalty "
       << penalty.to_string() << " at gamma=" << gamma
       << "; use prox_scalar_numeric";
    throw NoClosedForm(os.str());
  }
  return entry->closed_form(penalty, gamma, xi);
}

double prox_scalar_numeric(const ScalarKernel& kernel,
                           const ScalarPenalty& penalty, double gamma,
                           double xi, double tol) {
  check_prox_args(kernel, gamma, xi, "prox_scalar_numeric");
  if (penalty.kind() == PenaltyKind::Zero) return xi;

  const auto [klo, khi] = kernel.domain();
  const auto pd = penalty.domain();
  const double lo = std::max(klo, pd.lo);
  const double hi = std::min(khi, pd.hi);
  if (!(lo < hi)) {
    throw NumericalFailure("prox_scalar_numeric: dom phi misses int dom theta");
  }
  const double target = kernel.derivative(xi);
  auto g = [&](double x) {
    return gamma * penalty.derivative(x) + kernel.derivative(x) - target;
  };
  auto g_and_slope = [&](double x) {
    return std::pair{g(x),
                     gamma * penalty.second_derivative(x) +
                         kernel.second_derivative(x)};
  };

  double x0 = xi;
  if (!(x0 > lo && x0 < hi)) {
    if (std::isfinite(lo) && std::isfinite(hi)) {
      x0 = 0.5 * (lo + hi);
    } else if (x0 >= hi) {
      x0 = hi - (1.0 + std::abs(hi));
      if (std::isfinite(lo) && x0 <= lo) x0 = 0.5 * (lo + hi);
    } else {
      x0 = lo + (1.0 + std::abs(lo));
    }
  }

  auto br = roots::bracket_increasing(g, x0, lo, hi);
  if (!br) {
    // A closed endpoint of dom phi inside int dom theta can carry the
    // minimizer (the normal cone absorbs the residual).
    const double g0 = g(x0);
    if (g0 > 0.0 && pd.lo_closed && pd.lo == lo && kernel.in_interior(lo)) {
      return lo;
    }
    if (g0 < 0.0 && pd.hi_closed && pd.hi == hi && kernel.in_interior(hi)) {
      return hi;
    }
    std::ostringstream os;
    os << "prox_scalar_numeric: no sign change of the optimality equation "
       << "for kernel " << kernel.name() << ", penalty " << penalty.to_string()
       << ", gamma=" << gamma << ", xi=" << xi << " (g(" << x0
       << ")=" << g0 << ")";
    throw NumericalFailure(os.str());
  }
  const double ftol = tol * (1.0 + std::abs(target));
  const auto r = roots::safeguarded_newton(g_and_slope, *br, ftol);
  if (!r.converged) {
    std::ostringstream os;
    os << "prox_scalar_numeric: no convergence after " << r.iterations
       << " iterations (residual " << r.residual << ")";
    throw NumericalFailure(os.str());
  }
  return r.x;
}

double prox_scalar(const ScalarKernel& kernel, const ScalarPenalty& penalty,
                   double gamma, double xi) {
  if (find_catalog_entry(kernel, penalty, gamma) != nullptr) {
    try {
      return prox_scalar_closed(kernel, penalty, gamma, xi);
    } catch (const NoClosedForm&) {
      // Formula not applicable at this point (e.g. ex3_ii with 1 + omega xi
      // <= 0); fall through.
    }
  }
  return prox_scalar_numeric(kernel, penalty, gamma, xi);
}

Vector prox_separable(const SeparableLegendre& f,
                      std::span<const ScalarPenalty> penalties, double gamma,
                      std::span<const double> y, ProxRoute route) {
  if (penalties.size() != f.dim() || y.size() != f.dim()) {
    throw InputError("prox_separable: dimension mismatch");
  }
  Vector out(f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i) {
    const double step = gamma / f.weights()[i];
    try {
      out[i] = route == ProxRoute::Auto
                   ? prox_scalar(f.kernel(), penalties[i], step, y[i])
                   : prox_scalar_numeric(f.kernel(), penalties[i], step, y[i]);
    } catch (const DomainError& e) {
      throw DomainError("coordinate " + std::to_string(i) + ": " + e.what(),
                        static_cast<std::ptrdiff_t>(i));
    } catch (const NumericalFailure& e) {
      throw NumericalFailure("coordinate " + std::to_string(i) + ": " +
                             e.what());
    }
  }
  return out;
}

PythagorasCertificate pythagoras_check(const SeparableLegendre& f,
                                       std::span<const double> x,
                                       std::span<const double> y,
                                       std::span<const double> v,
                                       double slack) {
  PythagorasCertificate c;
  c.lhs = bregman_distance(f, x, v) + bregman_distance(f, v, y);
  c.rhs = bregman_distance(f, x, y);
  c.holds = c.rhs == kInf || c.lhs <= c.rhs + slack;
  return c;
}

Vector bregman_project(const SeparableLegendre& f, const ConvexSet& set,
                       std::span<const double> y) {
  validate_set(set, f.dim());
  if (!f.in_interior(y)) {
    throw DomainError("bregman_project: y is not in the interior of dom f");
  }
  if (const auto* hp = std::get_if<HyperplaneSet>(&set)) {
    return project_hyperplane(f, hp->a, hp->b, y);
  }
  if (const auto* hs = std::get_if<HalfspaceSet>(&set)) {
    if (dot(hs->a, y) <= hs->b) return Vector(y.begin(), y.end());
    return project_hyperplane(f, hs->a, hs->b, y);
  }
  const auto& box = std::get<BoxSet>(set);
  const auto [klo, khi] = f.kernel().domain();
  Vector out(f.dim());
  for (std::size_t i = 0; i < f.dim(); ++i) {
    const double lo = std::max(box.lo[i], klo);
    const double hi = std::min(box.hi[i], khi);
    if (!(lo <= hi) || box.lo[i] >= khi || box.hi[i] <= klo) {
      std::ostringstream os;
      os << "bregman_project: box interval " << i
         << " does not meet the interior of the " << f.kernel().name()
         << " domain";
      throw InfeasibleError(os.str());
    }
    out[i] = std::clamp(y[i], lo, hi);
  }
  return out;
}

HalfspaceTest hf_halfspace_test(const SeparableLegendre& f,
                                std::span<const double> x,
                                std::span<const double> y,
                                std::span<const double> z) {
  const Vector gx = f.gradient(x);
  const Vector gy = f.gradient(y);
  HalfspaceTest t;
  double scale = 0.0;
  for (std::size_t i = 0; i < f.dim(); ++i) {
    const double d = gx[i] - gy[i];
    t.inner += (z[i] - y[i]) * d;
    scale += std::abs((z[i] - y[i]) * d) + std::abs(z[i] * gx[i]) +
             std::abs(y[i] * gy[i]);
  }
  if (f.in_closure(z)) {
    t.gap = bregman_distance(f, z, y) + bregman_distance(f, y, x) -
            bregman_distance(f, z, x);
  } else {
    t.gap = t.inner;
  }
  t.holds = t.inner <= 1e-12 * (1.0 + scale);
  return t;
}

bool hf_halfspace_contains(const SeparableLegendre& f,
                           std::span<const double> x,
                           std::span<const double> y,
                           std::span<const double> z) {
  return hf_halfspace_test(f, x, y, z).holds;
}

}  // namespace bregvar
