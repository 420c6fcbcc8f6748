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

#include "bregvar/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <variant>

#include "bregvar/errors.hpp"

#if BREGVAR_HAVE_QUADMATH
#include <quadmath.h>
#endif

namespace bregvar {
namespace {

#if BREGVAR_HAVE_QUADMATH
using Wide = __float128;
Wide wlog(Wide x) { return logq(x); }
Wide wlog1p(Wide x) { return log1pq(x); }
Wide wpow(Wide x, Wide y) { return powq(x, y); }
Wide wsqrt(Wide x) { return sqrtq(x); }
Wide wabs(Wide x) { return fabsq(x); }
#else
using Wide = long double;
Wide wlog(Wide x) { return std::log(x); }
Wide wlog1p(Wide x) { return std::log1p(x); }
Wide wpow(Wide x, Wide y) { return std::pow(x, y); }
Wide wsqrt(Wide x) { return std::sqrt(x); }
Wide wabs(Wide x) { return std::fabs(x); }
#endif

#if BREGVAR_HAVE_QUADMATH
double wlog(double x) { return std::log(x); }
double wlog1p(double x) { return std::log1p(x); }
double wpow(double x, double y) { return std::pow(x, y); }
double wsqrt(double x) { return std::sqrt(x); }
double wabs(double x) { return std::fabs(x); }
#endif

const Wide kWideInf = static_cast<Wide>(std::numeric_limits<double>::infinity());

template <typename T>
T inf_of() {
  return static_cast<T>(std::numeric_limits<double>::infinity());
}

bool is_inf(Wide v) { return !(v < kWideInf); }

template <typename T>
T theta(KernelKind k, T x) {
  const T one = 1;
  switch (k) {
    case KernelKind::Energy:
      return x * x / 2;
    case KernelKind::BoltzmannShannon:
      if (x == 0) return 0;
      return x > 0 ? x * wlog(x) - x : inf_of<T>();
    case KernelKind::FermiDirac:
      if (x == 0 || x == one) return 0;
      return (x > 0 && x < one) ? x * wlog(x) + (one - x) * wlog1p(-x)
                                : inf_of<T>();
    case KernelKind::Burg:
      return x > 0 ? -wlog(x) : inf_of<T>();
    case KernelKind::Hellinger:
      return (x >= -one && x <= one) ? -wsqrt((one - x) * (one + x))
                                     : inf_of<T>();
  }
  return inf_of<T>();
}

// theta' at an interior point; only used to form the linear term of
// D(., center).
template <typename T>
T theta_slope(KernelKind k, T x) {
  const T one = 1;
  switch (k) {
    case KernelKind::Energy: return x;
    case KernelKind::BoltzmannShannon: return wlog(x);
    case KernelKind::FermiDirac: return wlog(x) - wlog1p(-x);
    case KernelKind::Burg: return -one / x;
    case KernelKind::Hellinger: return x / wsqrt((one - x) * (one + x));
  }
  return 0;
}

template <typename T>
T phi(const ScalarPenalty& pen, T x) {
  const auto& q = pen.params();
  const T one = 1;
  const T p = q.p;
  switch (pen.kind()) {
    case PenaltyKind::Zero:
      return 0;
    case PenaltyKind::LinearEntropy:
      if (x == 0) return 0;
      return x > 0 ? x * wlog(x) - T(q.omega) * x : inf_of<T>();
    case PenaltyKind::Power:
      if (q.nonneg && x < 0) return inf_of<T>();
      return wpow(wabs(x), p) / p;
    case PenaltyKind::NegativePower:
      return x > 0 ? wpow(x, -p) / p : inf_of<T>();
    case PenaltyKind::NegativeRoot:
      return x >= 0 ? -wpow(x, p) / p : inf_of<T>();
    case PenaltyKind::OneMinusEntropy:
      if (x == one) return one;
      return x < one ? (one - x) * wlog1p(-x) + x : inf_of<T>();
    case PenaltyKind::ScaledBurg:
      return x > 0 ? -T(q.gamma) * wlog(x) : inf_of<T>();
    case PenaltyKind::BurgLinearInverse:
      if (!(x > 0)) return inf_of<T>();
      return -T(q.gamma) * wlog(x) + T(q.omega) * x + T(q.alpha) / x;
    case PenaltyKind::BurgPower:
      if (!(x > 0)) return inf_of<T>();
      return -T(q.gamma) * wlog(x) + T(q.alpha) * wpow(x, p);
    case PenaltyKind::InversePower:
      return x > 0 ? T(q.alpha) * wpow(x, -p) : inf_of<T>();
    case PenaltyKind::HellingerSelf:
      return (x >= -one && x <= one) ? -wsqrt((one - x) * (one + x))
                                     : inf_of<T>();
    case PenaltyKind::KLToTarget:
      if (x == 0) return T(q.c);
      return x > 0 ? x * wlog(x / T(q.c)) - x + T(q.c) : inf_of<T>();
  }
  return inf_of<T>();
}

using Objective = std::function<Wide(Wide)>;
using CoarseObjective = std::function<double(double)>;

// Maps t in [-T, T] onto the open interval (lo, hi), logarithmically near
// finite endpoints.
struct GridMap {
  double lo, hi, center;
  static constexpr double kT = 40.0;

  Wide at(double t) const {
    const bool flo = std::isfinite(lo);
    const bool fhi = std::isfinite(hi);
    if (flo && fhi) {
      return Wide(lo) + Wide(hi - lo) / (1 + std::exp(-t));
    }
    if (flo) return Wide(lo) + Wide(center - lo) * Wide(std::exp(t));
    if (fhi) return Wide(hi) - Wide(hi - center) * Wide(std::exp(t));
    return Wide(center) + Wide(1.0 + std::abs(center)) * Wide(std::sinh(t));
  }
};

double pick_center(double lo, double hi, double hint) {
  if (hint > lo && hint < hi) return hint;
  if (std::isfinite(lo) && std::isfinite(hi)) return 0.5 * (lo + hi);
  if (std::isfinite(lo)) return lo + 1.0 + std::abs(lo);
  if (std::isfinite(hi)) return hi - 1.0 - std::abs(hi);
  return 0.0;
}

Wide golden(const Objective& F, Wide a, Wide b, int steps, double tol) {
  const Wide r = (std::sqrt(5.0) - 1.0) / 2.0;
  Wide c = b - r * (b - a);
  Wide d = a + r * (b - a);
  Wide fc = F(c);
  Wide fd = F(d);
  for (int i = 0; i < steps; ++i) {
    const Wide scale = 1 + wabs(c);
    if (b - a <= Wide(tol) * scale) break;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = F(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = F(d);
    }
  }
  return (a + b) / 2;
}

// Minimizes a convex extended-valued F over [lo, hi] (endpoints included
// when finite). Returns nullopt-like +inf flag via `found`.
// The grid only brackets the minimizer, so it runs on the double-precision
// objective G; the bracket is refined on the wide objective F.
Wide minimize_1d(const Objective& F, const CoarseObjective& G, double lo,
                 double hi, double hint, int grid, int steps, double tol,
                 bool& found) {
  found = false;
  if (lo == hi) {
    found = !is_inf(F(Wide(lo)));
    return Wide(lo);
  }
  const GridMap map{lo, hi, pick_center(lo, hi, hint)};
  std::vector<Wide> xs(grid);
  int best = -1;
  double best_val = kInf;
  for (int k = 0; k < grid; ++k) {
    const double t = -GridMap::kT + 2.0 * GridMap::kT * k / (grid - 1);
    xs[k] = map.at(t);
    const double v = G(static_cast<double>(xs[k]));
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  // Closed finite endpoints.
  Wide lo_val = std::isfinite(lo) ? F(Wide(lo)) : kWideInf;
  Wide hi_val = std::isfinite(hi) ? F(Wide(hi)) : kWideInf;
  if (best < 0 && is_inf(lo_val) && is_inf(hi_val)) return 0;
  found = true;
  if (best < 0) return lo_val <= hi_val ? Wide(lo) : Wide(hi);

  // Two cells either side absorbs rounding ties in the coarse values.
  Wide a = best > 1 ? xs[best - 2] : (std::isfinite(lo) ? Wide(lo) : xs[0]);
  Wide b = best + 2 < grid ? xs[best + 2]
                           : (std::isfinite(hi) ? Wide(hi) : xs[grid - 1]);
  Wide x = golden(F, a, b, steps, tol);
  Wide fx = F(x);
  if (lo_val < fx) {
    x = Wide(lo);
    fx = lo_val;
  }
  if (hi_val < fx) x = Wide(hi);
  return x;
}

// Weighted D^f(x, y) in wide precision; y interior.
Wide wide_distance(const SeparableLegendre& f, std::span<const Wide> x,
                   std::span<const double> y) {
  const KernelKind k = f.kernel().kind();
  Wide s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Wide tx = theta(k, x[i]);
    if (is_inf(tx)) return kWideInf;
    const Wide yi = y[i];
    s += Wide(f.weights()[i]) *
         (tx - theta(k, yi) - (x[i] - yi) * theta_slope(k, yi));
  }
  return s;
}

}  // namespace

double prox_oracle(const ScalarKernel& kernel, const ScalarPenalty& penalty,
                   double gamma, double xi, double tol) {
  if (!kernel.in_interior(xi)) {
    throw DomainError("prox_oracle: xi is not interior");
  }
  const KernelKind k = kernel.kind();
  // gamma phi(x) + theta(x) - x theta'(xi), in either precision.
  auto objective = [&](auto x) {
    using T = decltype(x);
    const T t = theta(k, x);
    if (!(t < inf_of<T>())) return inf_of<T>();
    T v = 0;
    if (penalty.kind() != PenaltyKind::Zero) {
      v = phi(penalty, x);
      if (!(v < inf_of<T>())) return inf_of<T>();
    }
    return T(gamma) * v + t - x * theta_slope(k, T(xi));
  };
  Objective F = [&](Wide x) { return objective(x); };
  CoarseObjective G = [&](double x) { return objective(x); };
  const auto [klo, khi] = kernel.domain();
  const auto pd = penalty.domain();
  const double lo = std::max(klo, pd.lo);
  const double hi = std::min(khi, pd.hi);
  if (!(lo <= hi)) throw InfeasibleError("prox_oracle: empty domain");
  bool found = false;
  const Wide x = minimize_1d(F, G, lo, hi, xi, kOracleGridPoints,
                             kOracleGoldenSteps, tol, found);
  if (!found) throw InfeasibleError("prox_oracle: objective is +inf");
  return static_cast<double>(x);
}

Vector finite_diff_gradient(const SeparableLegendre& f,
                            std::span<const double> x, double h) {
  if (x.size() != f.dim()) throw InputError("finite_diff_gradient: dimension");
  const auto& k = f.kernel();
  Vector g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!k.in_interior(x[i] - h) || !k.in_interior(x[i] + h)) {
      throw DomainError("finite_diff_gradient: x +/- h leaves the interior",
                        static_cast<std::ptrdiff_t>(i));
    }
    const Wide up = theta(k.kind(), Wide(x[i]) + Wide(h));
    const Wide dn = theta(k.kind(), Wide(x[i]) - Wide(h));
    g[i] = static_cast<double>(Wide(f.weights()[i]) * (up - dn) / (2 * Wide(h)));
  }
  return g;
}

Vector projection_oracle(const SeparableLegendre& f, const ConvexSet& set,
                         std::span<const double> y, double tol) {
  const std::size_t m = f.dim();
  if (m > 3) throw InputError("projection_oracle: dimension must be <= 3");
  if (!f.in_interior(y)) throw DomainError("projection_oracle: y not interior");
  validate_set(set, m);
  const auto [klo, khi] = f.kernel().domain();
  const KernelKind kk = f.kernel().kind();

  if (const auto* box = std::get_if<BoxSet>(&set)) {
    Vector x(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double lo = std::max(box->lo[i], klo);
      const double hi = std::min(box->hi[i], khi);
      if (!(lo <= hi)) throw InfeasibleError("projection_oracle: empty box");
      const Wide yi = y[i];
      const Wide slope = theta_slope(kk, yi);
      Objective F = [&](Wide t) { return theta(kk, t) - t * slope; };
      const double dslope = static_cast<double>(slope);
      CoarseObjective G = [&](double t) { return theta(kk, t) - t * dslope; };
      bool found = false;
      const Wide xi = minimize_1d(F, G, lo, hi, y[i], kOracleGridPoints,
                                  kOracleGoldenSteps, tol, found);
      if (!found) throw InfeasibleError("projection_oracle: empty box");
      x[i] = static_cast<double>(xi);
    }
    return x;
  }

  const Vector* a_ptr;
  double b;
  if (const auto* hs = std::get_if<HalfspaceSet>(&set)) {
    const double ay = std::inner_product(hs->a.begin(), hs->a.end(), y.begin(), 0.0);
    if (ay <= hs->b) return Vector(y.begin(), y.end());
    a_ptr = &hs->a;
    b = hs->b;
  } else {
    const auto& hp = std::get<HyperplaneSet>(set);
    a_ptr = &hp.a;
    b = hp.b;
  }
  const Vector& a = *a_ptr;

  std::size_t k = 0;
  for (std::size_t i = 1; i < m; ++i) {
    if (std::abs(a[i]) > std::abs(a[k])) k = i;
  }
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < m; ++i) {
    if (i != k) free.push_back(i);
  }

  std::vector<Wide> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = y[i];
  auto complete = [&](std::vector<Wide>& v) {
    Wide s = b;
    for (auto j : free) s -= Wide(a[j]) * v[j];
    v[k] = s / Wide(a[k]);
  };
  auto objective = [&](std::vector<Wide>& v) {
    complete(v);
    return wide_distance(f, v, y);
  };

  if (free.empty()) {
    complete(x);
    if (is_inf(wide_distance(f, x, y))) {
      throw InfeasibleError("projection_oracle: hyperplane misses the domain");
    }
    return {static_cast<double>(x[0])};
  }

  // Feasible interval for free coordinate j with the others fixed: x_j and
  // the dependent x_k both inside the kernel domain.
  auto slice = [&](std::size_t j, double& lo, double& hi) {
    lo = klo;
    hi = khi;
    Wide rest = b;
    for (auto i : free) {
      if (i != j) rest -= Wide(a[i]) * x[i];
    }
    if (a[j] == 0.0) return;
    // x_k = (rest - a_j x_j) / a_k in (klo, khi)
    const double r = static_cast<double>(rest);
    const double ratio = a[j] / a[k];
    double e1 = std::isfinite(klo) ? (r / a[k] - klo) / ratio : (ratio > 0 ? kInf : -kInf);
    double e2 = std::isfinite(khi) ? (r / a[k] - khi) / ratio : (ratio > 0 ? -kInf : kInf);
    lo = std::max(lo, std::min(e1, e2));
    hi = std::min(hi, std::max(e1, e2));
  };

  // Coarse start: grid on each free coordinate independently.
  for (auto j : free) {
    double lo, hi;
    slice(j, lo, hi);
    if (!(lo < hi)) continue;
    Objective F = [&](Wide t) {
      const Wide saved = x[j];
      x[j] = t;
      const Wide v = objective(x);
      x[j] = saved;
      return v;
    };
    CoarseObjective G = [&](double t) { return static_cast<double>(F(t)); };
    bool found = false;
    const Wide t = minimize_1d(F, G, lo, hi, y[j], 2000, kOracleGoldenSteps, tol, found);
    if (found) x[j] = t;
  }
  if (is_inf(objective(x))) {
    throw InfeasibleError("projection_oracle: no feasible start");
  }

  for (int sweep = 0; sweep < 5000; ++sweep) {
    Wide change = 0;
    for (auto j : free) {
      double lo, hi;
      slice(j, lo, hi);
      if (!(lo < hi)) continue;
      Objective F = [&](Wide t) {
        const Wide saved = x[j];
        x[j] = t;
        const Wide v = objective(x);
        x[j] = saved;
        return v;
      };
      CoarseObjective G = [&](double t) { return static_cast<double>(F(t)); };
      bool found = false;
      const Wide t = minimize_1d(F, G, lo, hi, static_cast<double>(x[j]), 64,
                                 kOracleGoldenSteps, tol, found);
      if (!found) continue;
      change = std::max(change, wabs(t - x[j]) / (1 + wabs(x[j])));
      x[j] = t;
    }
    if (change <= Wide(tol)) break;
  }
  complete(x);
  Vector out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = static_cast<double>(x[i]);
  return out;
}

}  // namespace bregvar
