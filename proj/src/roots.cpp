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

#include "bregvar/roots.hpp"

#include <algorithm>
#include <cmath>

namespace bregvar::roots {
namespace {

constexpr int kMaxFiniteSteps = 1100;
constexpr int kMaxInfiniteSteps = 200;

// Walks from x0 toward `end` until pred(x) holds. Returns the first point
// satisfying pred, or nullopt.
template <typename Pred>
std::optional<double> walk_toward(double x0, double end, Pred pred) {
  if (std::isfinite(end)) {
    double gap = end - x0;
    for (int k = 1; k <= kMaxFiniteSteps; ++k) {
      gap *= 0.5;
      double x = end - gap;
      if (x == end) x = std::nextafter(end, x0);
      if (pred(x)) return x;
      if (x == std::nextafter(end, x0)) break;
    }
    return std::nullopt;
  }
  const double dir = end > 0 ? 1.0 : -1.0;
  double step = 1.0 + std::abs(x0);
  for (int k = 1; k <= kMaxInfiniteSteps; ++k) {
    double x = x0 + dir * step;
    if (!std::isfinite(x)) break;
    if (pred(x)) return x;
    step *= 2.0;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Bracket> bracket_increasing(const std::function<double(double)>& g,
                                          double x0, double domain_lo,
                                          double domain_hi) {
  const double g0 = g(x0);
  if (std::isnan(g0)) return std::nullopt;
  if (g0 == 0.0) return Bracket{x0, x0};
  if (g0 > 0.0) {
    auto a = walk_toward(x0, domain_lo, [&](double x) { return g(x) <= 0.0; });
    if (!a) return std::nullopt;
    return Bracket{*a, x0};
  }
  auto b = walk_toward(x0, domain_hi, [&](double x) { return g(x) >= 0.0; });
  if (!b) return std::nullopt;
  return Bracket{x0, *b};
}

RootResult safeguarded_newton(const ValueAndSlope& g, Bracket bracket,
                              double ftol, double xtol, int max_iter) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  RootResult r;
  if (lo == hi) {
    r.x = lo;
    r.residual = std::abs(g(lo).first);
    r.converged = true;
    return r;
  }
  double x = 0.5 * (lo + hi);
  double dx_prev = hi - lo;
  double dx = dx_prev;
  for (int it = 1; it <= max_iter; ++it) {
    auto [gx, dg] = g(x);
    r.iterations = it;
    r.x = x;
    r.residual = std::abs(gx);
    if (std::isnan(gx)) break;
    if (r.residual <= ftol) {
      r.converged = true;
      return r;
    }
    if (gx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= xtol * std::max(std::abs(lo), std::abs(hi)) ||
        std::nextafter(lo, hi) >= hi) {
      r.converged = true;
      return r;
    }
    double next = x - gx / dg;
    // rtsafe-style acceptance: inside the bracket and shrinking fast enough.
    const bool newton_ok = std::isfinite(next) && next > lo && next < hi &&
                           std::abs(next - x) <= 0.5 * std::abs(dx_prev);
    dx_prev = dx;
    if (!newton_ok) {
      // Geometric midpoint when the bracket spans many orders of magnitude
      // on one side of zero.
      if (lo > 0.0 && hi > 4.0 * lo) {
        next = std::sqrt(lo) * std::sqrt(hi);
      } else if (hi < 0.0 && lo < 4.0 * hi) {
        next = -std::sqrt(-lo) * std::sqrt(-hi);
      } else {
        next = 0.5 * (lo + hi);
      }
    }
    if (next == x) next = 0.5 * (lo + hi);
    dx = next - x;
    x = next;
  }
  return r;
}

}  // namespace bregvar::roots
