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

#include "bregvar/lambert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bregvar/errors.hpp"

namespace bregvar {
namespace {

constexpr int kMaxHalley = 50;
constexpr double kE = 2.718281828459045;

double relative_residual(double w, double z) {
  return std::abs(w * std::exp(w) - z) / std::max(z, 1e-300);
}

// w e^w = z  <=>  w + ln w = ln z for w > 0; the log form keeps large z
// in range.
double bisect(double z, int& iterations) {
  double lo = 0.0;
  double hi = std::max(1.0, std::log1p(z));
  const double lz = std::log(z);
  for (iterations = 0; iterations < 2000 && hi - lo > 0.0; ++iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mid + std::log(mid) < lz) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

LambertResult lambert_w0(double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw DomainError("lambert_w0: argument must be finite and >= 0");
  }
  LambertResult r;
  if (z == 0.0) return r;
  if (z < 1e-8) {
    // W(z) = z - z^2 + 3/2 z^3 - ...; the cubic truncation is exact to
    // double precision here.
    r.w = z * (1.0 - z * (1.0 - 1.5 * z));
    r.residual = relative_residual(r.w, z);
    return r;
  }

  double w;
  if (z <= kE) {
    w = std::log1p(z);
  } else {
    const double lz = std::log(z);
    w = lz - std::log(lz);
  }

  bool ok = true;
  for (int it = 1; it <= kMaxHalley; ++it) {
    r.iterations = it;
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    const double next = w - step;
    if (!std::isfinite(next) || next < 0.0) {
      ok = false;
      break;
    }
    w = next;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * w) break;
  }
  if (!ok) w = bisect(z, r.iterations);

  r.w = w;
  r.residual = relative_residual(w, z);
  return r;
}

}  // namespace bregvar
