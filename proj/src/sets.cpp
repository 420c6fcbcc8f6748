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

#include "bregvar/sets.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "bregvar/errors.hpp"

namespace bregvar {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_normal(const Vector& a, std::size_t dim) {
  if (a.size() != dim) throw InputError("set normal has wrong dimension");
  bool nonzero = false;
  for (double v : a) {
    if (!std::isfinite(v)) throw InputError("set normal must be finite");
    nonzero = nonzero || v != 0.0;
  }
  if (!nonzero) throw InputError("set normal must be nonzero");
}

double dot(std::span<const double> a, std::span<const double> x) {
  return std::inner_product(a.begin(), a.end(), x.begin(), 0.0);
}

double scale(std::span<const double> a, std::span<const double> x, double b) {
  double s = std::abs(b);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] * x[i]);
  return 1.0 + s;
}

}  // namespace

void validate_set(const ConvexSet& set, std::size_t dim) {
  std::visit(overloaded{
                 [&](const HyperplaneSet& h) { check_normal(h.a, dim); },
                 [&](const HalfspaceSet& h) { check_normal(h.a, dim); },
                 [&](const BoxSet& bx) {
                   if (bx.lo.size() != dim || bx.hi.size() != dim) {
                     throw InputError("box bounds have wrong dimension");
                   }
                   for (std::size_t i = 0; i < dim; ++i) {
                     if (std::isnan(bx.lo[i]) || std::isnan(bx.hi[i]) ||
                         bx.lo[i] > bx.hi[i]) {
                       throw InputError("box interval is empty");
                     }
                   }
                 },
             },
             set);
}

bool set_contains(const ConvexSet& set, std::span<const double> x, double tol) {
  return std::visit(
      overloaded{
          [&](const HyperplaneSet& h) {
            return std::abs(dot(h.a, x) - h.b) <= tol * scale(h.a, x, h.b);
          },
          [&](const HalfspaceSet& h) {
            return dot(h.a, x) - h.b <= tol * scale(h.a, x, h.b);
          },
          [&](const BoxSet& bx) {
            for (std::size_t i = 0; i < x.size(); ++i) {
              if (x[i] < bx.lo[i] - tol || x[i] > bx.hi[i] + tol) return false;
            }
            return true;
          },
      },
      set);
}

std::string describe(const ConvexSet& set) {
  std::ostringstream os;
  auto vec = [&](const Vector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
  };
  std::visit(overloaded{
                 [&](const HyperplaneSet& h) {
                   os << "hyperplane a=";
                   vec(h.a);
                   os << " b=" << h.b;
                 },
                 [&](const HalfspaceSet& h) {
                   os << "halfspace a=";
                   vec(h.a);
                   os << " b=" << h.b;
                 },
                 [&](const BoxSet& bx) {
                   os << "box lo=";
                   vec(bx.lo);
                   os << " hi=";
                   vec(bx.hi);
                 },
             },
             set);
  return os.str();
}

}  // namespace bregvar
