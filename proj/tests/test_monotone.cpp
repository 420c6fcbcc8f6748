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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bregvar/monotone.hpp"
#include "bregvar/prox.hpp"

using namespace bregvar;

namespace {

IterateTrace make_trace(KernelKind k, const std::vector<Vector>& xs,
                        double eta = 0.0) {
  IterateTrace t;
  t.kernel = k;
  for (const auto& x : xs) {
    TraceRecord r;
    r.x = x;
    r.w.assign(x.size(), 1.0);
    r.eta = eta;
    t.records.push_back(r);
  }
  return t;
}

// Alternating entropic projections onto {x1 + x2 = 1} and {x1 = 2 x2}.
IterateTrace projection_trace(std::size_t steps) {
  const SeparableLegendre f(ScalarKernel(KernelKind::BoltzmannShannon), 2);
  const ConvexSet sets[] = {HyperplaneSet{{1.0, 1.0}, 1.0},
                            HyperplaneSet{{1.0, -2.0}, 0.0}};
  std::vector<Vector> xs{{3.0, 0.2}};
  for (std::size_t n = 0; n < steps; ++n) {
    xs.push_back(bregman_project(f, sets[n % 2], xs.back()));
  }
  return make_trace(KernelKind::BoltzmannShannon, xs);
}

}  // namespace

TEST_CASE("constant trace") {
  const Vector x{0.3, 0.7};
  const auto t = make_trace(KernelKind::FermiDirac, {x, x, x, x});
  const auto c = check_quasi_monotone(t, x, 0.0);
  CHECK(c.verdict);
  CHECK(c.sum_eps == 0.0);
  CHECK(c.eps.size() == 3);
  for (double d : step_distance_decay(t)) CHECK(d == 0.0);
}

TEST_CASE("projection trace is monotone for intersection points") {
  const auto t = projection_trace(12);
  const Vector x{2.0 / 3.0, 1.0 / 3.0};
  const auto c = check_quasi_monotone(t, x, 1e-8 * 12);
  CHECK(c.verdict);
  CHECK(c.sum_eps <= 1e-8 * 12);
}

TEST_CASE("injected jump fails") {
  auto t = projection_trace(12);
  t.records[6].x = {40.0, 0.01};
  const Vector x{2.0 / 3.0, 1.0 / 3.0};
  const auto c = check_quasi_monotone(t, x, 1e-8 * 12);
  CHECK_FALSE(c.verdict);
  CHECK(c.worst_step == 5u);
}

TEST_CASE("stationary variant") {
  const auto t = projection_trace(10);
  const Vector x{2.0 / 3.0, 1.0 / 3.0};
  const auto single = check_quasi_monotone(t, x, 1e-7);
  const auto multi = check_stationary_quasi_monotone(t, {x}, 1e-7);
  CHECK(single.sum_eps == multi.sum_eps);
  CHECK(single.verdict == multi.verdict);
  // A point outside the intersection is not a valid target.
  const auto far = check_stationary_quasi_monotone(t, {x, Vector{5.0, 0.1}}, 1e-7);
  CHECK_FALSE(far.verdict);
}

TEST_CASE("eta absorbs growth") {
  // D(x, x_n) doubles each step; eta_n = 1 permits exactly that.
  const Vector x{0.0};
  std::vector<Vector> xs;
  for (int n = 0; n < 6; ++n) xs.push_back({std::pow(std::sqrt(2.0), n)});
  const auto strict = make_trace(KernelKind::Energy, xs, 0.0);
  CHECK_FALSE(check_quasi_monotone(strict, x, 1e-9).verdict);
  const auto loose = make_trace(KernelKind::Energy, xs, 1.0);
  CHECK(check_quasi_monotone(loose, x, 1e-9).verdict);
}

TEST_CASE("step distance decay") {
  const auto t = projection_trace(8);
  const auto d = step_distance_decay(t);
  CHECK(d.size() == 8);
  for (double v : d) CHECK(v >= 0.0);
  CHECK(first_below(d, 1e-20).has_value());
  CHECK_FALSE(first_below(d, -1.0).has_value());
}

TEST_CASE("distance to a set") {
  const SeparableLegendre bs(ScalarKernel(KernelKind::BoltzmannShannon), 2);
  const HalfspaceSet h{{1.0, 1.0}, 1.0};
  CHECK(df_distance_to_set(bs, h, Vector{0.2, 0.2}) == 0.0);
  CHECK(df_distance_to_set(bs, h, Vector{2.0, 2.0}) ==
        doctest::Approx(bregman_distance(bs, Vector{0.5, 0.5}, Vector{2.0, 2.0})));
  const SeparableLegendre e(ScalarKernel(KernelKind::Energy), 2);
  CHECK(df_distance_to_set(e, HyperplaneSet{{0.0, 1.0}, 1.0}, Vector{4.0, 4.0}) ==
        doctest::Approx(4.5));
}

TEST_CASE("objective and small-step probes") {
  auto t = make_trace(KernelKind::Energy, {{1.0}, {0.5}, {0.25}, {0.25}});
  for (std::size_t n = 0; n < t.size(); ++n) t.records[n].objective = t.records[n].x[0];
  CHECK(check_objective_nonincreasing(t).ok);
  t.records[3].objective = 0.3;
  const auto o = check_objective_nonincreasing(t);
  CHECK_FALSE(o.ok);
  CHECK(o.first_increase == 2u);

  const auto p = probe_small_steps(t, 1e-12, 1e-5);
  CHECK(p.ok);
  CHECK(p.probed_steps == 1);
}
