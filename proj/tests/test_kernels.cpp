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
#include <random>

#include "bregvar/errors.hpp"
#include "bregvar/kernels.hpp"
#include "bregvar/oracle.hpp"

using namespace bregvar;

namespace {

constexpr KernelKind kAll[] = {KernelKind::Energy, KernelKind::BoltzmannShannon,
                               KernelKind::FermiDirac, KernelKind::Burg,
                               KernelKind::Hellinger};

double draw(KernelKind k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (k) {
    case KernelKind::Energy: return -10.0 + 20.0 * u(rng);
    case KernelKind::BoltzmannShannon:
    case KernelKind::Burg: return std::exp(-4.0 + 7.0 * u(rng));
    case KernelKind::FermiDirac: return 0.01 + 0.98 * u(rng);
    case KernelKind::Hellinger: return -0.99 + 1.98 * u(rng);
  }
  return 0.0;
}

Vector draw_vec(KernelKind k, std::size_t m, std::mt19937_64& rng) {
  Vector v(m);
  for (auto& e : v) e = draw(k, rng);
  return v;
}

}  // namespace

TEST_CASE("kernel names") {
  for (auto k : kAll) CHECK(parse_kernel(kernel_name(k)) == k);
  CHECK_THROWS_AS(parse_kernel("shannon"), InputError);
}

TEST_CASE("kernel values") {
  const ScalarKernel bs(KernelKind::BoltzmannShannon);
  CHECK(kernel_value(bs, 1.0) == -1.0);
  CHECK(kernel_value(bs, 0.0) == 0.0);
  CHECK(kernel_value(ScalarKernel(KernelKind::Burg), -1.0) == INFINITY);
  CHECK(kernel_value(ScalarKernel(KernelKind::FermiDirac), 0.0) == 0.0);
  CHECK(kernel_value(ScalarKernel(KernelKind::FermiDirac), 1.0) == 0.0);
  CHECK(kernel_value(ScalarKernel(KernelKind::Hellinger), 1.0) == 0.0);
  CHECK(kernel_value(ScalarKernel(KernelKind::Hellinger), 1.5) == INFINITY);
  CHECK(kernel_value(ScalarKernel(KernelKind::Burg), 0.0) == INFINITY);
}

TEST_CASE("fermi-dirac is convex") {
  const ScalarKernel fd(KernelKind::FermiDirac);
  for (double x = 0.05; x < 1.0; x += 0.05) CHECK(fd.second_derivative(x) > 0.0);
  // midpoint convexity with the standard sign
  CHECK(fd.value(0.5) <= 0.5 * (fd.value(0.1) + fd.value(0.9)));
}

TEST_CASE("bregman distance examples") {
  const SeparableLegendre energy(ScalarKernel(KernelKind::Energy), 1);
  CHECK(bregman_distance(energy, Vector{3.0}, Vector{1.0}) == 2.0);
  const SeparableLegendre bs(ScalarKernel(KernelKind::BoltzmannShannon), 1);
  CHECK(bregman_distance(bs, Vector{1.0}, Vector{2.0}) ==
        doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-15));
  CHECK(bregman_distance(bs, Vector{0.0}, Vector{2.0}) == doctest::Approx(2.0));
  CHECK(bregman_distance(bs, Vector{1.0}, Vector{0.0}) == INFINITY);
  CHECK_THROWS_AS(bregman_distance(bs, Vector{1.0, 2.0}, Vector{1.0}), InputError);
}

TEST_CASE("gradient examples") {
  const SeparableLegendre energy(ScalarKernel(KernelKind::Energy), 2);
  CHECK(gradient(energy, Vector{2.0, 3.0}) == Vector{2.0, 3.0});
  const SeparableLegendre burg(ScalarKernel(KernelKind::Burg), 1);
  CHECK(gradient(burg, Vector{2.0})[0] == -0.5);
  const SeparableLegendre bs(ScalarKernel(KernelKind::BoltzmannShannon), Vector{2.0});
  CHECK(gradient(bs, Vector{1.0})[0] == 0.0);

  const SeparableLegendre burg2(ScalarKernel(KernelKind::Burg), 3);
  try {
    gradient(burg2, Vector{1.0, -1.0, 2.0});
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(e.coordinate() == 1);
  }
}

TEST_CASE("gradient conjugate examples") {
  CHECK(gradient_conjugate(SeparableLegendre(ScalarKernel(KernelKind::Energy), 1),
                           Vector{5.0})[0] == 5.0);
  CHECK(gradient_conjugate(
            SeparableLegendre(ScalarKernel(KernelKind::BoltzmannShannon), 1),
            Vector{0.0})[0] == 1.0);
  CHECK(gradient_conjugate(SeparableLegendre(ScalarKernel(KernelKind::FermiDirac), 1),
                           Vector{0.0})[0] == 0.5);
  CHECK_THROWS_AS(
      gradient_conjugate(SeparableLegendre(ScalarKernel(KernelKind::Burg), 1),
                         Vector{0.5}),
      DomainError);
}

TEST_CASE("closed-form inverse derivative agrees with the numeric one") {
  std::mt19937_64 rng(5);
  for (auto k : kAll) {
    const ScalarKernel s(k);
    for (int t = 0; t < 200; ++t) {
      const double xi = draw(k, rng);
      const double u = s.derivative(xi);
      CHECK(std::abs(s.inverse_derivative(u) - xi) <= 1e-12 * std::max(1.0, std::abs(xi)));
      CHECK(std::abs(inverse_derivative_numeric(s, u) - xi) <=
            1e-12 * std::max(1.0, std::abs(xi)));
    }
  }
}

TEST_CASE("property suite on random points") {
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> wdist(0.5, 3.0);
  std::uniform_real_distribution<double> tdist(0.0, 1.0);
  for (auto k : kAll) {
    CAPTURE(kernel_name(k));
    for (int t = 0; t < 1000; ++t) {
      Vector w{wdist(rng), wdist(rng), wdist(rng)};
      const SeparableLegendre f(ScalarKernel(k), w);
      const Vector x = draw_vec(k, 3, rng);
      const Vector y = draw_vec(k, 3, rng);
      const Vector z = draw_vec(k, 3, rng);

      const Vector g = f.gradient(x);
      const Vector fd = finite_diff_gradient(f, x, 1e-6);
      for (int i = 0; i < 3; ++i) {
        REQUIRE(std::abs(fd[i] - g[i]) <= 1e-6 * std::max(1.0, std::abs(g[i])));
      }
      const Vector back = f.gradient_conjugate(g);
      for (int i = 0; i < 3; ++i) {
        REQUIRE(std::abs(back[i] - x[i]) <= 1e-10 * std::max(1.0, std::abs(x[i])));
      }

      const double dxy = bregman_distance(f, x, y);
      const double dyz = bregman_distance(f, y, z);
      const double dxz = bregman_distance(f, x, z);
      REQUIRE(dxy >= 0.0);
      CHECK(bregman_distance(f, x, x) == 0.0);
      const Vector gz = f.gradient(z);
      const Vector gy = f.gradient(y);
      double inner = 0.0;
      for (int i = 0; i < 3; ++i) inner += (x[i] - y[i]) * (gz[i] - gy[i]);
      const double scale = 1.0 + std::abs(dxz) + std::abs(dxy) + std::abs(dyz);
      REQUIRE(std::abs(dxz - (dxy + dyz - inner)) <= 1e-10 * scale);

      const double s = tdist(rng);
      Vector mix(3);
      for (int i = 0; i < 3; ++i) mix[i] = s * x[i] + (1 - s) * z[i];
      REQUIRE(bregman_distance(f, mix, y) <=
              s * dxy + (1 - s) * bregman_distance(f, z, y) + 1e-10 * scale);
    }
  }
}

TEST_CASE("tiny distances keep relative accuracy") {
  const SeparableLegendre bs(ScalarKernel(KernelKind::BoltzmannShannon), 1);
  const double d = bregman_distance(bs, Vector{1.0 + 1e-9}, Vector{1.0});
  CHECK(d == doctest::Approx(0.5e-18).epsilon(1e-6));
  const SeparableLegendre burg(ScalarKernel(KernelKind::Burg), 1);
  CHECK(bregman_distance(burg, Vector{2.0 + 2e-9}, Vector{2.0}) ==
        doctest::Approx(0.5e-18).epsilon(1e-6));
}

TEST_CASE("weights scale the distance") {
  const ScalarKernel k(KernelKind::Hellinger);
  const SeparableLegendre one(k, 2);
  const SeparableLegendre two(k, Vector{2.0, 2.0});
  const Vector x{0.1, -0.3};
  const Vector y{0.5, 0.2};
  CHECK(bregman_distance(two, x, y) ==
        doctest::Approx(2.0 * bregman_distance(one, x, y)).epsilon(1e-14));
  CHECK_THROWS_AS(SeparableLegendre(k, Vector{1.0, 0.0}), InputError);
}
