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

#include "bregvar/errors.hpp"
#include "bregvar/penalties.hpp"

using namespace bregvar;

TEST_CASE("parse with parameters") {
  const auto p = parse_penalty("scaled_burg:gamma=0.5");
  CHECK(p.kind() == PenaltyKind::ScaledBurg);
  CHECK(p.params().gamma == 0.5);
  const auto q = parse_penalty("burg_power:gamma=1,alpha=2,p=3");
  CHECK(q.params().alpha == 2.0);
  CHECK(q.params().p == 3.0);
  CHECK(parse_penalty("zero").kind() == PenaltyKind::Zero);
  CHECK(parse_penalty("power:p=1,nonneg=1").params().nonneg);
}

TEST_CASE("malformed strings are input errors") {
  CHECK_THROWS_AS(parse_penalty("nope"), InputError);
  CHECK_THROWS_AS(parse_penalty("scaled_burg"), InputError);
  CHECK_THROWS_AS(parse_penalty("scaled_burg:gamma"), InputError);
  CHECK_THROWS_AS(parse_penalty("scaled_burg:gamma=x"), InputError);
  CHECK_THROWS_AS(parse_penalty("scaled_burg:omega=1"), InputError);
  CHECK_THROWS_AS(parse_penalty("power:p=0.5"), InputError);
  CHECK_THROWS_AS(parse_penalty("neg_root:p=1"), InputError);
}

TEST_CASE("to_string round trips") {
  for (const char* s :
       {"zero", "linear_entropy:omega=2", "power:p=1.5", "power:p=1,nonneg=1",
        "neg_power:p=2", "neg_root:p=0.25", "one_minus_entropy",
        "scaled_burg:gamma=0.5", "burg_linear_inverse:gamma=1,omega=2,alpha=0.5",
        "burg_power:gamma=1,alpha=2,p=3", "inverse_power:alpha=1,p=2",
        "hellinger_self", "kl_to_target:c=2"}) {
    const auto p = parse_penalty(s);
    const auto q = parse_penalty(p.to_string());
    CHECK(q.kind() == p.kind());
    CHECK(q.value(0.7) == doctest::Approx(p.value(0.7)));
  }
}

TEST_CASE("derivatives match finite differences") {
  const char* specs[] = {"linear_entropy:omega=2", "power:p=3", "neg_power:p=2",
                         "neg_root:p=0.5", "one_minus_entropy",
                         "scaled_burg:gamma=0.5",
                         "burg_linear_inverse:gamma=1,omega=2,alpha=0.5",
                         "burg_power:gamma=1,alpha=2,p=3",
                         "inverse_power:alpha=1,p=2", "hellinger_self",
                         "kl_to_target:c=2"};
  for (const char* s : specs) {
    const auto p = parse_penalty(s);
    const double x = 0.4;
    const double h = 1e-6;
    const double fd = (p.value(x + h) - p.value(x - h)) / (2 * h);
    CHECK_MESSAGE(std::abs(fd - p.derivative(x)) <= 1e-6 * (1 + std::abs(fd)), s);
    const double fd2 = (p.derivative(x + h) - p.derivative(x - h)) / (2 * h);
    CHECK_MESSAGE(std::abs(fd2 - p.second_derivative(x)) <= 1e-5 * (1 + std::abs(fd2)), s);
    CHECK(p.second_derivative(x) >= 0.0);
  }
}

TEST_CASE("values outside the domain are infinite") {
  CHECK(parse_penalty("power:p=1,nonneg=1").value(-1.0) == INFINITY);
  CHECK(parse_penalty("neg_power:p=1").value(0.0) == INFINITY);
  CHECK(parse_penalty("hellinger_self").value(1.5) == INFINITY);
  CHECK(parse_penalty("zero").value(-1e9) == 0.0);
}
