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
#include <sstream>

#include "bregvar/errors.hpp"
#include "bregvar/io.hpp"

using namespace bregvar;

namespace {

Json base_ppa() {
  return Json::parse(R"({
    "type": "ppa",
    "schedule": {"kernel": "boltzmann_shannon"},
    "penalties": ["kl_to_target:c=1", {"name": "kl_to_target", "c": 2}],
    "gammas": [1, 0.5],
    "x0": [3, 3],
    "stop": {"max_iter": 7},
    "certified_solution": [1, 2]
  })");
}

}  // namespace

TEST_CASE("ppa problem parses") {
  const Problem p = parse_problem(base_ppa(), "demo");
  const auto& q = std::get<PpaProblem>(p);
  CHECK(q.id == "demo");
  CHECK(q.penalties.size() == 2);
  CHECK(q.penalties[1].params().c == 2.0);
  CHECK(q.gamma_at(0) == 1.0);
  CHECK(q.gamma_at(5) == 0.5);
  CHECK(q.stop.max_iter == 7);
  CHECK(q.schedule.horizon() == 8);
  CHECK(q.certified == std::vector<Vector>{{1.0, 2.0}});
}

TEST_CASE("schedule variants") {
  const Json geo = Json::parse(R"({"kernel": "burg",
      "weights": {"kind": "geometric_decay", "base": 1, "amplitude": 1, "ratio": 0.5},
      "eta": {"kind": "geometric", "amplitude": 1, "ratio": 0.5}, "horizon": 12})");
  const auto s = parse_schedule(geo, 2, 100);
  CHECK(s.horizon() == 12);
  CHECK(s.eta_at(3) == 0.125);
  CHECK(s.weights_at(1) == Vector{1.5, 1.5});
  CHECK(s.alpha() == doctest::Approx(1.0 + std::pow(0.5, 11)));
  CHECK(validate_schedule(s).ok);

  const Json ex = Json::parse(R"({"kernel": "energy",
      "weights": {"kind": "explicit", "table": [[1], [2, 3]]}, "eta": [0.5]})");
  const auto e = parse_schedule(ex, 2, 100);
  CHECK(e.horizon() == 2);
  CHECK(e.weights_at(0) == Vector{1.0, 1.0});
  CHECK_FALSE(validate_schedule(e).ok);
}

TEST_CASE("feasibility problem parses") {
  const Json j = Json::parse(R"({
    "type": "feasibility",
    "schedule": {"kernel": "energy"},
    "sets": [{"type": "hyperplane", "a": [1, 1], "b": 1},
             {"type": "box", "lo": [null, 0], "hi": [1, null]},
             {"type": "halfspace", "a": [1, 0], "b": 0.5}],
    "control": {"kind": "explicit", "sequence": [1, 2, 3, 1]},
    "x0": [0, 0],
    "certified_solution": [[0.5, 0.5], [0.25, 0.75]]
  })");
  const auto q = std::get<FeasibilityProblem>(parse_problem(j));
  CHECK(q.sets.size() == 3);
  const auto& box = std::get<BoxSet>(q.sets[1]);
  CHECK(box.lo[0] == -kInf);
  CHECK(box.hi[1] == kInf);
  CHECK(q.control.index(2) == 2);
  CHECK(q.certified.size() == 2);
  CHECK(q.stop.residual_tol == 1e-12);
}

TEST_CASE("schema errors are input errors") {
  auto bad = [](auto mutate) {
    Json j = base_ppa();
    mutate(j);
    CHECK_THROWS_AS(parse_problem(j), InputError);
  };
  bad([](Json& j) { j.erase("type"); });
  bad([](Json& j) { j["type"] = "qp"; });
  bad([](Json& j) { j["x0"] = "oops"; });
  bad([](Json& j) { j["x0"] = Json::array({-1, 1}); });
  bad([](Json& j) { j["schedule"]["kernel"] = "gauss"; });
  bad([](Json& j) { j["penalties"] = Json::array({"nope"}); });
  bad([](Json& j) { j["penalties"] = Json::array({"zero", "zero", "zero"}); });
  bad([](Json& j) { j["stop"]["max_iter"] = -3; });
  bad([](Json& j) { j["gammas"] = Json::array({0}); });
  bad([](Json& j) { j["schedule"]["weights"] = {{"kind", "spiral"}}; });
  bad([](Json& j) { j["certified_solution"] = Json::array({1, 2, 3}); });
}

TEST_CASE("trace round trip") {
  IterateTrace t;
  t.kernel = KernelKind::FermiDirac;
  t.meta.solver = "feasibility";
  t.meta.problem_id = "rt";
  t.meta.halt = HaltReason::Converged;
  TraceRecord a;
  a.x = {0.1, 0.2};
  a.w = {1.0, 2.0};
  a.eta = 0.25;
  a.residual = 0.125;
  TraceRecord b = a;
  b.x = {0.3, 1.0 / 3.0};
  b.step_distance = 1e-17;
  b.set_index = 1;
  b.gamma = 2.0;
  b.objective = -4.5;
  t.records = {a, b};

  std::stringstream ss;
  write_trace(ss, t);
  const std::string text = ss.str();
  CHECK(text.find("\"set\":2") != std::string::npos);
  CHECK(text.find("\"halt\":\"converged\"") != std::string::npos);

  const IterateTrace u = read_trace(ss);
  CHECK(u.kernel == KernelKind::FermiDirac);
  CHECK(u.meta.solver == "feasibility");
  REQUIRE(u.size() == 2);
  CHECK(u.records[1].x == b.x);
  CHECK(u.records[1].set_index == 1u);
  CHECK(*u.records[1].step_distance == 1e-17);
  CHECK(*u.records[1].objective == -4.5);
  CHECK(u.records[0].eta == 0.25);

  std::stringstream again;
  write_trace(again, u);
  CHECK(again.str() == text);
}

TEST_CASE("bad traces") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_trace(empty), InputError);
  std::istringstream junk("{not json}\n");
  CHECK_THROWS_AS(read_trace(junk), InputError);
  std::istringstream gap(
      R"({"n":0,"kernel":"energy","x":[1],"w":[1]})"
      "\n"
      R"({"n":2,"kernel":"energy","x":[1],"w":[1]})"
      "\n");
  CHECK_THROWS_AS(read_trace(gap), InputError);
  std::istringstream dims(R"({"n":0,"kernel":"energy","x":[1,2],"w":[1]})");
  CHECK_THROWS_AS(read_trace(dims), InputError);
}

TEST_CASE("shipped problems load") {
  for (const char* name : {"ppa_kl_target", "ppa_kl_target_variable",
                           "ppa_burg_divergent", "feas_energy_two_hyperplanes",
                           "feas_bs_two_hyperplanes", "feas_bs_three_sets",
                           "schedule_invalid"}) {
    CAPTURE(name);
    const auto path = std::string(BREGVAR_PROBLEMS_DIR) + "/" + name + ".json";
    const Problem p = load_problem(path);
    CHECK(problem_id(p) == name);
  }
}
