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

#pragma once

// JSON problem files and JSON-lines iterate traces.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "bregvar/monotone.hpp"
#include "bregvar/solvers.hpp"

namespace bregvar {

using Json = nlohmann::json;

using Problem = std::variant<PpaProblem, FeasibilityProblem>;

// Schema errors of any kind surface as InputError.
Problem parse_problem(const Json& j, const std::string& default_id = "problem");
Problem load_problem(const std::filesystem::path& path);

const DistanceSchedule& problem_schedule(const Problem& p);
const std::vector<Vector>& problem_certified(const Problem& p);
const std::string& problem_id(const Problem& p);

DistanceSchedule parse_schedule(const Json& j, std::size_t dim,
                                std::size_t default_horizon);
ScalarPenalty parse_penalty_json(const Json& j);
ConvexSet parse_set(const Json& j);
ControlMap parse_control(const Json& j, std::size_t m);
StopConfig parse_stop(const Json& j);

// One JSON object per line: n, kernel, x, w, eta, and when present
// step_distance, objective, gamma, set (1-based), residual. Record 0 also
// names the solver and problem; the last record carries the halt reason.
void write_trace(std::ostream& out, const IterateTrace& trace);
// Throws InputError on an empty stream or malformed record.
IterateTrace read_trace(std::istream& in);

Json record_to_json(const TraceRecord& r, std::size_t n, KernelKind kernel);
Json certificate_to_json(const MonotoneCertificate& c);

}  // namespace bregvar
