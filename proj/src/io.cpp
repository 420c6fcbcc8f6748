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

#include "bregvar/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "bregvar/errors.hpp"

namespace bregvar {
namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing key \"") + key + "\"");
  }
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

// null stands for an infinite bound or a non-finite trace value.
double number_or(const Json& j, double if_null, const char* what) {
  if (j.is_null()) return if_null;
  return number(j, what);
}

Vector vec(const Json& j, const char* what, double if_null = kInf) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  Vector v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(number_or(e, if_null, what));
  return v;
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InputError(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::vector<std::size_t> one_based(const Json& j, std::size_t m,
                                   const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& e : j) {
    const std::size_t k = count(e, what);
    if (k < 1 || k > m) {
      throw InputError(std::string(what) + ": set index out of range");
    }
    out.push_back(k - 1);
  }
  return out;
}

std::string kind_of(const Json& j, const char* fallback) {
  if (!j.contains("kind")) return fallback;
  if (!j.at("kind").is_string()) throw InputError("\"kind\" must be a string");
  return j.at("kind").get<std::string>();
}

std::vector<Vector> certified_list(const Json& j) {
  if (!j.contains("certified_solution")) return {};
  const Json& c = j.at("certified_solution");
  if (!c.is_array()) throw InputError("certified_solution must be an array");
  if (!c.empty() && c.front().is_array()) {
    std::vector<Vector> out;
    for (const auto& v : c) out.push_back(vec(v, "certified_solution"));
    return out;
  }
  return {vec(c, "certified_solution")};
}

double smallest_weight(const WeightSpec& w, std::size_t horizon) {
  switch (w.kind) {
    case WeightKind::Constant:
      return *std::min_element(w.values.begin(), w.values.end());
    case WeightKind::GeometricDecay:
      // base + amplitude * ratio^n is monotone in n.
      if (horizon <= 1) return w.base + w.amplitude;
      return std::min(w.base + w.amplitude,
                      w.base + w.amplitude *
                                   std::pow(w.ratio, double(horizon - 1)));
    case WeightKind::Explicit: {
      double lo = kInf;
      for (const auto& row : w.table) {
        for (double v : row) lo = std::min(lo, v);
      }
      return lo;
    }
  }
  return 1.0;
}

std::optional<double> opt_number(const Json& v) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return v.get<double>();
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(); }

Json vec_json(const Vector& v) {
  Json a = Json::array();
  for (double e : v) a.push_back(finite_or_null(e));
  return a;
}

Problem parse_problem_impl(const Json& j, const std::string& default_id) {
  if (!j.is_object()) throw InputError("problem must be a JSON object");
  const Json& type = require(j, "type");
  if (!type.is_string()) throw InputError("\"type\" must be a string");
  const Vector x0 = vec(require(j, "x0"), "x0");
  if (x0.empty()) throw InputError("x0 must be nonempty");
  const StopConfig stop = j.contains("stop") ? parse_stop(j.at("stop"))
                                              : StopConfig{};
  DistanceSchedule schedule =
      parse_schedule(require(j, "schedule"), x0.size(), stop.max_iter + 1);
  std::string id = default_id;
  if (j.contains("id")) id = j.at("id").get<std::string>();

  const std::string t = type.get<std::string>();
  if (t == "ppa") {
    const Json& pj = require(j, "penalties");
    if (!pj.is_array() || pj.empty()) {
      throw InputError("penalties must be a nonempty array");
    }
    std::vector<ScalarPenalty> penalties;
    for (const auto& e : pj) penalties.push_back(parse_penalty_json(e));
    if (penalties.size() == 1 && x0.size() > 1) {
      penalties.assign(x0.size(), penalties.front());
    }
    Vector gammas;
    if (j.contains("gammas")) {
      const Json& g = j.at("gammas");
      gammas = g.is_array() ? vec(g, "gammas") : Vector{number(g, "gammas")};
    }
    double tail = gammas.empty() ? 1.0 : gammas.back();
    if (j.contains("gamma_tail")) tail = number(j.at("gamma_tail"), "gamma_tail");
    PpaProblem p{std::move(id), std::move(schedule), std::move(penalties),
                 std::move(gammas), tail, x0, stop, certified_list(j)};
    validate_problem(p);
    return p;
  }
  if (t == "feasibility") {
    const Json& sj = require(j, "sets");
    if (!sj.is_array() || sj.empty()) {
      throw InputError("sets must be a nonempty array");
    }
    std::vector<ConvexSet> sets;
    for (const auto& e : sj) sets.push_back(parse_set(e));
    ControlMap control = j.contains("control")
                             ? parse_control(j.at("control"), sets.size())
                             : ControlMap::cyclic(sets.size());
    FeasibilityProblem p{std::move(id), std::move(schedule), std::move(sets),
                         std::move(control), x0, stop, certified_list(j)};
    validate_problem(p);
    return p;
  }
  throw InputError("unknown problem type \"" + t + "\"");
}

}  // namespace

DistanceSchedule parse_schedule(const Json& j, std::size_t dim,
                                std::size_t default_horizon) {
  if (!j.is_object()) throw InputError("schedule must be an object");
  const Json& kj = require(j, "kernel");
  if (!kj.is_string()) throw InputError("schedule.kernel must be a string");
  const KernelKind kernel = parse_kernel(kj.get<std::string>());

  WeightSpec w;
  if (j.contains("weights")) {
    const Json& wj = j.at("weights");
    if (wj.is_array()) {
      w.values = vec(wj, "weights");
    } else {
      const std::string kind = kind_of(wj, "constant");
      if (kind == "constant") {
        w.kind = WeightKind::Constant;
        const Json& v = require(wj, "values");
        w.values = v.is_array() ? vec(v, "weights.values")
                                : Vector{number(v, "weights.values")};
      } else if (kind == "geometric_decay") {
        w.kind = WeightKind::GeometricDecay;
        w.base = number(require(wj, "base"), "weights.base");
        w.amplitude = number(require(wj, "amplitude"), "weights.amplitude");
        w.ratio = number(require(wj, "ratio"), "weights.ratio");
      } else if (kind == "explicit") {
        w.kind = WeightKind::Explicit;
        const Json& tj = require(wj, "table");
        if (!tj.is_array()) throw InputError("weights.table must be an array");
        for (const auto& row : tj) {
          Vector r = row.is_array() ? vec(row, "weights.table")
                                    : Vector{number(row, "weights.table")};
          if (r.size() == 1 && dim > 1) r.assign(dim, r.front());
          if (r.size() != dim) {
            throw InputError("weights.table rows must have 1 or m entries");
          }
          w.table.push_back(std::move(r));
        }
      } else {
        throw InputError("unknown weights kind \"" + kind + "\"");
      }
    }
  }

  std::size_t horizon = default_horizon;
  if (j.contains("horizon")) horizon = count(j.at("horizon"), "horizon");

  Vector eta;
  if (j.contains("eta")) {
    const Json& ej = j.at("eta");
    if (ej.is_array()) {
      eta = vec(ej, "eta");
    } else if (ej.is_object()) {
      if (kind_of(ej, "geometric") != "geometric") {
        throw InputError("eta object must have kind \"geometric\"");
      }
      const double a = number(require(ej, "amplitude"), "eta.amplitude");
      const double r = number(require(ej, "ratio"), "eta.ratio");
      eta.resize(horizon);
      double term = a;
      for (auto& e : eta) {
        e = term;
        term *= r;
      }
    } else {
      throw InputError("eta must be an array or an object");
    }
  }

  const std::size_t cap =
      w.kind == WeightKind::Explicit ? std::min(horizon, w.table.size()) : horizon;
  const double alpha = j.contains("alpha") ? number(j.at("alpha"), "alpha")
                                           : smallest_weight(w, cap);
  std::optional<double> beta;
  if (j.contains("beta") && !j.at("beta").is_null()) {
    beta = number(j.at("beta"), "beta");
  }
  return DistanceSchedule(kernel, dim, std::move(w), std::move(eta), alpha,
                          beta, horizon);
}

ScalarPenalty parse_penalty_json(const Json& j) {
  if (j.is_string()) return parse_penalty(j.get<std::string>());
  if (!j.is_object()) throw InputError("penalty must be a string or an object");
  const Json& name = require(j, "name");
  if (!name.is_string()) throw InputError("penalty name must be a string");
  std::string text = name.get<std::string>();
  char sep = ':';
  for (const auto& [key, value] : j.items()) {
    if (key == "name") continue;
    std::ostringstream os;
    os.precision(17);
    if (value.is_boolean()) {
      os << (value.get<bool>() ? 1 : 0);
    } else {
      os << number(value, "penalty parameter");
    }
    text += sep + key + "=" + os.str();
    sep = ',';
  }
  return parse_penalty(text);
}

ConvexSet parse_set(const Json& j) {
  if (!j.is_object()) throw InputError("set must be an object");
  const Json& tj = require(j, "type");
  if (!tj.is_string()) throw InputError("set type must be a string");
  const std::string t = tj.get<std::string>();
  if (t == "hyperplane") {
    return HyperplaneSet{vec(require(j, "a"), "a"), number(require(j, "b"), "b")};
  }
  if (t == "halfspace") {
    return HalfspaceSet{vec(require(j, "a"), "a"), number(require(j, "b"), "b")};
  }
  if (t == "box") {
    return BoxSet{vec(require(j, "lo"), "lo", -kInf),
                  vec(require(j, "hi"), "hi", kInf)};
  }
  throw InputError("unknown set type \"" + t + "\"");
}

ControlMap parse_control(const Json& j, std::size_t m) {
  if (!j.is_object()) throw InputError("control must be an object");
  const std::string kind = kind_of(j, "cyclic");
  if (kind == "cyclic") return ControlMap::cyclic(m);
  if (kind == "quasi_cyclic") {
    auto pattern = one_based(require(j, "pattern"), m, "control.pattern");
    // Without explicit bounds every set must recur once per period.
    std::vector<std::size_t> bounds(m, pattern.size());
    if (j.contains("bounds")) {
      const Json& bj = j.at("bounds");
      if (!bj.is_array()) throw InputError("control.bounds must be an array");
      bounds.clear();
      for (const auto& b : bj) bounds.push_back(count(b, "control.bounds"));
    }
    return ControlMap::quasi_cyclic(std::move(pattern), std::move(bounds), m);
  }
  if (kind == "explicit") {
    return ControlMap::explicit_list(
        one_based(require(j, "sequence"), m, "control.sequence"), m);
  }
  throw InputError("unknown control kind \"" + kind + "\"");
}

StopConfig parse_stop(const Json& j) {
  if (!j.is_object()) throw InputError("stop must be an object");
  StopConfig s;
  if (j.contains("step_distance_tol")) {
    s.step_distance_tol = number(j.at("step_distance_tol"), "step_distance_tol");
  }
  if (j.contains("residual_tol")) {
    s.residual_tol = number(j.at("residual_tol"), "residual_tol");
  }
  if (j.contains("max_iter")) s.max_iter = count(j.at("max_iter"), "max_iter");
  return s;
}

Problem parse_problem(const Json& j, const std::string& default_id) {
  try {
    return parse_problem_impl(j, default_id);
  } catch (const Json::exception& e) {
    throw InputError(std::string("problem schema: ") + e.what());
  }
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return parse_problem(j, path.stem().string());
}

const DistanceSchedule& problem_schedule(const Problem& p) {
  return std::visit([](const auto& q) -> const DistanceSchedule& {
    return q.schedule;
  }, p);
}

const std::vector<Vector>& problem_certified(const Problem& p) {
  return std::visit([](const auto& q) -> const std::vector<Vector>& {
    return q.certified;
  }, p);
}

const std::string& problem_id(const Problem& p) {
  return std::visit([](const auto& q) -> const std::string& { return q.id; },
                    p);
}

Json record_to_json(const TraceRecord& r, std::size_t n, KernelKind kernel) {
  Json j;
  j["n"] = n;
  j["kernel"] = std::string(kernel_name(kernel));
  j["x"] = vec_json(r.x);
  j["w"] = vec_json(r.w);
  j["eta"] = r.eta;
  if (r.step_distance) j["step_distance"] = finite_or_null(*r.step_distance);
  if (r.objective) j["objective"] = finite_or_null(*r.objective);
  if (r.gamma) j["gamma"] = *r.gamma;
  if (r.set_index) j["set"] = *r.set_index + 1;
  if (r.residual) j["residual"] = finite_or_null(*r.residual);
  return j;
}

void write_trace(std::ostream& out, const IterateTrace& trace) {
  for (std::size_t n = 0; n < trace.size(); ++n) {
    Json j = record_to_json(trace.records[n], n, trace.kernel);
    if (n == 0) {
      j["solver"] = trace.meta.solver;
      j["problem"] = trace.meta.problem_id;
    }
    if (n + 1 == trace.size()) j["halt"] = halt_reason_name(trace.meta.halt);
    out << j.dump() << '\n';
  }
}

IterateTrace read_trace(std::istream& in) {
  IterateTrace trace;
  std::string line;
  std::size_t lineno = 0;
  try {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const Json j = Json::parse(line);
      const std::string where = "trace line " + std::to_string(lineno);
      if (!j.is_object()) throw InputError(where + ": not an object");
      if (count(require(j, "n"), "n") != trace.size()) {
        throw InputError(where + ": records must be numbered 0, 1, 2, ...");
      }
      const KernelKind k =
          parse_kernel(require(j, "kernel").get<std::string>());
      if (trace.records.empty()) {
        trace.kernel = k;
        if (j.contains("solver")) trace.meta.solver = j.at("solver");
        if (j.contains("problem")) trace.meta.problem_id = j.at("problem");
      } else if (k != trace.kernel) {
        throw InputError(where + ": kernel changes mid-trace");
      }
      const double nan = std::numeric_limits<double>::quiet_NaN();
      TraceRecord r;
      r.x = vec(require(j, "x"), "x", nan);
      r.w = vec(require(j, "w"), "w", nan);
      if (r.x.empty() || r.x.size() != r.w.size()) {
        throw InputError(where + ": x and w must have the same nonzero size");
      }
      if (!trace.records.empty() && r.x.size() != trace.records[0].x.size()) {
        throw InputError(where + ": dimension changes mid-trace");
      }
      r.eta = j.contains("eta") ? number(j.at("eta"), "eta") : 0.0;
      if (j.contains("step_distance")) r.step_distance = opt_number(j.at("step_distance"));
      if (j.contains("objective")) r.objective = opt_number(j.at("objective"));
      if (j.contains("gamma")) r.gamma = number(j.at("gamma"), "gamma");
      if (j.contains("set")) {
        const std::size_t s = count(j.at("set"), "set");
        if (s < 1) throw InputError(where + ": set index is 1-based");
        r.set_index = s - 1;
      }
      if (j.contains("residual")) r.residual = opt_number(j.at("residual"));
      if (j.contains("halt")) {
        const std::string h = j.at("halt").get<std::string>();
        bool known = false;
        for (auto reason : {HaltReason::Running, HaltReason::Converged,
                            HaltReason::MaxIter, HaltReason::NumericalFailure}) {
          if (h == halt_reason_name(reason)) {
            trace.meta.halt = reason;
            known = true;
          }
        }
        if (!known) throw InputError(where + ": unknown halt reason " + h);
      }
      trace.records.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw InputError("trace line " + std::to_string(lineno) + ": " + e.what());
  }
  if (trace.records.empty()) throw InputError("empty trace");
  return trace;
}

Json certificate_to_json(const MonotoneCertificate& c) {
  Json j;
  j["verdict"] = c.verdict;
  j["steps"] = c.eps.size();
  j["sum_eps"] = finite_or_null(c.sum_eps);
  j["budget"] = c.budget;
  j["worst_step"] = c.worst_step ? Json(*c.worst_step) : Json();
  j["targets"] = Json::array();
  for (const auto& t : c.targets) j["targets"].push_back(vec_json(t));
  j["eta"] = vec_json(c.eta);
  j["eps"] = vec_json(c.eps);
  return j;
}

}  // namespace bregvar
