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

#include "bregvar/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bregvar/catalog.hpp"
#include "bregvar/errors.hpp"
#include "bregvar/io.hpp"
#include "bregvar/monotone.hpp"
#include "bregvar/prox.hpp"
#include "bregvar/schedules.hpp"
#include "bregvar/solvers.hpp"

namespace bregvar {
namespace {

// Shortest round-trip form, always with a decimal point or exponent.
std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

Vector parse_vector(const std::string& text) {
  Vector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double x = 0.0;
    const char* b = item.data();
    const char* e = b + item.size();
    while (b < e && *b == ' ') ++b;
    auto [ptr, ec] = std::from_chars(b, e, x);
    if (ec != std::errc{} || ptr != e) {
      throw InputError("malformed vector '" + text + "'");
    }
    v.push_back(x);
  }
  if (v.empty()) throw InputError("empty vector");
  return v;
}

struct ProxEvalArgs {
  std::string kernel;
  std::string penalty;
  double gamma = 1.0;
  double xi = 0.0;
  bool numeric = false;
};

int cmd_prox_eval(const ProxEvalArgs& a, std::ostream& out, std::ostream& err) {
  try {
    const ScalarKernel k(parse_kernel(a.kernel));
    const ScalarPenalty phi = parse_penalty(a.penalty);
    const double eta = a.numeric ? prox_scalar_numeric(k, phi, a.gamma, a.xi)
                                 : prox_scalar(k, phi, a.gamma, a.xi);
    out << format_number(eta) << '\n';
    out << "residual " << format_number(optimality_residual(k, phi, a.gamma,
                                                             a.xi, eta))
        << '\n';
    return kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

Json schedule_report_json(const ScheduleReport& r) {
  Json j;
  j["schedule_valid"] = r.ok;
  j["n"] = r.n ? Json(*r.n) : Json();
  j["coordinate"] = r.i ? Json(*r.i) : Json();
  j["message"] = r.message;
  return j;
}

int cmd_solve(const std::string& problem_path, const std::string& trace_path,
              std::ostream& out, std::ostream& err) {
  std::optional<Problem> problem;
  try {
    problem = load_problem(problem_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  const ScheduleReport report = validate_schedule(problem_schedule(*problem));
  if (!report.ok) {
    out << schedule_report_json(report).dump() << '\n';
    err << "error: invalid schedule: " << report.message << '\n';
    return kExitInput;
  }

  IterateTrace trace;
  try {
    trace = std::visit(
        [](const auto& p) {
          if constexpr (std::is_same_v<std::decay_t<decltype(p)>, PpaProblem>) {
            return solve_ppa(p);
          } else {
            return solve_feasibility(p);
          }
        },
        *problem);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitNumerical;
  }

  if (!trace_path.empty()) {
    std::ofstream tf(trace_path, std::ios::binary);
    if (!tf) {
      err << "error: cannot write " << trace_path << '\n';
      return kExitInput;
    }
    write_trace(tf, trace);
  }

  const TraceRecord& last = trace.records.back();
  const double measure = last.residual     ? *last.residual
                         : last.step_distance ? *last.step_distance
                                              : 0.0;
  Json summary;
  summary["problem"] = trace.meta.problem_id;
  summary["iters"] = trace.size() - 1;
  summary["final_residual_or_step"] =
      std::isfinite(measure) ? Json(measure) : Json();
  summary["halt_reason"] = halt_reason_name(trace.meta.halt);
  Json x = Json::array();
  for (double v : last.x) x.push_back(std::isfinite(v) ? Json(v) : Json());
  summary["x"] = x;
  out << summary.dump() << '\n';
  return trace.meta.halt == HaltReason::Converged ? kExitOk : kExitNumerical;
}

int cmd_validate_catalog(std::uint64_t seed, int draws, std::ostream& out,
                         std::ostream& err) {
  try {
    const auto rows = audit_catalog(seed, draws);
    out << audit_to_csv(rows);
    for (const auto& r : rows) {
      if (r.status == ValidationStatus::Unvalidated) return kExitVerdictFalse;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

struct CheckTraceArgs {
  std::string trace;
  std::vector<std::string> targets;
  std::string problem;
  std::optional<double> budget;
};

int cmd_check_trace(const CheckTraceArgs& a, std::ostream& out,
                    std::ostream& err) {
  IterateTrace trace;
  std::vector<Vector> targets;
  try {
    std::ifstream in(a.trace);
    if (!in) throw InputError("cannot open " + a.trace);
    trace = read_trace(in);
    for (const auto& t : a.targets) targets.push_back(parse_vector(t));
    if (!a.problem.empty()) {
      const Problem p = load_problem(a.problem);
      for (const auto& c : problem_certified(p)) targets.push_back(c);
    }
    if (targets.empty()) throw InputError("no targets given");
    for (const auto& t : targets) {
      if (t.size() != trace.records[0].x.size()) {
        throw InputError("target dimension does not match the trace");
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  const double budget =
      a.budget ? *a.budget : 1e-8 * double(trace.size() - 1);
  const MonotoneCertificate c =
      check_stationary_quasi_monotone(trace, targets, budget);
  out << certificate_to_json(c).dump() << '\n';
  return c.verdict ? kExitOk : kExitVerdictFalse;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Variable Bregman distance proximal and projection toolkit",
               "bregvar"};
  app.require_subcommand(1);

  ProxEvalArgs pe;
  auto* prox = app.add_subcommand("prox-eval", "Evaluate a scalar D-prox");
  prox->add_option("--kernel", pe.kernel, "Kernel name")->required();
  prox->add_option("--penalty", pe.penalty, "Penalty, e.g. scaled_burg:gamma=0.5")
      ->required();
  prox->add_option("--gamma", pe.gamma, "Step size")->capture_default_str();
  prox->add_option("--xi", pe.xi, "Point to evaluate at")->required();
  prox->add_flag("--numeric", pe.numeric, "Skip the closed-form catalog");

  std::string problem_path, trace_path;
  auto* solve = app.add_subcommand("solve", "Run a problem file");
  solve->add_option("problem", problem_path, "Problem JSON")->required();
  solve->add_option("--trace", trace_path, "JSON-lines trace output");

  std::uint64_t seed = 42;
  int draws = 200;
  auto* cat = app.add_subcommand("validate-catalog",
                                 "Audit closed forms against the oracle");
  cat->add_option("--seed", seed, "Random seed")->capture_default_str();
  cat->add_option("--draws", draws, "Draws per entry")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CheckTraceArgs ct;
  double budget = 0.0;
  auto* check = app.add_subcommand("check-trace",
                                   "Certify quasi-monotonicity of a trace");
  check->add_option("trace", ct.trace, "JSON-lines trace")->required();
  check->add_option("--target", ct.targets,
                    "Target point, comma separated (repeatable)");
  check->add_option("--problem", ct.problem,
                    "Problem JSON whose certified_solution gives targets");
  auto* budget_opt =
      check->add_option("--budget", budget, "Slack budget (default 1e-8 N)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  if (prox->parsed()) return cmd_prox_eval(pe, out, err);
  if (solve->parsed()) return cmd_solve(problem_path, trace_path, out, err);
  if (cat->parsed()) return cmd_validate_catalog(seed, draws, out, err);
  if (*budget_opt) ct.budget = budget;
  return cmd_check_trace(ct, out, err);
}

}  // namespace bregvar
