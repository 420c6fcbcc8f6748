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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bregvar/catalog.hpp"
#include "bregvar/cli.hpp"
#include "bregvar/io.hpp"
#include "bregvar/lambert.hpp"
#include "bregvar/oracle.hpp"
#include "bregvar/prox.hpp"
#include "bregvar/solvers.hpp"

using namespace bregvar;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string problem_path(const std::string& name) {
  return std::string(BREGVAR_PROBLEMS_DIR) + "/" + name + ".json";
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

IterateTrace solve_any(const Problem& p) {
  return std::visit(
      [](const auto& q) {
        if constexpr (std::is_same_v<std::decay_t<decltype(q)>, PpaProblem>) {
          return solve_ppa(q);
        } else {
          return solve_feasibility(q);
        }
      },
      p);
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "bregvar");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  return code;
}

double max_dev(const Vector& a, const Vector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

const char* kShipped[] = {"ppa_kl_target", "ppa_kl_target_variable",
                          "feas_energy_two_hyperplanes", "feas_bs_two_hyperplanes",
                          "feas_bs_three_sets"};

Outcome catalog_audit() {
  const auto t0 = Clock::now();
  const auto rows = audit_catalog(42, 200);
  const double secs = seconds_since(t0);
  Outcome o;
  double worst = 0.0;
  for (const auto& r : rows) {
    worst = std::max(worst, r.max_abs_err);
    if (r.status == ValidationStatus::Unvalidated || r.draws < 200 ||
        !(r.max_abs_err <= 1e-8)) {
      o.pass = false;
    }
    for (const char* must : {"ex3_i", "ex1_iii_p1", "ex1_iii_p"}) {
      if (r.entry_id == must && r.status != ValidationStatus::Validated) o.pass = false;
    }
  }
  if (secs > 60.0) o.pass = false;
  o.detail = std::to_string(rows.size()) + " entries, max_abs_err " +
             fmt("%.2e", worst) + ", " + fmt("%.1f s", secs);
  return o;
}

Outcome lambert() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double z = std::pow(10.0, -12.0 + 24.0 * k / 9999.0);
    const double w = lambert_w0(z).w;
    worst = std::max(worst, std::abs(w * std::exp(w) - z) / z);
  }
  const double w0 = lambert_w0(0.0).w;
  const double we = lambert_w0(std::numbers::e).w;
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = worst <= 1e-12 && w0 == 0.0 && std::abs(we - 1.0) <= 1e-14 && secs <= 5.0;
  o.detail = "max rel residual " + fmt("%.2e", worst) + ", |W(e)-1| " +
             fmt("%.1e", std::abs(we - 1.0)) + ", " + fmt("%.2f s", secs);
  return o;
}

Outcome kernel_suite() {
  const KernelKind kinds[] = {KernelKind::Energy, KernelKind::BoltzmannShannon,
                              KernelKind::FermiDirac, KernelKind::Burg,
                              KernelKind::Hellinger};
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&](KernelKind k) {
    switch (k) {
      case KernelKind::Energy: return -10.0 + 20.0 * u(rng);
      case KernelKind::FermiDirac: return 0.01 + 0.98 * u(rng);
      case KernelKind::Hellinger: return -0.99 + 1.98 * u(rng);
      default: return std::exp(-4.0 + 7.0 * u(rng));
    }
  };
  double fd_err = 0.0, inv_err = 0.0, three_err = 0.0, min_d = 0.0;
  for (auto k : kinds) {
    for (int t = 0; t < 1000; ++t) {
      const Vector w{0.5 + 2.5 * u(rng), 0.5 + 2.5 * u(rng)};
      const SeparableLegendre f(ScalarKernel(k), w);
      const Vector x{draw(k), draw(k)}, y{draw(k), draw(k)}, z{draw(k), draw(k)};
      const Vector g = f.gradient(x);
      const Vector fd = finite_diff_gradient(f, x, 1e-6);
      const Vector back = f.gradient_conjugate(g);
      for (int i = 0; i < 2; ++i) {
        fd_err = std::max(fd_err, std::abs(fd[i] - g[i]) / std::max(1.0, std::abs(g[i])));
        inv_err = std::max(inv_err, std::abs(back[i] - x[i]) / std::max(1.0, std::abs(x[i])));
      }
      const double dxy = bregman_distance(f, x, y);
      const double dyz = bregman_distance(f, y, z);
      const double dxz = bregman_distance(f, x, z);
      min_d = std::min({min_d, dxy, dyz, dxz});
      const Vector gy = f.gradient(y), gz = f.gradient(z);
      double inner = 0.0;
      for (int i = 0; i < 2; ++i) inner += (x[i] - y[i]) * (gz[i] - gy[i]);
      const double scale = 1.0 + std::abs(dxy) + std::abs(dyz) + std::abs(dxz);
      three_err = std::max(three_err, std::abs(dxz - dxy - dyz + inner) / scale);
    }
  }
  Outcome o;
  o.pass = fd_err <= 1e-6 && inv_err <= 1e-10 && three_err <= 1e-10 && min_d >= 0.0;
  o.detail = "grad vs FD " + fmt("%.1e", fd_err) + ", inverse " + fmt("%.1e", inv_err) +
             ", three-point " + fmt("%.1e", three_err) + ", min D " + fmt("%.1e", min_d);
  return o;
}

Outcome pythagoras() {
  Outcome o;
  std::size_t steps = 0, checks = 0;
  double worst = -INFINITY;
  for (const char* name : kShipped) {
    const Problem p = load_problem(problem_path(name));
    const IterateTrace t = solve_any(p);
    for (std::size_t n = 0; n + 1 < t.size(); ++n) {
      ++steps;
      for (const auto& x : problem_certified(p)) {
        const auto c = pythagoras_check(t.f_at(n), x, t.records[n].x, t.records[n + 1].x);
        worst = std::max(worst, c.lhs - c.rhs);
        ++checks;
        if (!c.holds) o.pass = false;
      }
    }
  }
  o.detail = std::to_string(steps) + " steps, " + std::to_string(checks) +
             " checks, max lhs-rhs " + fmt("%.2e", worst);
  return o;
}

Outcome ppa_convergence() {
  const auto p = std::get<PpaProblem>(load_problem(problem_path("ppa_kl_target")));
  const IterateTrace t = solve_ppa(p);
  const Vector c{1.0, 0.5, 2.0};
  const std::size_t n = t.size() - 1;
  const double err = max_dev(t.records.back().x, c);
  const auto dec = check_objective_nonincreasing(t, 1e-10);
  const auto cert = check_stationary_quasi_monotone(t, {c}, 1e-8 * double(n));
  Outcome o;
  o.pass = n <= 40 && err <= 1e-6 && dec.ok && cert.verdict &&
           t.meta.halt == HaltReason::Converged;
  o.detail = "N=" + std::to_string(n) + ", |x_N-c| " + fmt("%.2e", err) +
             ", max objective increase " + fmt("%.1e", dec.max_increase) +
             ", sum eps " + fmt("%.1e", cert.sum_eps);
  return o;
}

Outcome variable_schedule() {
  const auto p = std::get<PpaProblem>(load_problem(problem_path("ppa_kl_target_variable")));
  const bool valid = validate_schedule(p.schedule).ok;
  const IterateTrace t = solve_ppa(p);
  const Vector c{1.0, 0.5, 2.0};
  const double err = max_dev(t.records.back().x, c);
  const auto cert =
      check_stationary_quasi_monotone(t, {c}, 1e-8 * double(t.size() - 1));

  // w = 1 and eta = 0 written out explicitly vs the fixed distance.
  const auto fixed = std::get<PpaProblem>(load_problem(problem_path("ppa_kl_target")));
  WeightSpec unit;
  unit.kind = WeightKind::Explicit;
  unit.table.assign(fixed.stop.max_iter + 1, Vector(3, 1.0));
  PpaProblem same = fixed;
  same.schedule = DistanceSchedule(KernelKind::BoltzmannShannon, 3, unit,
                                   Vector(fixed.stop.max_iter + 1, 0.0), 1.0,
                                   std::nullopt, fixed.stop.max_iter + 1);
  const IterateTrace a = solve_ppa(fixed);
  const IterateTrace b = solve_ppa(same);
  double step_dev = a.size() == b.size() ? 0.0 : INFINITY;
  for (std::size_t n = 0; n < std::min(a.size(), b.size()); ++n) {
    step_dev = std::max(step_dev, max_dev(a.records[n].x, b.records[n].x));
  }
  Outcome o;
  o.pass = valid && err <= 1e-6 && cert.verdict &&
           t.meta.halt == HaltReason::Converged && step_dev <= 1e-12;
  o.detail = std::string("schedule ") + (valid ? "valid" : "INVALID") +
             ", |x_N-c| " + fmt("%.2e", err) + ", sum eps " + fmt("%.1e", cert.sum_eps) +
             ", unit-weight deviation " + fmt("%.1e", step_dev);
  return o;
}

Outcome feasibility() {
  Outcome o;
  // Energy pair: x1 - x2 = 0, x2 = 0.5; the direct 2x2 solve.
  const auto e = std::get<FeasibilityProblem>(
      load_problem(problem_path("feas_energy_two_hyperplanes")));
  const auto& h1 = std::get<HyperplaneSet>(e.sets[0]);
  const auto& h2 = std::get<HyperplaneSet>(e.sets[1]);
  const double det = h1.a[0] * h2.a[1] - h1.a[1] * h2.a[0];
  const Vector direct{(h1.b * h2.a[1] - h1.a[1] * h2.b) / det,
                      (h1.a[0] * h2.b - h1.b * h2.a[0]) / det};
  const IterateTrace te = solve_feasibility(e);
  const double e_res = *te.records.back().residual;
  const double e_dev = max_dev(te.records.back().x, direct);
  if (!(te.meta.halt == HaltReason::Converged && te.size() - 1 <= 500 &&
        e_res <= 1e-8 && e_dev <= 1e-6)) {
    o.pass = false;
  }

  const auto bs = std::get<FeasibilityProblem>(
      load_problem(problem_path("feas_bs_two_hyperplanes")));
  const IterateTrace tb = solve_feasibility(bs);
  const double b_dev = max_dev(tb.records.back().x, {2.0 / 3.0, 1.0 / 3.0});
  if (!(tb.meta.halt == HaltReason::Converged && b_dev <= 1e-6)) o.pass = false;

  std::size_t cuts = 0;
  for (const char* name : {"feas_energy_two_hyperplanes", "feas_bs_two_hyperplanes",
                           "feas_bs_three_sets"}) {
    const auto p = std::get<FeasibilityProblem>(load_problem(problem_path(name)));
    const IterateTrace t = solve_feasibility(p);
    for (std::size_t n = 0; n + 1 < t.size(); ++n) {
      for (const auto& z : p.certified) {
        ++cuts;
        if (!hf_halfspace_contains(t.f_at(n), t.records[n].x, t.records[n + 1].x, z)) {
          o.pass = false;
        }
      }
    }
  }
  o.detail = "energy: " + std::to_string(te.size() - 1) + " iters, residual " +
             fmt("%.1e", e_res) + ", vs direct " + fmt("%.1e", e_dev) +
             "; entropic: vs (2/3,1/3) " + fmt("%.1e", b_dev) + "; " +
             std::to_string(cuts) + " H^f containments";
  return o;
}

Outcome control_maps() {
  Outcome o;
  std::size_t windows = 0;
  for (std::size_t m = 1; m <= 25; ++m) {
    const auto c = ControlMap::cyclic(m);
    const std::size_t horizon = 10 * m;
    // Exhaustive: every j, every start n with a full window in the horizon.
    for (std::size_t j = 0; j < m; ++j) {
      if (c.window(j) != m) o.pass = false;
      for (std::size_t n = 0; n + m <= horizon; ++n) {
        bool seen = false;
        for (std::size_t k = n; k < n + m; ++k) seen = seen || control_index(c, k) == j;
        ++windows;
        if (!seen) o.pass = false;
      }
    }
    if (!check_control_windows(c, horizon).ok) o.pass = false;
  }
  o.detail = "cyclic(m), m = 1..25, " + std::to_string(windows) + " windows";
  return o;
}

Outcome negative_controls() {
  Outcome o;
  const auto tmp = std::filesystem::temp_directory_path();
  const std::string trace = (tmp / "bregvar_acceptance_kl.jsonl").string();
  const std::string bad = (tmp / "bregvar_acceptance_kl_bad.jsonl").string();
  const int solved = cli({"solve", problem_path("ppa_kl_target"), "--trace", trace});
  std::vector<std::string> lines;
  {
    std::ifstream in(trace);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
  }
  int corrupt = -1;
  if (lines.size() > 4) {
    Json rec = Json::parse(lines[3]);
    rec["x"] = Json::array({30.0, 0.001, 7.0});
    lines[3] = rec.dump();
    std::ofstream out(bad);
    for (const auto& l : lines) out << l << '\n';
    out.close();
    corrupt = cli({"check-trace", bad, "--problem", problem_path("ppa_kl_target")});
  }

  const std::string never = (tmp / "bregvar_acceptance_invalid.jsonl").string();
  std::filesystem::remove(never);
  const int invalid = cli({"solve", problem_path("schedule_invalid"), "--trace", never});
  const bool untouched = !std::filesystem::exists(never);

  std::string summary;
  const int divergent = cli({"solve", problem_path("ppa_burg_divergent")}, &summary);
  const std::string reason = Json::parse(summary).value("halt_reason", "");

  o.pass = solved == 0 && corrupt == 1 && invalid == 2 && untouched &&
           divergent == 3 && reason == "max_iter";
  o.detail = "corrupted trace exit " + std::to_string(corrupt) +
             ", invalid schedule exit " + std::to_string(invalid) +
             (untouched ? " (no trace written)" : " (trace written!)") +
             ", divergent Burg exit " + std::to_string(divergent) + " halt " + reason;
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"catalog audit", catalog_audit},
      {"lambert W", lambert},
      {"kernel suite", kernel_suite},
      {"pythagoras on solver steps", pythagoras},
      {"PPA convergence", ppa_convergence},
      {"variable-schedule PPA", variable_schedule},
      {"feasibility", feasibility},
      {"control maps", control_maps},
      {"negative controls", negative_controls},
  };
  int failed = 0;
  int id = 0;
  for (const auto& [name, fn] : criteria) {
    ++id;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", id - failed, id);
  return failed == 0 ? 0 : 1;
}
