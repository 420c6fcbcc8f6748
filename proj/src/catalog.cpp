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

#include "bregvar/catalog.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "bregvar/errors.hpp"
#include "bregvar/lambert.hpp"
#include "bregvar/oracle.hpp"
#include "bregvar/roots.hpp"

namespace bregvar {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

bool unit_step(const ScalarPenalty&, double gamma) { return gamma == 1.0; }
bool any_step(const ScalarPenalty&, double) { return true; }

// Positive root of an increasing g on (lo, inf) starting at x0.
double solve_increasing(const std::function<double(double)>& g,
                        const std::function<double(double)>& dg, double x0,
                        double lo) {
  auto br = roots::bracket_increasing(g, x0, lo, kInf);
  if (!br) throw NumericalFailure("catalog: implicit equation not bracketed");
  auto r = roots::safeguarded_newton(
      [&](double x) { return std::pair{g(x), dg(x)}; }, *br, 0.0);
  if (!r.converged) throw NumericalFailure("catalog: implicit solve failed");
  return r.x;
}

// pp: the penalty exponent; returns eta solving eta^p (lead*eta - xi) = rhs
// on eta > xi / lead.
double solve_inverse_power(double lead, double p, double xi, double rhs) {
  if (rhs == 0.0) return xi / lead;
  auto g = [&](double e) { return std::pow(e, p) * (lead * e - xi) - rhs; };
  auto dg = [&](double e) {
    return (p + 1.0) * lead * std::pow(e, p) - p * xi * std::pow(e, p - 1.0);
  };
  return solve_increasing(g, dg, xi / lead * 2.0, xi / lead);
}

std::vector<ProxCatalogEntry> build_catalog() {
  std::vector<ProxCatalogEntry> c;
  const auto bs = KernelKind::BoltzmannShannon;
  const auto fd = KernelKind::FermiDirac;
  const auto burg = KernelKind::Burg;
  const auto hel = KernelKind::Hellinger;

  // Boltzmann-Shannon kernel, theta'(xi) = ln xi.
  c.push_back({
      "ex1_ii", bs, PenaltyKind::LinearEntropy, any_step,
      [](const ScalarPenalty& ph, double g, double xi) {
        return std::exp((std::log(xi) + g * (ph.params().omega - 1.0)) /
                        (1.0 + g));
      },
      [](const ScalarPenalty& ph, double g, double xi) {
        return std::pow(xi, (ph.params().omega - 1.0) / (g + 1.0));
      },
      false, ValidationStatus::PaperTypoCorrected,
      "printed xi^((omega-1)/(gamma+1)); shipped xi^(1/(1+gamma)) "
      "exp(gamma(omega-1)/(1+gamma)) from (1+gamma) ln eta = ln xi + "
      "gamma(omega-1)",
      [bs](Rng& r) {
        return CatalogDraw{ScalarKernel(bs),
                           ScalarPenalty::linear_entropy(uniform(r, -2, 2)),
                           log_uniform(r, 0.1, 5), log_uniform(r, 0.05, 20)};
      },
  });

  c.push_back({
      "ex1_iii_p1", bs, PenaltyKind::Power,
      [](const ScalarPenalty& ph, double) { return ph.params().p == 1.0; },
      [](const ScalarPenalty&, double g, double xi) {
        return xi * std::exp(-g);
      },
      [](const ScalarPenalty&, double g, double xi) {
        return xi * std::exp(-g);
      },
      false, ValidationStatus::Validated, "",
      [bs](Rng& r) {
        return CatalogDraw{ScalarKernel(bs),
                           ScalarPenalty::power(1.0, uniform(r, 0, 1) < 0.5),
                           log_uniform(r, 0.1, 5), log_uniform(r, 0.05, 20)};
      },
  });

  c.push_back({
      "ex1_iii_p", bs, PenaltyKind::Power,
      [](const ScalarPenalty& ph, double) { return ph.params().p > 1.0; },
      // u e^u = gamma (p-1) xi^(p-1) gives u / (gamma (p-1)) =
      // xi^(p-1) e^-u, hence eta = xi exp(-u / (p-1)).
      [](const ScalarPenalty& ph, double g, double xi) {
        const double p = ph.params().p;
        const double u = lambert_w0(g * (p - 1.0) * std::pow(xi, p - 1.0)).w;
        return xi * std::exp(-u / (p - 1.0));
      },
      [](const ScalarPenalty& ph, double g, double xi) {
        const double p = ph.params().p;
        const double k = g * (p - 1.0);
        return std::pow(lambert_w0(k * std::pow(xi, p - 1.0)).w / k,
                        1.0 / (p - 1.0));
      },
      false, ValidationStatus::Validated, "",
      [bs](Rng& r) {
        return CatalogDraw{
            ScalarKernel(bs),
            ScalarPenalty::power(uniform(r, 1.1, 4), uniform(r, 0, 1) < 0.5),
            log_uniform(r, 0.1, 5), log_uniform(r, 0.05, 20)};
      },
  });

  c.push_back({
      "ex1_v", bs, PenaltyKind::NegativePower, any_step,
      [](const ScalarPenalty& ph, double g, double xi) {
        const double p = ph.params().p;
        const double u = lambert_w0(g * (p + 1.0) * std::pow(xi, -p - 1.0)).w;
        return xi * std::exp(u / (p + 1.0));
      },
      [](const ScalarPenalty& ph, double g, double xi) {
        const double p = ph.params().p;
        const double k = g * (p + 1.0);
        return std::pow(lambert_w0(k * std::pow(xi, -p - 1.0)).w / k,
                        -1.0 / (p + 1.0));
      },
      false, ValidationStatus::Validated, "",
      [bs](Rng& r) {
        return CatalogDraw{ScalarKernel(bs),
                           ScalarPenalty::negative_power(uniform(r, 1, 4)),
                           log_uniform(r, 0.1, 5), log_uniform(r, 0.2, 20)};
      },
  });

  c.push_back({
      "ex1_vi", bs, PenaltyKind::NegativeRoot, any_step,
      [](const ScalarPenalty& ph, double g, double xi) {
        const double p = ph.params().p;
        const double u = lambert_w0(g * (1.0 - p) * std::pow(xi, p - 1.0)).w;
        return xi * std::exp(u / (1.0 - p));
      },
      [](const ScalarPenalty& ph, double g, double xi) {
        const double p = ph.params().p;
        const double k = g * (1.0 - p);
        return std::pow(lambert_w0(k * std::pow(xi, p - 1.0)).w / k,
                        1.0 / (p - 1.0));
      },
      false, ValidationStatus::Validated, "",
      [bs](Rng& r) {
        return CatalogDraw{ScalarKernel(bs),
                           ScalarPenalty::negative_root(uniform(r, 0.05, 0.95)),
                           log_uniform(r, 0.1, 2), log_uniform(r, 0.05, 5)};
      },
  });

  // Fermi-Dirac kernel, theta'(xi) = ln(xi / (1 - xi)); unit step only.
  c.push_back({
      "ex2_i", fd, PenaltyKind::LinearEntropy, unit_step,
      // eta^2 / (1 - eta) = k with k = e^(omega-1) xi / (1 - xi).
      [](const ScalarPenalty& ph, double, double xi) {
        const double k =
            std::exp(ph.params().omega - 1.0) * xi / (1.0 - xi);
        return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 / k));
      },
      [](const ScalarPenalty& ph, double, double xi) {
        return std::exp(ph.params().omega) / (2.0 - 2.0 * xi) *
               (-xi + std::sqrt(4.0 * xi - 3.0 * xi * xi));
      },
      false, ValidationStatus::PaperTypoCorrected,
      "printed e^omega (2-2xi)^-1 (-xi + sqrt(4xi - 3xi^2)) matches only "
      "without the e^omega factor at omega = 1; shipped positive root of "
      "eta^2 + k eta - k = 0 with k = e^(omega-1) xi/(1-xi)",
      [fd](Rng& r) {
        return CatalogDraw{ScalarKernel(fd),
                           ScalarPenalty::linear_entropy(uniform(r, -2, 2)),
                           1.0, uniform(r, 0.01, 0.99)};
      },
  });

  c.push_back({
      "ex2_ii", fd, PenaltyKind::OneMinusEntropy, unit_step,
      // k (1 - eta)^2 = eta with k = xi / (1 - xi); smaller root.
      [](const ScalarPenalty&, double, double xi) {
        const double k = xi / (1.0 - xi);
        return 2.0 * k / (2.0 * k + 1.0 + std::sqrt(4.0 * k + 1.0));
      },
      [](const ScalarPenalty&, double, double xi) {
        const double r = 1.0 / xi;
        return 0.5 + 0.5 * r - std::sqrt(0.25 * r * r + 0.5 * r - 0.75);
      },
      false, ValidationStatus::Validated, "",
      [fd](Rng& r) {
        return CatalogDraw{ScalarKernel(fd), ScalarPenalty::one_minus_entropy(),
                           1.0, uniform(r, 0.01, 0.99)};
      },
  });

  // Burg kernel, theta'(xi) = -1 / xi.
  c.push_back({
      "ex3_i", burg, PenaltyKind::ScaledBurg, any_step,
      [](const ScalarPenalty& ph, double g, double xi) {
        return (1.0 + g * ph.params().gamma) * xi;
      },
      [](const ScalarPenalty& ph, double g, double xi) {
        return (1.0 + g * ph.params().gamma) * xi;
      },
      false, ValidationStatus::Validated,
      "a step s folds into the scale: s * scaled_burg(c) = scaled_burg(s c)",
      [burg](Rng& r) {
        return CatalogDraw{ScalarKernel(burg),
                           ScalarPenalty::scaled_burg(log_uniform(r, 0.1, 3)),
                           log_uniform(r, 0.1, 3), log_uniform(r, 0.05, 5)};
      },
  });

  c.push_back({
      "ex3_ii", burg, PenaltyKind::BurgLinearInverse, unit_step,
      // (1 + omega xi) eta^2 - (c+1) xi eta - alpha xi = 0
      [](const ScalarPenalty& ph, double, double xi) {
        const auto& q = ph.params();
        const double a = 1.0 + q.omega * xi;
        if (!(a > 0.0)) {
          throw NoClosedForm("ex3_ii: 1 + omega xi <= 0");
        }
        const double b = (q.gamma + 1.0) * xi;
        return (b + std::sqrt(b * b + 4.0 * q.alpha * xi * a)) / (2.0 * a);
      },
      [](const ScalarPenalty& ph, double, double xi) {
        const auto& q = ph.params();
        const double a = 1.0 + q.omega * xi;
        return ((q.gamma + 1.0) * xi +
                std::sqrt((q.gamma + 1.0) * (q.gamma + 1.0) * xi +
                          4.0 * q.alpha * xi * a)) /
               (2.0 * a);
      },
      false, ValidationStatus::PaperTypoCorrected,
      "printed sqrt((gamma+1)^2 xi + ...); shipped sqrt((gamma+1)^2 xi^2 + "
      "4 alpha xi (1 + omega xi))",
      [burg](Rng& r) {
        return CatalogDraw{
            ScalarKernel(burg),
            ScalarPenalty::burg_linear_inverse(uniform(r, 0, 3), uniform(r, 0, 3),
                                               uniform(r, 0, 3)),
            1.0, log_uniform(r, 0.05, 5)};
      },
  });

  c.push_back({
      "ex3_iii", burg, PenaltyKind::BurgPower, unit_step,
      // p alpha xi eta^p + eta = (c+1) xi
      [](const ScalarPenalty& ph, double, double xi) {
        const auto& q = ph.params();
        const double target = (q.gamma + 1.0) * xi;
        if (q.alpha == 0.0) return target;
        auto g = [&](double e) {
          return q.p * q.alpha * xi * std::pow(e, q.p) + e - target;
        };
        auto dg = [&](double e) {
          return q.p * q.p * q.alpha * xi * std::pow(e, q.p - 1.0) + 1.0;
        };
        auto r = roots::safeguarded_newton(
            [&](double e) { return std::pair{g(e), dg(e)}; },
            roots::Bracket{0.0, target}, 0.0);
        if (!r.converged) throw NumericalFailure("ex3_iii: solve failed");
        return r.x;
      },
      {}, false, ValidationStatus::PaperTypoCorrected,
      "printed equation p alpha xi eta^p + rho = (gamma+1) xi has an undefined "
      "symbol rho; shipped with rho read as eta",
      [burg](Rng& r) {
        return CatalogDraw{
            ScalarKernel(burg),
            ScalarPenalty::burg_power(uniform(r, 0, 3), uniform(r, 0, 3),
                                      uniform(r, 1, 4)),
            1.0, log_uniform(r, 0.05, 3)};
      },
  });

  c.push_back({
      "ex3_iv", burg, PenaltyKind::InversePower, unit_step,
      // eta^p (eta - xi) = p alpha xi
      [](const ScalarPenalty& ph, double, double xi) {
        const auto& q = ph.params();
        return solve_inverse_power(1.0, q.p, xi, q.p * q.alpha * xi);
      },
      [](const ScalarPenalty& ph, double, double xi) {
        const auto& q = ph.params();
        return solve_inverse_power(q.p, q.p, xi, q.p * q.alpha * xi);
      },
      false, ValidationStatus::PaperTypoCorrected,
      "printed p eta^(p+1) - xi eta^p = alpha p xi agrees only at p = 1; "
      "shipped eta^(p+1) - xi eta^p = alpha p xi",
      [burg](Rng& r) {
        return CatalogDraw{ScalarKernel(burg),
                           ScalarPenalty::inverse_power(uniform(r, 0, 3),
                                                        uniform(r, 1, 4)),
                           1.0, log_uniform(r, 0.05, 5)};
      },
  });

  // Hellinger-like kernel, theta'(xi) = xi / sqrt(1 - xi^2).
  c.push_back({
      "ex4", hel, PenaltyKind::HellingerSelf, any_step,
      [](const ScalarPenalty&, double g, double xi) {
        const double s = (g + 1.0) * (g + 1.0);
        return xi / std::sqrt(s * (1.0 - xi) * (1.0 + xi) + xi * xi);
      },
      [](const ScalarPenalty&, double g, double xi) {
        return xi / std::sqrt((g + 1.0) * (g + 1.0) +
                              (g * g + 2.0 * g + 2.0) * xi * xi);
      },
      false, ValidationStatus::PaperTypoCorrected,
      "printed xi / sqrt((gamma+1)^2 + (gamma^2+2gamma+2) xi^2); shipped xi / "
      "sqrt((gamma+1)^2 - (gamma^2+2gamma) xi^2) from (gamma+1) theta'(eta) = "
      "theta'(xi)",
      [hel](Rng& r) {
        return CatalogDraw{ScalarKernel(hel), ScalarPenalty::hellinger_self(),
                           log_uniform(r, 0.1, 5), uniform(r, -0.99, 0.99)};
      },
  });

  c.push_back({
      "kl_to_target", bs, PenaltyKind::KLToTarget, any_step,
      [](const ScalarPenalty& ph, double g, double xi) {
        return std::exp((std::log(xi) + g * std::log(ph.params().c)) /
                        (1.0 + g));
      },
      {}, true, ValidationStatus::Validated,
      "not in the published catalog; (1+gamma) ln eta = ln xi + gamma ln c",
      [bs](Rng& r) {
        return CatalogDraw{ScalarKernel(bs),
                           ScalarPenalty::kl_to_target(log_uniform(r, 0.05, 20)),
                           log_uniform(r, 0.1, 5), log_uniform(r, 0.05, 20)};
      },
  });

  c.push_back({
      "zero", std::nullopt, PenaltyKind::Zero, any_step,
      [](const ScalarPenalty&, double, double xi) { return xi; },
      {}, true, ValidationStatus::Validated,
      "minimizer of D(., xi) is xi for every kernel",
      [](Rng& r) {
        const int k = std::uniform_int_distribution<int>(0, 4)(r);
        const ScalarKernel kernel(static_cast<KernelKind>(k));
        const auto [lo, hi] = kernel.domain();
        double xi;
        if (std::isfinite(lo) && std::isfinite(hi)) {
          xi = uniform(r, lo + 0.01 * (hi - lo), hi - 0.01 * (hi - lo));
        } else if (std::isfinite(lo)) {
          xi = log_uniform(r, 0.05, 20);
        } else {
          xi = uniform(r, -20, 20);
        }
        return CatalogDraw{kernel, ScalarPenalty::zero(),
                           log_uniform(r, 0.1, 5), xi};
      },
  });
  return c;
}

double scaled_error(double value, double reference) {
  if (!std::isfinite(value)) return kInf;
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

}  // namespace

std::string_view status_name(ValidationStatus s) {
  switch (s) {
    case ValidationStatus::Validated: return "validated";
    case ValidationStatus::PaperTypoCorrected: return "paper_typo_corrected";
    case ValidationStatus::Unvalidated: return "unvalidated";
  }
  return "?";
}

const std::vector<ProxCatalogEntry>& prox_catalog() {
  static const std::vector<ProxCatalogEntry> catalog = build_catalog();
  return catalog;
}

const ProxCatalogEntry* find_catalog_entry(const ScalarKernel& kernel,
                                           const ScalarPenalty& penalty,
                                           double gamma) {
  for (const auto& e : prox_catalog()) {
    if (e.kernel && *e.kernel != kernel.kind()) continue;
    if (e.penalty != penalty.kind()) continue;
    if (!e.applies(penalty, gamma)) continue;
    return &e;
  }
  return nullptr;
}

std::vector<CatalogAuditRow> audit_catalog(std::uint64_t seed, int draws) {
  std::vector<CatalogAuditRow> rows;
  for (const auto& e : prox_catalog()) {
    // One stream per entry so adding entries does not perturb others.
    std::seed_seq seq{seed, static_cast<std::uint64_t>(std::hash<std::string>{}(e.id))};
    Rng rng(seq);
    CatalogAuditRow row;
    row.entry_id = e.id;
    row.kernel = e.kernel ? std::string(kernel_name(*e.kernel)) : "any";
    row.penalty = std::string(penalty_name(e.penalty));
    double printed_err = 0.0;
    bool printed_ok = static_cast<bool>(e.printed_form);
    for (int d = 0; d < draws; ++d) {
      const CatalogDraw draw = e.sample(rng);
      const double ref = prox_oracle(draw.kernel, draw.penalty, draw.gamma,
                                     draw.xi);
      double closed;
      try {
        closed = e.closed_form(draw.penalty, draw.gamma, draw.xi);
      } catch (const std::exception&) {
        closed = kInf;
      }
      row.max_abs_err = std::max(row.max_abs_err, scaled_error(closed, ref));
      if (printed_ok) {
        double printed;
        try {
          printed = e.printed_form(draw.penalty, draw.gamma, draw.xi);
        } catch (const std::exception&) {
          printed = kInf;
        }
        const double err = scaled_error(printed, ref);
        printed_err = std::isnan(err) ? kInf : std::max(printed_err, err);
      }
      ++row.draws;
    }
    if (printed_ok) row.printed_max_err = printed_err;

    std::ostringstream note;
    if (!(row.max_abs_err <= kCatalogTolerance)) {
      row.status = ValidationStatus::Unvalidated;
      note << "closed form disagrees with oracle";
    } else if (e.derived_only ||
               (printed_ok && printed_err <= kCatalogTolerance)) {
      row.status = ValidationStatus::Validated;
    } else {
      row.status = ValidationStatus::PaperTypoCorrected;
      if (printed_ok) {
        note << "printed form max_err=" << std::setprecision(3) << printed_err
             << "; ";
      }
    }
    note << e.note;
    if (row.status != e.status && row.status != ValidationStatus::Unvalidated) {
      note << "; expected status " << status_name(e.status);
    }
    row.note = note.str();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string audit_to_csv(const std::vector<CatalogAuditRow>& rows) {
  std::ostringstream os;
  os << "entry_id,kernel,penalty,draws,max_abs_err,status,note\n";
  for (const auto& r : rows) {
    std::string note = r.note;
    for (auto& ch : note) {
      if (ch == '"') ch = '\'';
    }
    os << r.entry_id << ',' << r.kernel << ',' << r.penalty << ',' << r.draws
       << ',' << std::scientific << std::setprecision(3) << r.max_abs_err
       << std::defaultfloat << ',' << status_name(r.status) << ",\"" << note
       << "\"\n";
  }
  return os.str();
}

}  // namespace bregvar
