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

#include "bregvar/penalties.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "bregvar/errors.hpp"
#include "bregvar/kernels.hpp"

namespace bregvar {
namespace {

struct KindInfo {
  PenaltyKind kind;
  std::string_view name;
  std::vector<std::string_view> keys;
};

const std::vector<KindInfo>& kinds() {
  static const std::vector<KindInfo> table = {
      {PenaltyKind::Zero, "zero", {}},
      {PenaltyKind::LinearEntropy, "linear_entropy", {"omega"}},
      {PenaltyKind::Power, "power", {"p", "nonneg"}},
      {PenaltyKind::NegativePower, "neg_power", {"p"}},
      {PenaltyKind::NegativeRoot, "neg_root", {"p"}},
      {PenaltyKind::OneMinusEntropy, "one_minus_entropy", {}},
      {PenaltyKind::ScaledBurg, "scaled_burg", {"gamma"}},
      {PenaltyKind::BurgLinearInverse, "burg_linear_inverse", {"gamma", "omega", "alpha"}},
      {PenaltyKind::BurgPower, "burg_power", {"gamma", "alpha", "p"}},
      {PenaltyKind::InversePower, "inverse_power", {"alpha", "p"}},
      {PenaltyKind::HellingerSelf, "hellinger_self", {}},
      {PenaltyKind::KLToTarget, "kl_to_target", {"c"}},
  };
  return table;
}

const KindInfo& info(PenaltyKind kind) {
  for (const auto& k : kinds()) {
    if (k.kind == kind) return k;
  }
  throw InputError("unknown penalty kind");
}

double& slot(PenaltyParams& p, std::string_view key) {
  if (key == "gamma") return p.gamma;
  if (key == "omega") return p.omega;
  if (key == "alpha") return p.alpha;
  if (key == "p") return p.p;
  return p.c;
}

double get(const PenaltyParams& p, std::string_view key) {
  if (key == "nonneg") return p.nonneg ? 1.0 : 0.0;
  return slot(const_cast<PenaltyParams&>(p), key);
}

void require(bool ok, const char* msg) {
  if (!ok) throw InputError(msg);
}

double one_minus_sq(double xi) { return (1.0 - xi) * (1.0 + xi); }

}  // namespace

std::string_view penalty_name(PenaltyKind kind) { return info(kind).name; }

ScalarPenalty::ScalarPenalty(PenaltyKind kind, PenaltyParams params)
    : kind_(kind), params_(params) {
  const auto& q = params_;
  for (double v : {q.gamma, q.omega, q.alpha, q.p, q.c}) {
    require(std::isfinite(v), "penalty parameters must be finite");
  }
  switch (kind_) {
    case PenaltyKind::Power:
    case PenaltyKind::NegativePower:
      require(q.p >= 1.0, "p must be >= 1");
      break;
    case PenaltyKind::NegativeRoot:
      require(q.p > 0.0 && q.p < 1.0, "neg_root requires p in (0, 1)");
      break;
    case PenaltyKind::ScaledBurg:
      require(q.gamma > 0.0, "scaled_burg requires gamma > 0");
      break;
    case PenaltyKind::BurgLinearInverse:
      require(q.gamma >= 0.0 && q.alpha >= 0.0,
              "burg_linear_inverse requires gamma, alpha >= 0");
      break;
    case PenaltyKind::BurgPower:
      require(q.gamma >= 0.0 && q.alpha >= 0.0 && q.p >= 1.0,
              "burg_power requires gamma, alpha >= 0 and p >= 1");
      break;
    case PenaltyKind::InversePower:
      require(q.alpha >= 0.0 && q.p >= 1.0,
              "inverse_power requires alpha >= 0 and p >= 1");
      break;
    case PenaltyKind::KLToTarget:
      require(q.c > 0.0, "kl_to_target requires c > 0");
      break;
    default:
      break;
  }
}

ScalarPenalty ScalarPenalty::linear_entropy(double omega) {
  PenaltyParams q;
  q.omega = omega;
  return {PenaltyKind::LinearEntropy, q};
}
ScalarPenalty ScalarPenalty::power(double p, bool nonneg) {
  PenaltyParams q;
  q.p = p;
  q.nonneg = nonneg;
  return {PenaltyKind::Power, q};
}
ScalarPenalty ScalarPenalty::negative_power(double p) {
  PenaltyParams q;
  q.p = p;
  return {PenaltyKind::NegativePower, q};
}
ScalarPenalty ScalarPenalty::negative_root(double p) {
  PenaltyParams q;
  q.p = p;
  return {PenaltyKind::NegativeRoot, q};
}
ScalarPenalty ScalarPenalty::one_minus_entropy() {
  return {PenaltyKind::OneMinusEntropy, {}};
}
ScalarPenalty ScalarPenalty::scaled_burg(double gamma) {
  PenaltyParams q;
  q.gamma = gamma;
  return {PenaltyKind::ScaledBurg, q};
}
ScalarPenalty ScalarPenalty::burg_linear_inverse(double gamma, double omega,
                                                 double alpha) {
  PenaltyParams q;
  q.gamma = gamma;
  q.omega = omega;
  q.alpha = alpha;
  return {PenaltyKind::BurgLinearInverse, q};
}
ScalarPenalty ScalarPenalty::burg_power(double gamma, double alpha, double p) {
  PenaltyParams q;
  q.gamma = gamma;
  q.alpha = alpha;
  q.p = p;
  return {PenaltyKind::BurgPower, q};
}
ScalarPenalty ScalarPenalty::inverse_power(double alpha, double p) {
  PenaltyParams q;
  q.alpha = alpha;
  q.p = p;
  return {PenaltyKind::InversePower, q};
}
ScalarPenalty ScalarPenalty::hellinger_self() {
  return {PenaltyKind::HellingerSelf, {}};
}
ScalarPenalty ScalarPenalty::kl_to_target(double c) {
  PenaltyParams q;
  q.c = c;
  return {PenaltyKind::KLToTarget, q};
}

PenaltyDomain ScalarPenalty::domain() const {
  switch (kind_) {
    case PenaltyKind::Zero:
      return {-kInf, kInf, false, false};
    case PenaltyKind::Power:
      return params_.nonneg ? PenaltyDomain{0.0, kInf, true, false}
                            : PenaltyDomain{-kInf, kInf, false, false};
    case PenaltyKind::LinearEntropy:
    case PenaltyKind::NegativeRoot:
    case PenaltyKind::KLToTarget:
      return {0.0, kInf, true, false};
    case PenaltyKind::OneMinusEntropy:
      return {-kInf, 1.0, false, true};
    case PenaltyKind::HellingerSelf:
      return {-1.0, 1.0, true, true};
    case PenaltyKind::BurgLinearInverse:
      // alpha = 0 and gamma = 0 leave a linear function, still restricted to
      // (0, inf) as stated.
    case PenaltyKind::NegativePower:
    case PenaltyKind::ScaledBurg:
    case PenaltyKind::BurgPower:
    case PenaltyKind::InversePower:
      return {0.0, kInf, false, false};
  }
  return {0.0, 0.0, false, false};
}

bool ScalarPenalty::in_domain(double xi) const {
  return std::isfinite(value(xi));
}

double ScalarPenalty::value(double xi) const {
  if (std::isnan(xi) || std::isinf(xi)) return kInf;
  const auto& q = params_;
  switch (kind_) {
    case PenaltyKind::Zero:
      return 0.0;
    case PenaltyKind::LinearEntropy:
      if (xi == 0.0) return 0.0;
      return xi > 0.0 ? xi * std::log(xi) - q.omega * xi : kInf;
    case PenaltyKind::Power:
      if (q.nonneg && xi < 0.0) return kInf;
      return std::pow(std::abs(xi), q.p) / q.p;
    case PenaltyKind::NegativePower:
      return xi > 0.0 ? std::pow(xi, -q.p) / q.p : kInf;
    case PenaltyKind::NegativeRoot:
      return xi >= 0.0 ? -std::pow(xi, q.p) / q.p : kInf;
    case PenaltyKind::OneMinusEntropy:
      if (xi == 1.0) return 1.0;
      return xi < 1.0 ? (1.0 - xi) * std::log1p(-xi) + xi : kInf;
    case PenaltyKind::ScaledBurg:
      return xi > 0.0 ? -q.gamma * std::log(xi) : kInf;
    case PenaltyKind::BurgLinearInverse:
      if (!(xi > 0.0)) return kInf;
      return -q.gamma * std::log(xi) + q.omega * xi + q.alpha / xi;
    case PenaltyKind::BurgPower:
      if (!(xi > 0.0)) return kInf;
      return -q.gamma * std::log(xi) + q.alpha * std::pow(xi, q.p);
    case PenaltyKind::InversePower:
      return xi > 0.0 ? q.alpha * std::pow(xi, -q.p) : kInf;
    case PenaltyKind::HellingerSelf:
      return (xi >= -1.0 && xi <= 1.0) ? -std::sqrt(one_minus_sq(xi)) : kInf;
    case PenaltyKind::KLToTarget:
      if (xi == 0.0) return q.c;
      return xi > 0.0 ? xi * std::log(xi / q.c) - xi + q.c : kInf;
  }
  return kInf;
}

double ScalarPenalty::derivative(double xi) const {
  const auto& q = params_;
  switch (kind_) {
    case PenaltyKind::Zero:
      return 0.0;
    case PenaltyKind::LinearEntropy:
      return std::log(xi) + 1.0 - q.omega;
    case PenaltyKind::Power: {
      if (xi == 0.0) return 0.0;
      const double m = std::pow(std::abs(xi), q.p - 1.0);
      return xi > 0.0 ? m : -m;
    }
    case PenaltyKind::NegativePower:
      return -std::pow(xi, -q.p - 1.0);
    case PenaltyKind::NegativeRoot:
      return -std::pow(xi, q.p - 1.0);
    case PenaltyKind::OneMinusEntropy:
      return -std::log1p(-xi);
    case PenaltyKind::ScaledBurg:
      return -q.gamma / xi;
    case PenaltyKind::BurgLinearInverse:
      return -q.gamma / xi + q.omega - q.alpha / (xi * xi);
    case PenaltyKind::BurgPower:
      return -q.gamma / xi + q.p * q.alpha * std::pow(xi, q.p - 1.0);
    case PenaltyKind::InversePower:
      return -q.p * q.alpha * std::pow(xi, -q.p - 1.0);
    case PenaltyKind::HellingerSelf:
      return xi / std::sqrt(one_minus_sq(xi));
    case PenaltyKind::KLToTarget:
      return std::log(xi / q.c);
  }
  return 0.0;
}

double ScalarPenalty::second_derivative(double xi) const {
  const auto& q = params_;
  switch (kind_) {
    case PenaltyKind::Zero:
      return 0.0;
    case PenaltyKind::LinearEntropy:
    case PenaltyKind::KLToTarget:
      return 1.0 / xi;
    case PenaltyKind::Power:
      if (q.p == 1.0) return 0.0;
      return (q.p - 1.0) * std::pow(std::abs(xi), q.p - 2.0);
    case PenaltyKind::NegativePower:
      return (q.p + 1.0) * std::pow(xi, -q.p - 2.0);
    case PenaltyKind::NegativeRoot:
      return (1.0 - q.p) * std::pow(xi, q.p - 2.0);
    case PenaltyKind::OneMinusEntropy:
      return 1.0 / (1.0 - xi);
    case PenaltyKind::ScaledBurg:
      return q.gamma / (xi * xi);
    case PenaltyKind::BurgLinearInverse:
      return q.gamma / (xi * xi) + 2.0 * q.alpha / (xi * xi * xi);
    case PenaltyKind::BurgPower:
      return q.gamma / (xi * xi) +
             q.p * (q.p - 1.0) * q.alpha * std::pow(xi, q.p - 2.0);
    case PenaltyKind::InversePower:
      return q.p * (q.p + 1.0) * q.alpha * std::pow(xi, -q.p - 2.0);
    case PenaltyKind::HellingerSelf: {
      const double s = one_minus_sq(xi);
      return 1.0 / (s * std::sqrt(s));
    }
  }
  return 0.0;
}

std::string ScalarPenalty::to_string() const {
  const auto& ki = info(kind_);
  std::ostringstream os;
  os.precision(17);
  os << ki.name;
  char sep = ':';
  for (auto key : ki.keys) {
    if (key == "nonneg" && !params_.nonneg) continue;
    os << sep << key << '=' << get(params_, key);
    sep = ',';
  }
  return os.str();
}

ScalarPenalty parse_penalty(std::string_view text) {
  const auto colon = text.find(':');
  const auto name = text.substr(0, colon);
  const KindInfo* ki = nullptr;
  for (const auto& k : kinds()) {
    if (k.name == name) ki = &k;
  }
  if (ki == nullptr) {
    throw InputError("unknown penalty '" + std::string(name) + "'");
  }
  PenaltyParams q;
  std::map<std::string, bool, std::less<>> seen;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{}
                                             : rest.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw InputError("malformed penalty parameter '" + std::string(item) +
                         "'");
      }
      const auto key = item.substr(0, eq);
      const auto val = item.substr(eq + 1);
      bool known = false;
      for (auto k : ki->keys) known = known || k == key;
      if (!known) {
        throw InputError("penalty '" + std::string(name) +
                         "' has no parameter '" + std::string(key) + "'");
      }
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
      if (ec != std::errc{} || ptr != val.data() + val.size()) {
        throw InputError("malformed number '" + std::string(val) + "'");
      }
      if (key == "nonneg") {
        q.nonneg = v != 0.0;
      } else {
        slot(q, key) = v;
      }
      seen[std::string(key)] = true;
    }
  }
  for (auto k : ki->keys) {
    if (k != "nonneg" && !seen.contains(k)) {
      throw InputError("penalty '" + std::string(name) +
                       "' is missing parameter '" + std::string(k) + "'");
    }
  }
  return {ki->kind, q};
}

}  // namespace bregvar
