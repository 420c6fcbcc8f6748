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

// Closed-form D^theta-prox catalog. Each entry ships an oracle-checked
// formula; where the published formula differs, it is kept alongside as
// `printed_form` so the audit can report both.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bregvar/kernels.hpp"
#include "bregvar/penalties.hpp"

namespace bregvar {

enum class ValidationStatus { Validated, PaperTypoCorrected, Unvalidated };

std::string_view status_name(ValidationStatus s);

struct CatalogDraw {
  ScalarKernel kernel;
  ScalarPenalty penalty;
  double gamma;
  double xi;
};

using ScalarProxFormula =
    std::function<double(const ScalarPenalty&, double gamma, double xi)>;

struct ProxCatalogEntry {
  std::string id;                   // e.g. "ex3_i"
  std::optional<KernelKind> kernel; // nullopt: any kernel
  PenaltyKind penalty;
  // Parameter/step restrictions under which the formula applies.
  std::function<bool(const ScalarPenalty&, double gamma)> applies;
  ScalarProxFormula closed_form;
  // Published formula as printed; empty when it cannot be evaluated.
  ScalarProxFormula printed_form;
  // True when the entry is not taken from the published catalog.
  bool derived_only = false;
  ValidationStatus status;
  std::string note;
  std::function<CatalogDraw(std::mt19937_64&)> sample;
};

const std::vector<ProxCatalogEntry>& prox_catalog();

// Entry whose kernel, penalty and applicability match; nullptr otherwise.
const ProxCatalogEntry* find_catalog_entry(const ScalarKernel& kernel,
                                           const ScalarPenalty& penalty,
                                           double gamma);

struct CatalogAuditRow {
  std::string entry_id;
  std::string kernel;
  std::string penalty;
  int draws = 0;
  // max |closed - oracle| / max(1, |oracle|) over the draws
  double max_abs_err = 0.0;
  // same for the printed formula; nullopt if not evaluable
  std::optional<double> printed_max_err;
  ValidationStatus status = ValidationStatus::Unvalidated;
  std::string note;
};

inline constexpr double kCatalogTolerance = 1e-8;

// Randomized oracle audit of every catalog entry.
std::vector<CatalogAuditRow> audit_catalog(std::uint64_t seed, int draws = 200);

// CSV with header entry_id,kernel,penalty,draws,max_abs_err,status,note.
std::string audit_to_csv(const std::vector<CatalogAuditRow>& rows);

}  // namespace bregvar
