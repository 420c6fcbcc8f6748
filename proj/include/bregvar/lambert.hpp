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

namespace bregvar {

struct LambertResult {
  double w = 0.0;
  int iterations = 0;
  double residual = 0.0;  // |w e^w - z| / max(z, 1e-300)
};

// Principal branch W0 on [0, inf): the inverse of w -> w e^w. Halley
// iteration from a log-based initial guess, with a bisection fallback.
// Throws DomainError for z < 0 or non-finite z.
LambertResult lambert_w0(double z);

}  // namespace bregvar
