// Copyright 2026 The Hyperbell Authors
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

#include <string>
#include <vector>

#include "hyperbell/apparatus.h"

namespace hyperbell {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Structural and physical invariants of the whole model. The table under
/// test is a parameter so a corrupted table can be fed in as a negative
/// control.
std::vector<CheckResult> run_invariant_suites(const DecisionTable &table = decision_table());

/// Signs of the single-photon Bell expansion of |label> (x) |psi+>, one entry
/// per nonzero term, magnitude 1/2 each.
struct ExpectedSpbTerm {
    SpbOutcome a;
    SpbOutcome b;
    int sign;
};
std::array<ExpectedSpbTerm, 4> expected_spb_expansion(BellLabel label);

}  // namespace hyperbell
