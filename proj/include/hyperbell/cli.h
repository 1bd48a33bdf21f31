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

#include <ostream>
#include <string>
#include <vector>

#include "hyperbell/apparatus.h"

namespace hyperbell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

/// Entry point of the `hyperbell` tool. `args` excludes the program name.
/// Errors go to `err` as one "error[Code]: message" line.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Prints one PASS/FAIL line per invariant; returns kExitOk iff all pass.
int verify(std::ostream &out, const DecisionTable &table = decision_table());

}  // namespace hyperbell::cli
