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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hyperbell/config.h"
#include "hyperbell/experiment.h"

/// CSV / JSON serialization of analyzer results and run manifests.
namespace hyperbell {

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// 12 significant digits, never "-0"; non-finite values render as "nan".
std::string format_number(double x);

/// Value obtained by parsing format_number(x) back.
double round_to_printed(double x);

/// Optional fields echo the command arguments into the manifest.
struct RunManifest {
    std::string command;
    AnalyzerConfig config;
    std::string timestamp_utc;
    std::optional<BellLabel> state;
    std::optional<std::uint64_t> shots;
    std::optional<double> from_um;
    std::optional<double> to_um;
    std::optional<std::size_t> steps;
};

std::string current_utc_timestamp();
std::string manifest_json(const RunManifest &manifest);
std::string config_json(const AnalyzerConfig &config);

std::string analyze_csv(BellLabel input, const ProbHistogram &probs, const CountHistogram &counts);
std::string analyze_json(BellLabel input, const ProbHistogram &probs, const CountHistogram &counts);

std::string sweep_csv(const SweepResult &sweep, const SpectralFilter &filter);
std::string sweep_json(const SweepResult &sweep, const SpectralFilter &filter);

/// "+0.5", "-0.5", "0": sign always shown for nonzero values.
std::string format_signed(double x);
std::string decomposition_csv(const SpbDecomposition &d);

/// Writes via a temporary file in the same directory and renames over the
/// target. Throws IoError.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

}  // namespace hyperbell
