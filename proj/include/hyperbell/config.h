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

#include <cstdint>
#include <string_view>

#include "hyperbell/elements.h"

namespace hyperbell {

/// Everything needed to reproduce one analyzer run.
struct AnalyzerConfig {
    double delay_um = 0.0;
    SpectralFilter filter;
    NoiseParams noise;
    double count_rate_hz = 1000.0;
    double acquisition_s = 10.0;
    std::uint64_t seed = 0;

    /// Throws OutOfRange naming the first offending parameter.
    void validate() const;
};

/// Parses the JSON configuration document. Every key is optional; missing
/// keys keep the defaults above. Throws MalformedDocument, UnknownKey or
/// OutOfRangeValue.
AnalyzerConfig parse_config(std::string_view text);

std::string_view filter_shape_name(FilterShape shape);

}  // namespace hyperbell
