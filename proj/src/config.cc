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

#include "hyperbell/config.h"

#include <cmath>
#include <functional>
#include <json.hpp>
#include <string>

#include "hyperbell/error.h"

namespace hyperbell {

namespace {

using nlohmann::json;

[[noreturn]] void out_of_range(std::string_view key, std::string_view range) {
    throw SimError(ErrorCode::OutOfRangeValue,
                   std::string(key) + " outside admissible range " + std::string(range));
}

double read_number(const json &value, std::string_view key, std::string_view range,
                   const std::function<bool(double)> &admissible) {
    if (!value.is_number()) {
        out_of_range(key, std::string(range) + " (expected a number)");
    }
    const double x = value.get<double>();
    if (!std::isfinite(x) || !admissible(x)) {
        out_of_range(key, range);
    }
    return x;
}

std::string line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col) + " (byte " +
           std::to_string(byte) + ")";
}

}  // namespace

std::string_view filter_shape_name(FilterShape shape) {
    return shape == FilterShape::Gaussian ? "gaussian" : "rectangular";
}

void AnalyzerConfig::validate() const {
    if (!(delay_um >= 0.0) || !std::isfinite(delay_um)) {
        throw SimError(ErrorCode::OutOfRange, "delay_um must be >= 0");
    }
    filter.validate();
    noise.validate();
    if (!(count_rate_hz > 0.0) || !(acquisition_s > 0.0)) {
        throw SimError(ErrorCode::OutOfRange, "count rate and acquisition time must be > 0");
    }
}

AnalyzerConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw SimError(ErrorCode::MalformedDocument,
                       "invalid JSON at " + line_and_column(text, e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw SimError(ErrorCode::MalformedDocument, "configuration must be a JSON object");
    }

    AnalyzerConfig cfg;
    auto positive = [](double x) { return x > 0.0; };
    for (const auto &[key, value] : doc.items()) {
        if (key == "delay_um") {
            cfg.delay_um = read_number(value, key, "[0, inf)", [](double x) { return x >= 0.0; });
        } else if (key == "lambda0_nm") {
            cfg.filter.center_nm = read_number(value, key, "(0, inf)", positive);
        } else if (key == "fwhm_nm") {
            cfg.filter.fwhm_nm = read_number(value, key, "(0, lambda0_nm)", positive);
        } else if (key == "filter_shape") {
            if (value == "gaussian") {
                cfg.filter.shape = FilterShape::Gaussian;
            } else if (value == "rectangular") {
                cfg.filter.shape = FilterShape::Rectangular;
            } else {
                out_of_range(key, "{\"gaussian\", \"rectangular\"}");
            }
        } else if (key == "pol_werner_p") {
            cfg.noise.pol_werner_p =
                read_number(value, key, "[0, 1]", [](double x) { return x >= 0.0 && x <= 1.0; });
        } else if (key == "bs_imbalance") {
            cfg.noise.bs_imbalance =
                read_number(value, key, "[-0.5, 0.5]", [](double x) { return x >= -0.5 && x <= 0.5; });
        } else if (key == "detector_efficiency") {
            cfg.noise.detector_efficiency =
                read_number(value, key, "(0, 1]", [](double x) { return x > 0.0 && x <= 1.0; });
        } else if (key == "count_rate_hz") {
            cfg.count_rate_hz = read_number(value, key, "(0, inf)", positive);
        } else if (key == "acquisition_s") {
            cfg.acquisition_s = read_number(value, key, "(0, inf)", positive);
        } else if (key == "seed") {
            if (!value.is_number_unsigned()) {
                out_of_range(key, "[0, 2^64) (expected a nonnegative integer)");
            }
            cfg.seed = value.get<std::uint64_t>();
        } else {
            throw SimError(ErrorCode::UnknownKey, "unknown configuration key '" + key + "'");
        }
    }
    if (!(cfg.filter.fwhm_nm < cfg.filter.center_nm)) {
        out_of_range("fwhm_nm", "(0, lambda0_nm)");
    }
    return cfg;
}

}  // namespace hyperbell
