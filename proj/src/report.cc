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

#include "hyperbell/report.h"

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hyperbell/kernels.h"
#include "hyperbell/rng.h"

#ifndef HYPERBELL_VERSION
#define HYPERBELL_VERSION "unknown"
#endif

namespace hyperbell {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<std::string_view, 4> kColumnSuffix = {"phi_plus", "phi_minus", "psi_plus", "psi_minus"};

// Numbers go through the printed form so CSV and JSON carry identical values.
json number_or_null(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return round_to_printed(x);
}

std::array<std::optional<FidelityEstimate>, 4> summary_of(const CountHistogram &counts) {
    std::array<std::optional<FidelityEstimate>, 4> out;
    if (counts.total() > 0) {
        const auto f = classification_fractions(counts);
        for (std::size_t i = 0; i < 4; ++i) {
            out[i] = f[i];
        }
    }
    return out;
}

}  // namespace

std::string format_number(double x) {
    if (!std::isfinite(x)) {
        return "nan";
    }
    if (x == 0.0) {
        return "0";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    std::string s(buf);
    if (s == "-0") {
        return "0";
    }
    return s;
}

double round_to_printed(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    return std::strtod(format_number(x).c_str(), nullptr);
}

std::string format_signed(double x) {
    if (std::abs(x) < 1e-12) {
        return "0";
    }
    const std::string s = format_number(x);
    return x > 0.0 ? "+" + s : s;
}

std::string current_utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string config_json(const AnalyzerConfig &c) {
    ordered_json j;
    j["delay_um"] = c.delay_um;
    j["lambda0_nm"] = c.filter.center_nm;
    j["fwhm_nm"] = c.filter.fwhm_nm;
    j["filter_shape"] = filter_shape_name(c.filter.shape);
    j["pol_werner_p"] = c.noise.pol_werner_p;
    j["bs_imbalance"] = c.noise.bs_imbalance;
    j["detector_efficiency"] = c.noise.detector_efficiency;
    j["count_rate_hz"] = c.count_rate_hz;
    j["acquisition_s"] = c.acquisition_s;
    j["seed"] = c.seed;
    return j.dump(2);
}

std::string manifest_json(const RunManifest &m) {
    ordered_json j;
    j["tool"] = "hyperbell";
    j["version"] = HYPERBELL_VERSION;
    j["command"] = m.command;
    j["timestamp_utc"] = m.timestamp_utc;
    j["seed"] = m.config.seed;
    j["rng"] = Rng::kVersion;
    j["kernels"] = kernels::active_kernels().name;
    j["config"] = ordered_json::parse(config_json(m.config));
    ordered_json args = ordered_json::object();
    if (m.state) {
        args["state"] = bell_label_name(*m.state);
    }
    if (m.shots) {
        args["shots"] = *m.shots;
    }
    if (m.from_um) {
        args["from_um"] = *m.from_um;
    }
    if (m.to_um) {
        args["to_um"] = *m.to_um;
    }
    if (m.steps) {
        args["steps"] = *m.steps;
    }
    j["arguments"] = args;
    return j.dump(2) + "\n";
}

std::string analyze_csv(BellLabel input, const ProbHistogram &probs, const CountHistogram &counts) {
    std::ostringstream os;
    os << "pattern_spb,pattern_port,assigned_label,probability,count\n";
    for (std::size_t i = 0; i < kDim; ++i) {
        const CoincidencePattern p = CoincidencePattern::from_index(i);
        os << p.spb_name() << ',' << p.port_name() << ',' << bell_label_name(classify(p)) << ','
           << format_number(probs.bins[i]) << ',' << counts.bins[i] << '\n';
    }
    os << '\n';
    os << "input,classified_label,fraction,std_error,n_events,expected\n";
    const auto summary = summary_of(counts);
    const auto expected = expected_fractions(probs);
    for (BellLabel l : kAllBellLabels) {
        const std::size_t k = static_cast<std::size_t>(l);
        const auto &s = summary[k];
        os << bell_label_name(input) << ',' << bell_label_name(l) << ','
           << format_number(s ? s->value : NAN) << ',' << format_number(s ? s->std_error : NAN) << ','
           << counts.total() << ',' << format_number(expected[k]) << '\n';
    }
    return os.str();
}

std::string analyze_json(BellLabel input, const ProbHistogram &probs, const CountHistogram &counts) {
    ordered_json j;
    j["command"] = "analyze";
    j["input"] = bell_label_name(input);
    ordered_json patterns = ordered_json::array();
    for (std::size_t i = 0; i < kDim; ++i) {
        const CoincidencePattern p = CoincidencePattern::from_index(i);
        ordered_json row;
        row["pattern_spb"] = p.spb_name();
        row["pattern_port"] = p.port_name();
        row["assigned_label"] = bell_label_name(classify(p));
        row["probability"] = number_or_null(probs.bins[i]);
        row["count"] = counts.bins[i];
        patterns.push_back(row);
    }
    j["patterns"] = patterns;
    ordered_json summary = ordered_json::array();
    const auto s = summary_of(counts);
    const auto expected = expected_fractions(probs);
    for (BellLabel l : kAllBellLabels) {
        const std::size_t k = static_cast<std::size_t>(l);
        ordered_json row;
        row["classified_label"] = bell_label_name(l);
        row["fraction"] = number_or_null(s[k] ? s[k]->value : NAN);
        row["std_error"] = number_or_null(s[k] ? s[k]->std_error : NAN);
        row["n_events"] = counts.total();
        row["expected"] = number_or_null(expected[k]);
        summary.push_back(row);
    }
    j["summary"] = summary;
    return j.dump(2) + "\n";
}

std::string sweep_csv(const SweepResult &sweep, const SpectralFilter &filter) {
    std::ostringstream os;
    os << "delta_x_um,visibility";
    for (std::string_view prefix : {"F_", "sigma_", "analytic_"}) {
        for (std::string_view suffix : kColumnSuffix) {
            os << ',' << prefix << suffix;
        }
    }
    os << ",n_events,delta_x_over_lcoh\n";
    const double lcoh = filter.coherence_length_um();
    for (const SweepPoint &pt : sweep.points) {
        os << format_number(pt.delay_um) << ',' << format_number(pt.visibility);
        const bool sampled = pt.sampled[0].n_events > 0;
        for (const FidelityEstimate &f : pt.sampled) {
            os << ',' << format_number(sampled ? f.value : NAN);
        }
        for (const FidelityEstimate &f : pt.sampled) {
            os << ',' << format_number(sampled ? f.std_error : NAN);
        }
        for (double e : pt.expected) {
            os << ',' << format_number(e);
        }
        os << ',' << pt.sampled[0].n_events << ',' << format_number(pt.delay_um / lcoh) << '\n';
    }
    return os.str();
}

std::string sweep_json(const SweepResult &sweep, const SpectralFilter &filter) {
    ordered_json j;
    j["command"] = "sweep";
    j["input"] = bell_label_name(sweep.input);
    j["coherence_length_um"] = number_or_null(filter.coherence_length_um());
    ordered_json points = ordered_json::array();
    const double lcoh = filter.coherence_length_um();
    for (const SweepPoint &pt : sweep.points) {
        ordered_json row;
        row["delta_x_um"] = number_or_null(pt.delay_um);
        row["visibility"] = number_or_null(pt.visibility);
        const bool sampled = pt.sampled[0].n_events > 0;
        for (std::size_t k = 0; k < 4; ++k) {
            row["F_" + std::string(kColumnSuffix[k])] = number_or_null(sampled ? pt.sampled[k].value : NAN);
        }
        for (std::size_t k = 0; k < 4; ++k) {
            row["sigma_" + std::string(kColumnSuffix[k])] = number_or_null(sampled ? pt.sampled[k].std_error : NAN);
        }
        for (std::size_t k = 0; k < 4; ++k) {
            row["analytic_" + std::string(kColumnSuffix[k])] = number_or_null(pt.expected[k]);
        }
        row["n_events"] = pt.sampled[0].n_events;
        row["delta_x_over_lcoh"] = number_or_null(pt.delay_um / lcoh);
        points.push_back(row);
    }
    j["points"] = points;
    return j.dump(2) + "\n";
}

std::string decomposition_csv(const SpbDecomposition &d) {
    std::ostringstream os;
    os << "outcome_a,outcome_b,coefficient_re,coefficient_im\n";
    for (SpbOutcome a : kAllOutcomes) {
        for (SpbOutcome b : kAllOutcomes) {
            const cplx c = d.coeffs.at(a, b);
            os << outcome_name(a) << ',' << outcome_name(b) << ',' << format_signed(c.real()) << ','
               << format_signed(c.imag()) << '\n';
        }
    }
    return os.str();
}

void write_file_atomic(const std::filesystem::path &path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) {
            throw IoError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

}  // namespace hyperbell
