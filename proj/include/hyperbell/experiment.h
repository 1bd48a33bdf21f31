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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hyperbell/apparatus.h"
#include "hyperbell/config.h"
#include "hyperbell/rng.h"

/// Counting statistics on top of the analyzer model.
namespace hyperbell {

/// Total ~ Poisson(sum(probs) * rate * time); events assigned to bins by
/// inverse-CDF sampling of probs / sum(probs). `probs` may already carry the
/// efficiency-squared thinning, which then scales the expected total.
CountHistogram simulate_counts(const ProbHistogram &probs, double rate_hz, double time_s, Rng &rng);
CountHistogram simulate_counts(const ProbHistogram &probs, double rate_hz, double time_s, std::uint64_t seed);

/// Exactly `events` draws from probs / sum(probs).
CountHistogram sample_fixed_counts(const ProbHistogram &probs, std::uint64_t events, Rng &rng);

/// Fraction of events in one label's pattern set, with a binomial
/// (counting-statistics only) standard error sqrt(F (1 - F) / N).
struct FidelityEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_events = 0;
};

/// Throws EmptyHistogram when there are no counts.
FidelityEstimate fidelity_from_counts(const CountHistogram &counts, BellLabel assumed_input,
                                      const DecisionTable &table = decision_table());

/// Classification fractions for all four labels, indexed by BellLabel.
std::array<FidelityEstimate, 4> classification_fractions(const CountHistogram &counts,
                                                         const DecisionTable &table = decision_table());

/// Expected classification fractions of a probability histogram.
std::array<double, 4> expected_fractions(const ProbHistogram &probs, const DecisionTable &table = decision_table());

/// How many events each simulated acquisition records. Without `shots`, the
/// total is Poisson with mean rate * time * efficiency^2.
struct SamplingPlan {
    std::optional<std::uint64_t> shots;
};

/// rows[input][classified], both indexed by BellLabel.
using FidelityMatrix = std::array<std::array<FidelityEstimate, 4>, 4>;

struct FullAnalysis {
    FidelityMatrix sampled{};
    std::array<std::array<double, 4>, 4> expected{};
    std::array<ProbHistogram, 4> probabilities{};
    std::array<CountHistogram, 4> counts{};
};

/// Prepares each input, runs the analyzer, samples counts (row r uses stream
/// derive_stream_seed(seed, r)). Rows are evaluated concurrently.
FullAnalysis run_full_analysis(const AnalyzerConfig &config, SamplingPlan plan = {});

struct SweepPoint {
    double delay_um = 0.0;
    double visibility = 1.0;
    std::array<FidelityEstimate, 4> sampled{};
    std::array<double, 4> expected{};
};

struct SweepResult {
    BellLabel input = BellLabel::PsiPlus;
    std::vector<SweepPoint> points;
};

/// Analyzer output versus delay for one input (point i uses stream
/// derive_stream_seed(seed, i)). Throws OutOfRange for an empty delay list.
SweepResult sweep_delay(const AnalyzerConfig &config, std::span<const double> delays_um,
                        BellLabel input = BellLabel::PsiPlus, SamplingPlan plan = {});

/// Werner parameter p = (4F - 1)/3 that yields average classification
/// fidelity F. Throws OutOfRange unless 1/4 <= F <= 1.
double calibrate_pol_noise(double target_avg_fidelity);

}  // namespace hyperbell
