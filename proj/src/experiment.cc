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

#include "hyperbell/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "hyperbell/error.h"

namespace hyperbell {

namespace {

// Runs body(i) for i in [0, n) on a small worker pool. Results must be written
// by index; the first exception is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body) {
    const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

CountHistogram acquire(const ProbHistogram &probs, const AnalyzerConfig &config, const SamplingPlan &plan,
                       std::uint64_t stream_seed) {
    Rng rng(stream_seed);
    if (plan.shots) {
        return sample_fixed_counts(probs, *plan.shots, rng);
    }
    return simulate_counts(probs, config.count_rate_hz, config.acquisition_s, rng);
}

}  // namespace

CountHistogram sample_fixed_counts(const ProbHistogram &probs, std::uint64_t events, Rng &rng) {
    CountHistogram out;
    const double total = probs.total();
    if (events == 0 || !(total > 0.0)) {
        return out;
    }
    std::array<double, kDim> cdf{};
    std::size_t last_positive = 0;
    double running = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) {
        if (probs.bins[i] < 0.0) {
            throw SimError(ErrorCode::OutOfRange, "negative probability in histogram");
        }
        running += probs.bins[i];
        cdf[i] = running;
        if (probs.bins[i] > 0.0) {
            last_positive = i;
        }
    }
    for (std::uint64_t e = 0; e < events; ++e) {
        const double target = rng.uniform() * running;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
        std::size_t bin = static_cast<std::size_t>(it - cdf.begin());
        if (bin >= kDim) {
            bin = last_positive;
        }
        ++out.bins[bin];
    }
    return out;
}

CountHistogram simulate_counts(const ProbHistogram &probs, double rate_hz, double time_s, Rng &rng) {
    if (!(rate_hz > 0.0) || !(time_s > 0.0)) {
        throw SimError(ErrorCode::OutOfRange, "count rate and acquisition time must be > 0");
    }
    const std::uint64_t n = rng.poisson(probs.total() * rate_hz * time_s);
    return sample_fixed_counts(probs, n, rng);
}

CountHistogram simulate_counts(const ProbHistogram &probs, double rate_hz, double time_s, std::uint64_t seed) {
    Rng rng(seed);
    return simulate_counts(probs, rate_hz, time_s, rng);
}

FidelityEstimate fidelity_from_counts(const CountHistogram &counts, BellLabel assumed_input,
                                      const DecisionTable &table) {
    const std::uint64_t n = counts.total();
    if (n == 0) {
        throw SimError(ErrorCode::EmptyHistogram, "histogram has no counts");
    }
    std::uint64_t hits = 0;
    for (const CoincidencePattern &p : table.patterns_for(assumed_input)) {
        hits += counts[p];
    }
    FidelityEstimate est;
    est.n_events = n;
    est.value = static_cast<double>(hits) / static_cast<double>(n);
    est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(n));
    return est;
}

std::array<FidelityEstimate, 4> classification_fractions(const CountHistogram &counts, const DecisionTable &table) {
    std::array<FidelityEstimate, 4> out{};
    for (BellLabel l : kAllBellLabels) {
        out[static_cast<std::size_t>(l)] = fidelity_from_counts(counts, l, table);
    }
    return out;
}

std::array<double, 4> expected_fractions(const ProbHistogram &probs, const DecisionTable &table) {
    std::array<double, 4> out{};
    const double total = probs.total();
    if (!(total > 0.0)) {
        return out;
    }
    for (std::size_t i = 0; i < kDim; ++i) {
        out[static_cast<std::size_t>(table[CoincidencePattern::from_index(i)])] += probs.bins[i] / total;
    }
    return out;
}

FullAnalysis run_full_analysis(const AnalyzerConfig &config, SamplingPlan plan) {
    config.validate();
    FullAnalysis out;
    parallel_for(kAllBellLabels.size(), [&](std::size_t row) {
        const BellLabel input = kAllBellLabels[row];
        const DensityOp rho = DensityOp::pure(prepare_hyperentangled(input));
        out.probabilities[row] = analyzer_probabilities(rho, config);
        out.expected[row] = expected_fractions(out.probabilities[row]);
        out.counts[row] = acquire(out.probabilities[row], config, plan, derive_stream_seed(config.seed, row));
        out.sampled[row] = classification_fractions(out.counts[row]);
    });
    return out;
}

SweepResult sweep_delay(const AnalyzerConfig &config, std::span<const double> delays_um, BellLabel input,
                        SamplingPlan plan) {
    if (delays_um.empty()) {
        throw SimError(ErrorCode::OutOfRange, "delay sweep needs at least one point");
    }
    config.validate();
    SweepResult out;
    out.input = input;
    out.points.resize(delays_um.size());
    const DensityOp rho = DensityOp::pure(prepare_hyperentangled(input));
    parallel_for(delays_um.size(), [&](std::size_t i) {
        AnalyzerConfig point_config = config;
        point_config.delay_um = delays_um[i];
        SweepPoint &pt = out.points[i];
        pt.delay_um = delays_um[i];
        pt.visibility = visibility(delays_um[i], config.filter);
        const ProbHistogram probs = analyzer_probabilities(rho, point_config);
        pt.expected = expected_fractions(probs);
        const CountHistogram counts = acquire(probs, point_config, plan, derive_stream_seed(config.seed, i));
        if (counts.total() > 0) {
            pt.sampled = classification_fractions(counts);
        }
    });
    return out;
}

double calibrate_pol_noise(double target_avg_fidelity) {
    if (!(target_avg_fidelity >= 0.25 && target_avg_fidelity <= 1.0)) {
        throw SimError(ErrorCode::OutOfRange, "target fidelity must lie in [0.25, 1]");
    }
    return (4.0 * target_avg_fidelity - 1.0) / 3.0;
}

}  // namespace hyperbell
