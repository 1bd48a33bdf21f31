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

#include "hyperbell/cli.h"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "hyperbell/config.h"
#include "hyperbell/error.h"
#include "hyperbell/experiment.h"
#include "hyperbell/report.h"
#include "hyperbell/verify.h"

namespace hyperbell::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string state = "";
    std::string config_path;
    std::optional<std::uint64_t> shots;
    std::string out_path;
    std::string format = "csv";
    double from_um = 0.0;
    std::optional<double> to_um;
    std::size_t steps = 31;
};

AnalyzerConfig load_config(const std::string &path) {
    if (path.empty()) {
        return AnalyzerConfig{};
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot read configuration file " + path);
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

BellLabel require_state(const std::string &text) {
    const auto label = parse_bell_label(text);
    if (!label) {
        throw UsageError("--state must be one of phi+, phi-, psi+, psi- (got '" + text + "')");
    }
    return *label;
}

void emit(const Options &opt, const std::string &payload, const RunManifest &manifest, std::ostream &out) {
    if (opt.out_path.empty()) {
        out << payload;
        return;
    }
    write_file_atomic(opt.out_path, payload);
    write_file_atomic(opt.out_path + ".manifest.json", manifest_json(manifest));
}

SamplingPlan plan_from(const Options &opt) {
    if (opt.shots && *opt.shots < 1) {
        throw UsageError("--shots must be >= 1 when sampling is requested");
    }
    return SamplingPlan{opt.shots};
}

int cmd_analyze(const Options &opt, std::ostream &out) {
    const BellLabel input = require_state(opt.state);
    const SamplingPlan plan = plan_from(opt);
    const AnalyzerConfig cfg = load_config(opt.config_path);
    cfg.validate();

    const ProbHistogram probs = analyzer_probabilities(DensityOp::pure(prepare_hyperentangled(input)), cfg);
    Rng rng(derive_stream_seed(cfg.seed, static_cast<std::uint64_t>(input)));
    const CountHistogram counts = plan.shots ? sample_fixed_counts(probs, *plan.shots, rng)
                                             : simulate_counts(probs, cfg.count_rate_hz, cfg.acquisition_s, rng);

    RunManifest manifest{"analyze", cfg, current_utc_timestamp(), input, opt.shots, {}, {}, {}};
    emit(opt, opt.format == "json" ? analyze_json(input, probs, counts) : analyze_csv(input, probs, counts), manifest,
         out);
    return kExitOk;
}

int cmd_sweep(const Options &opt, std::ostream &out) {
    const BellLabel input = require_state(opt.state.empty() ? "psi+" : opt.state);
    const SamplingPlan plan = plan_from(opt);
    const AnalyzerConfig cfg = load_config(opt.config_path);
    cfg.validate();
    const double to_um = opt.to_um.value_or(3.0 * cfg.filter.coherence_length_um());
    if (opt.steps < 2) {
        throw UsageError("--steps must be >= 2");
    }
    if (!(opt.from_um >= 0.0) || !(opt.from_um < to_um)) {
        throw UsageError("sweep range needs 0 <= --from-um < --to-um");
    }
    std::vector<double> delays(opt.steps);
    for (std::size_t i = 0; i < opt.steps; ++i) {
        delays[i] = opt.from_um + (to_um - opt.from_um) * static_cast<double>(i) / static_cast<double>(opt.steps - 1);
    }
    const SweepResult sweep = sweep_delay(cfg, delays, input, plan);

    RunManifest manifest{"sweep", cfg, current_utc_timestamp(), input, opt.shots, opt.from_um, to_um, opt.steps};
    emit(opt, opt.format == "json" ? sweep_json(sweep, cfg.filter) : sweep_csv(sweep, cfg.filter), manifest, out);
    return kExitOk;
}

int cmd_decompose(const Options &opt, std::ostream &out) {
    const BellLabel input = require_state(opt.state);
    out << decomposition_csv(decompose_single_photon_bell(hyperentangled_state(input)));
    return kExitOk;
}

std::string error_line(std::string_view code, std::string_view message) {
    return "error[" + std::string(code) + "]: " + std::string(message) + "\n";
}

}  // namespace

int verify(std::ostream &out, const DecisionTable &table) {
    const std::vector<CheckResult> results = run_invariant_suites(table);
    std::size_t passed = 0;
    for (const CheckResult &r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        passed += r.passed ? 1 : 0;
    }
    out << "verify: " << passed << "/" << results.size() << " passed\n";
    return passed == results.size() ? kExitOk : kExitVerifyFailed;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Polarization Bell-state analyzer assisted by momentum entanglement"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&opt](CLI::App *sub, bool with_state_required) {
        auto *state = sub->add_option("--state", opt.state, "Input Bell state: phi+, phi-, psi+, psi-");
        if (with_state_required) {
            state->required();
        }
        sub->add_option("--config", opt.config_path, "JSON configuration file");
        sub->add_option("--shots", opt.shots, "Fixed number of events instead of Poisson(rate * time)");
        sub->add_option("--out", opt.out_path, "Output file (a .manifest.json sidecar is written next to it)");
        sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App *analyze = app.add_subcommand("analyze", "Coincidence histogram and fidelities for one input state");
    add_common(analyze, true);
    CLI::App *sweep = app.add_subcommand("sweep", "Fidelities versus interferometer delay");
    add_common(sweep, false);
    sweep->add_option("--from-um", opt.from_um, "First delay in micrometres");
    sweep->add_option("--to-um", opt.to_um, "Last delay in micrometres (default 3 coherence lengths)");
    sweep->add_option("--steps", opt.steps, "Number of delay points (>= 2)");
    CLI::App *decompose = app.add_subcommand("decompose", "Single-photon Bell expansion of a hyperentangled state");
    decompose->add_option("--state", opt.state, "Input Bell state")->required();
    CLI::App *verify_cmd = app.add_subcommand("verify", "Run every invariant suite");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << error_line("Usage", e.what());
        return kExitConfig;
    }

    try {
        if (analyze->parsed()) {
            return cmd_analyze(opt, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(opt, out);
        }
        if (decompose->parsed()) {
            return cmd_decompose(opt, out);
        }
        if (verify_cmd->parsed()) {
            return verify(out);
        }
    } catch (const UsageError &e) {
        err << error_line("Usage", e.what());
        return kExitConfig;
    } catch (const IoError &e) {
        err << error_line("IoError", e.what());
        return kExitIo;
    } catch (const SimError &e) {
        err << error_line(error_code_name(e.code()), e.what());
        return kExitConfig;
    }
    return kExitConfig;
}

}  // namespace hyperbell::cli
