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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gtest/gtest.h"
#include "hyperbell/config.h"
#include "hyperbell/error.h"
#include "hyperbell/report.h"

using namespace hyperbell;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

ErrorCode config_error(std::string_view text) {
    try {
        parse_config(text);
    } catch (const SimError &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error for " << text;
    return ErrorCode::ZeroVector;
}

class TempDir {
   public:
    TempDir() : path_(fs::temp_directory_path() / ("hyperbell_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                    "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    fs::path file(const std::string &name, const std::string &content) const {
        const fs::path p = path_ / name;
        std::ofstream(p) << content;
        return p;
    }
    const fs::path &path() const {
        return path_;
    }

   private:
    fs::path path_;
};

std::vector<std::vector<std::string>> csv_rows(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(config, empty_document_gives_defaults) {
    const AnalyzerConfig c = parse_config("{}");
    EXPECT_EQ(c.delay_um, 0.0);
    EXPECT_EQ(c.filter.center_nm, 728.0);
    EXPECT_EQ(c.filter.fwhm_nm, 6.0);
    EXPECT_EQ(c.filter.shape, FilterShape::Gaussian);
    EXPECT_EQ(c.noise.pol_werner_p, 1.0);
    EXPECT_EQ(c.noise.bs_imbalance, 0.0);
    EXPECT_EQ(c.noise.detector_efficiency, 1.0);
    EXPECT_EQ(c.count_rate_hz, 1000.0);
    EXPECT_EQ(c.acquisition_s, 10.0);
    EXPECT_EQ(c.seed, 0u);
}

TEST(config, every_key_is_read) {
    const AnalyzerConfig c = parse_config(R"({"delay_um": 88.3, "lambda0_nm": 800, "fwhm_nm": 10,
        "filter_shape": "rectangular", "pol_werner_p": 0.852, "bs_imbalance": -0.1,
        "detector_efficiency": 0.5, "count_rate_hz": 2000, "acquisition_s": 3, "seed": 42})");
    EXPECT_EQ(c.delay_um, 88.3);
    EXPECT_EQ(c.filter.center_nm, 800.0);
    EXPECT_EQ(c.filter.fwhm_nm, 10.0);
    EXPECT_EQ(c.filter.shape, FilterShape::Rectangular);
    EXPECT_EQ(c.noise.pol_werner_p, 0.852);
    EXPECT_EQ(c.noise.bs_imbalance, -0.1);
    EXPECT_EQ(c.noise.detector_efficiency, 0.5);
    EXPECT_EQ(c.count_rate_hz, 2000.0);
    EXPECT_EQ(c.acquisition_s, 3.0);
    EXPECT_EQ(c.seed, 42u);
}

TEST(config, delay_reaches_the_visibility) {
    const AnalyzerConfig c = parse_config(R"({"delay_um": 88.3})");
    EXPECT_NEAR(visibility(c.delay_um, c.filter), 0.02851753722140346, 1e-9);
}

TEST(config, errors) {
    EXPECT_EQ(config_error(R"({"pol_werner_p": 1.2})"), ErrorCode::OutOfRangeValue);
    EXPECT_EQ(config_error(R"({"delay_um": -1})"), ErrorCode::OutOfRangeValue);
    EXPECT_EQ(config_error(R"({"fwhm_nm": 900})"), ErrorCode::OutOfRangeValue);
    EXPECT_EQ(config_error(R"({"seed": -3})"), ErrorCode::OutOfRangeValue);
    EXPECT_EQ(config_error(R"({"filter_shape": "triangle"})"), ErrorCode::OutOfRangeValue);
    EXPECT_EQ(config_error(R"({"delay": 3})"), ErrorCode::UnknownKey);
    EXPECT_EQ(config_error("[1, 2]"), ErrorCode::MalformedDocument);
    EXPECT_EQ(config_error("{\n  \"delay_um\": 3,\n  oops\n}"), ErrorCode::MalformedDocument);
}

TEST(config, messages_name_the_problem) {
    try {
        parse_config(R"({"pol_werner_p": 1.2})");
    } catch (const SimError &e) {
        EXPECT_NE(std::string(e.what()).find("pol_werner_p"), std::string::npos);
    }
    try {
        parse_config("{\n  \"delay_um\": 3,\n  oops\n}");
    } catch (const SimError &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(cli, usage_errors) {
    EXPECT_EQ(run_cli({"analyze", "--state", "psi-", "--shots", "0"}).code, cli::kExitConfig);
    EXPECT_EQ(run_cli({"analyze", "--state", "chi+"}).code, cli::kExitConfig);
    EXPECT_EQ(run_cli({"analyze"}).code, cli::kExitConfig);
    EXPECT_EQ(run_cli({}).code, cli::kExitConfig);
    EXPECT_EQ(run_cli({"sweep", "--steps", "1"}).code, cli::kExitConfig);
    const CliRun r = run_cli({"analyze", "--state", "psi-", "--shots", "0"});
    EXPECT_EQ(r.err.rfind("error[Usage]: ", 0), 0u) << r.err;
}

TEST(cli, missing_config_is_an_io_error) {
    const CliRun r = run_cli({"analyze", "--state", "psi+", "--config", "/nonexistent/hyperbell.json"});
    EXPECT_EQ(r.code, cli::kExitIo);
    EXPECT_EQ(r.err.rfind("error[IoError]: ", 0), 0u);
}

TEST(cli, bad_config_is_a_config_error) {
    TempDir dir;
    const CliRun r = run_cli({"analyze", "--state", "psi+", "--config", dir.file("c.json", R"({"pol_werner_p": 1.2})").string()});
    EXPECT_EQ(r.code, cli::kExitConfig);
    EXPECT_EQ(r.err.rfind("error[OutOfRangeValue]: ", 0), 0u) << r.err;
}

TEST(cli, analyze_output_is_bit_stable) {
    TempDir dir;
    const std::string cfg = dir.file("c.json", R"({"seed": 7, "pol_werner_p": 0.852})").string();
    const CliRun a = run_cli({"analyze", "--state", "phi-", "--config", cfg});
    const CliRun b = run_cli({"analyze", "--state", "phi-", "--config", cfg});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto rows = csv_rows(a.out);
    ASSERT_EQ(rows.size(), 1u + 16u + 1u + 1u + 4u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"pattern_spb", "pattern_port", "assigned_label", "probability", "count"}));
    EXPECT_EQ(rows[18], (std::vector<std::string>{"input", "classified_label", "fraction", "std_error", "n_events", "expected"}));
    EXPECT_EQ(rows[20][1], "phi-");
    EXPECT_EQ(rows[20][5], "0.889");
}

TEST(cli, json_and_csv_agree) {
    TempDir dir;
    const std::string cfg = dir.file("c.json", R"({"seed": 3, "delay_um": 40})").string();
    const CliRun csv = run_cli({"analyze", "--state", "psi+", "--config", cfg});
    const CliRun js = run_cli({"analyze", "--state", "psi+", "--config", cfg, "--format", "json"});
    ASSERT_EQ(csv.code, 0);
    ASSERT_EQ(js.code, 0);
    const auto rows = csv_rows(csv.out);
    const auto doc = nlohmann::json::parse(js.out);
    ASSERT_EQ(doc["patterns"].size(), 16u);
    for (std::size_t i = 0; i < 16; ++i) {
        const auto &p = doc["patterns"][i];
        EXPECT_EQ(p["pattern_spb"].get<std::string>(), rows[1 + i][0]);
        EXPECT_EQ(p["assigned_label"].get<std::string>(), rows[1 + i][2]);
        EXPECT_EQ(p["probability"].get<double>(), std::strtod(rows[1 + i][3].c_str(), nullptr));
        EXPECT_EQ(p["count"].get<std::uint64_t>(), std::stoull(rows[1 + i][4]));
    }
    for (std::size_t k = 0; k < 4; ++k) {
        const auto &s = doc["summary"][k];
        EXPECT_EQ(s["fraction"].get<double>(), std::strtod(rows[19 + k][2].c_str(), nullptr));
        EXPECT_EQ(s["n_events"].get<std::uint64_t>(), std::stoull(rows[19 + k][4]));
    }
}

TEST(cli, out_file_gets_a_manifest) {
    TempDir dir;
    const fs::path out = dir.path() / "run.csv";
    const CliRun r = run_cli({"analyze", "--state", "psi-", "--shots", "500", "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    ASSERT_TRUE(fs::exists(out));
    std::ifstream mf(out.string() + ".manifest.json");
    ASSERT_TRUE(mf.good());
    const auto manifest = nlohmann::json::parse(mf);
    EXPECT_EQ(manifest["command"], "analyze");
    EXPECT_EQ(manifest["config"]["seed"], 0);
    EXPECT_TRUE(manifest.contains("timestamp_utc"));

    const CliRun bad = run_cli({"analyze", "--state", "psi-", "--out", (dir.path() / "missing" / "x.csv").string()});
    EXPECT_EQ(bad.code, cli::kExitIo);
}

TEST(cli, decompose_prints_signed_terms) {
    const CliRun phi = run_cli({"decompose", "--state", "phi+"});
    ASSERT_EQ(phi.code, 0);
    EXPECT_NE(phi.out.find("sigma+,tau+,+0.5,0\n"), std::string::npos);
    EXPECT_NE(phi.out.find("sigma-,tau-,-0.5,0\n"), std::string::npos);
    EXPECT_NE(phi.out.find("tau+,sigma+,+0.5,0\n"), std::string::npos);
    EXPECT_NE(phi.out.find("tau-,sigma-,-0.5,0\n"), std::string::npos);

    const CliRun psi = run_cli({"decompose", "--state", "psi+"});
    EXPECT_NE(psi.out.find("sigma+,sigma+,+0.5,0\n"), std::string::npos);
    EXPECT_NE(psi.out.find("sigma-,sigma-,-0.5,0\n"), std::string::npos);
    EXPECT_NE(psi.out.find("tau+,tau+,+0.5,0\n"), std::string::npos);
    EXPECT_NE(psi.out.find("tau-,tau-,-0.5,0\n"), std::string::npos);
    EXPECT_EQ(csv_rows(psi.out).size(), 17u);
}

TEST(cli, sweep_first_row_is_fully_coherent) {
    const CliRun r = run_cli({"sweep", "--steps", "5", "--to-um", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0][0], "delta_x_um");
    EXPECT_EQ(rows[1][0], "0");
    EXPECT_EQ(rows[1][1], "1");
    EXPECT_EQ(rows[5][0], "100");
    const CliRun js = run_cli({"sweep", "--steps", "5", "--to-um", "100", "--format", "json"});
    EXPECT_EQ(nlohmann::json::parse(js.out)["points"].size(), 5u);
}

TEST(cli, verify_passes) {
    const CliRun r = run_cli({"verify"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.out;
    EXPECT_NE(r.out.find("verify: 17/17 passed"), std::string::npos);
}

TEST(cli, verify_catches_a_corrupted_table) {
    auto raw = decision_table().raw();
    // sigma-/sigma- moved from psi+ to phi+: phi+ now owns five patterns.
    raw[CoincidencePattern::from_outcomes(SpbOutcome::SigmaMinus, SpbOutcome::SigmaMinus).index()] = BellLabel::PhiPlus;
    std::ostringstream out;
    EXPECT_EQ(cli::verify(out, DecisionTable(raw)), cli::kExitVerifyFailed);
    EXPECT_NE(out.str().find("FAIL decision-table disjointness"), std::string::npos) << out.str();
}

TEST(report, number_formatting) {
    EXPECT_EQ(format_number(0.25), "0.25");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(NAN), "nan");
    EXPECT_EQ(format_signed(0.5), "+0.5");
    EXPECT_EQ(format_signed(-0.5), "-0.5");
    EXPECT_EQ(format_signed(0.0), "0");
    EXPECT_EQ(round_to_printed(1.0 / 3.0), 0.333333333333);
}
