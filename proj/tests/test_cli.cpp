// Copyright 2026 The pauli-tpm Authors
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


#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pauli_tpm/cli/commands.hpp"
#include "pauli_tpm/cli/config.hpp"
#include "pauli_tpm/error.hpp"

using namespace ptpm;
using namespace ptpm::cli;

namespace {

const std::string kData = PTPM_TEST_DATA_DIR;

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> data_rows(const std::string& text) {
    std::vector<std::string> out;
    bool header_seen = false;
    for (const auto& line : lines_of(text)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

ScenarioConfig example_config(double alpha, double beta, std::size_t grid) {
    ScenarioConfig cfg;
    cfg.channel = ExampleChannel{{alpha, beta}, kDefaultKappa};
    cfg.grid = grid;
    cfg.jobs = 2;
    return cfg;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("key-value parsing") {
        auto kv = parse_key_values("# comment\n[channel]\nalpha = 0.38  # trailing\nbeta = \"0.23\"\n\n[scan]\ngrid=100\n");
        CHECK(kv.at("channel.alpha") == "0.38");
        CHECK(kv.at("channel.beta") == "0.23");
        CHECK(kv.at("scan.grid") == "100");
        CHECK_THROWS_WITH_AS(parse_key_values("[channel]\ngamma = 1\n"), doctest::Contains("channel.gamma"),
                             InvalidInput);
        CHECK_THROWS_AS(parse_key_values("[channel]\nalpha = 1\nalpha = 2\n"), InvalidInput);
        CHECK_THROWS_AS(parse_key_values("[channel\n"), InvalidInput);
        CHECK_THROWS_AS(parse_key_values("[channel]\nalpha\n"), InvalidInput);
    }

    TEST_CASE("config variants") {
        auto ex = config_from_text("[channel]\nalpha = 0.38\nbeta = 0.23\n");
        REQUIRE(ex.channel);
        CHECK(std::get<ExampleChannel>(*ex.channel).kappa == kDefaultKappa);
        CHECK(ex.horizon() == doctest::Approx(10.0 / 0.38));

        auto cst = config_from_text("[channel]\nrates = 0.1, 0.2, 0.3\n[scan]\nt_max = 4\n");
        CHECK(std::get<ConstantChannel>(*cst.channel).rates[2] == doctest::Approx(0.3));
        CHECK_NOTHROW(cst.validate());

        CHECK_THROWS_AS(config_from_text("[channel]\nalpha = 0.3\nrates = 1,1,1\n"), InvalidInput);
        CHECK_THROWS_AS(config_from_text("[channel]\nkind = magic\n"), InvalidInput);
        CHECK_THROWS_AS(config_from_text("[channel]\nrates = 1, 1\n"), InvalidInput);
        CHECK_THROWS_AS(config_from_text("[channel]\nalpha = abc\n"), InvalidInput);
        CHECK_THROWS_AS(config_from_text("[output]\nformat = xml\n"), InvalidInput);
    }

    TEST_CASE("validation names the offending field") {
        ScenarioConfig none;
        CHECK_THROWS_WITH_AS(none.validate(), doctest::Contains("channel"), InvalidInput);
        auto cfg = example_config(0.38, 0.23, 10);
        CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("grid"), InvalidInput);
        cfg.grid = 100;
        cfg.zeta0 = 2.0;
        CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("zeta0"), InvalidInput);
        auto cst = config_from_text("[channel]\nrates = 0.1, 0.2, 0.3\n");
        CHECK_THROWS_WITH_AS(cst.validate(), doctest::Contains("t_max"), InvalidInput);
    }

    TEST_CASE("config files and rate tables") {
        auto cfg = load_config(kData + "/example.toml");
        CHECK(std::get<ExampleChannel>(*cfg.channel).params.alpha == doctest::Approx(0.38));
        CHECK(cfg.grid == 2000);

        auto tab = load_config(kData + "/tabulated.toml");
        const auto& table = std::get<TabulatedChannel>(*tab.channel);
        CHECK(table.times.size() == 3);
        CHECK(table.values[1][2] == doctest::Approx(0.2));
        CHECK(tab.horizon() == doctest::Approx(2.0));

        CHECK_THROWS_AS(load_config(kData + "/missing.toml"), IoError);
        CHECK_THROWS_AS(load_rate_table(kData + "/missing.csv"), IoError);
    }

    TEST_CASE("simulate CSV schema and row count") {
        auto cfg = example_config(0.38, 0.23, 64);
        std::ostringstream out;
        write_simulation(simulate(cfg), cfg, out);
        auto text = out.str();
        auto lines = lines_of(text);
        REQUIRE(lines.size() >= 3);
        CHECK(lines[0].find("pauli-tpm simulate v1") != std::string::npos);
        CHECK(lines[2] == kSimulateColumns);
        auto rows = data_rows(text);
        REQUIRE(rows.size() == 64);
        for (const auto& row : rows) {
            CHECK(split(row).size() == 10);
        }
        auto last = split(rows.back());
        CHECK(std::stod(last[0]) == doctest::Approx(10.0 / 0.38));
    }

    TEST_CASE("simulate output is deterministic across thread counts") {
        auto a = example_config(0.31, 0.23, 200);
        auto b = a;
        a.jobs = 1;
        b.jobs = 4;
        std::ostringstream oa;
        std::ostringstream ob;
        write_simulation(simulate(a), a, oa);
        write_simulation(simulate(b), b, ob);
        CHECK(oa.str() == ob.str());
    }

    TEST_CASE("zero rates config") {
        auto cfg = load_config(kData + "/zero_rates.toml");
        auto rows = simulate(cfg);
        REQUIRE(rows.size() == 32);
        std::ostringstream out;
        write_simulation(rows, cfg, out);
        for (const auto& row : data_rows(out.str())) {
            auto cells = split(row);
            CHECK(cells[1] == "1");
            CHECK(cells[7] == "0");
            CHECK(cells[8] == "0");
            CHECK(cells[9] == "cp");
        }
    }

    TEST_CASE("tabulated config matches constant rates") {
        auto tab = load_config(kData + "/tabulated.toml");
        auto rows = simulate(tab);
        REQUIRE(rows.size() == 16);
        const auto& last = rows.back();
        CHECK(last.t == doctest::Approx(2.0));
        CHECK(last.lambda == doctest::Approx(std::exp(-2.0 * 0.3 * 2.0)).epsilon(1e-10));
        CHECK(last.gamma_sum == doctest::Approx(0.3));
    }

    TEST_CASE("simulate JSON") {
        auto cfg = example_config(0.45, 0.23, 32);
        cfg.format = OutputFormat::Json;
        std::ostringstream out;
        write_simulation(simulate(cfg), cfg, out);
        auto j = nlohmann::json::parse(out.str());
        CHECK(j["schema"] == "pauli-tpm/simulate/v1");
        REQUIRE(j["rows"].size() == 32);
        CHECK(j["rows"][0].contains("d_var"));
    }

    TEST_CASE("format_real spelling") {
        CHECK(format_real(0.5) == "0.5");
        CHECK(format_real(std::nan("")) == "nan");
        CHECK(format_real(-INFINITY) == "-inf");
        CHECK(format_real(1.0 / 3.0) == "0.333333333333");
        CHECK(parse_format("json") == OutputFormat::Json);
        CHECK_THROWS_AS(parse_format("xml"), InvalidInput);
    }

    TEST_CASE("constants output") {
        std::ostringstream out;
        write_constants(compute_constants(), OutputFormat::Csv, out);
        CHECK(out.str().find("phi_star = 0.09102686057") != std::string::npos);
        std::ostringstream js;
        write_constants(compute_constants(), OutputFormat::Json, js);
        auto j = nlohmann::json::parse(js.str());
        CHECK(j["beta_bar"].get<double>() == doctest::Approx(0.2036321887945369).epsilon(1e-11));
    }

    TEST_CASE("classify admissible and inadmissible points") {
        auto ok = classify({0.38, 0.23});
        REQUIRE(ok.report);
        CHECK(ok.report->regime == Regime::II);
        std::ostringstream out;
        write_classification(ok, OutputFormat::Csv, out);
        CHECK(out.str().find("case       = II") != std::string::npos);
        CHECK(out.str().find("t3         =") != std::string::npos);

        auto not_cp = classify({0.31, 0.15});
        CHECK_FALSE(not_cp.admissibility.ok());
        CHECK_FALSE(not_cp.report);
        auto no_window = classify({0.31, 0.30});
        CHECK_FALSE(no_window.admissibility.has_window);
        std::ostringstream nw;
        write_classification(no_window, OutputFormat::Csv, nw);
        CHECK(nw.str().find("admissible = no") != std::string::npos);
    }

    TEST_CASE("sweep rows, flags and boundaries") {
        auto result = sweep(0.23, 0.25, 0.55, 31, 3);
        REQUIRE(result.rows.size() == 31);
        REQUIRE(result.boundaries.phi_t1_crossing);
        REQUIRE(result.boundaries.phi_t2_crossing);
        CHECK(*result.boundaries.phi_t1_crossing == doctest::Approx(0.41577264072).epsilon(1e-8));
        CHECK(*result.boundaries.phi_t2_crossing == doctest::Approx(0.33153944591).epsilon(1e-8));
        for (const auto& row : result.rows) {
            REQUIRE(row.regime);
            CHECK(row.flag == "ok");
            if (row.alpha < 0.33) {
                CHECK(*row.regime == Regime::III);
            } else if (row.alpha > 0.42) {
                CHECK(*row.regime == Regime::I);
            } else if (row.alpha > 0.34 && row.alpha < 0.41) {
                CHECK(*row.regime == Regime::II);
            }
        }
        std::ostringstream out;
        write_sweep(result, OutputFormat::Csv, out);
        CHECK(data_rows(out.str()).size() == 31);

        auto flagged = sweep(0.15, 0.3, 0.4, 3, 1);
        CHECK(flagged.rows[0].flag == "not_cp");
        CHECK_FALSE(flagged.rows[0].regime);
        CHECK(sweep(0.3, 0.3, 0.4, 2, 1).rows[1].flag == "no_window");
        CHECK_THROWS_AS(sweep(0.23, 0.5, 0.4, 3, 1), InvalidInput);
    }

    TEST_CASE("distribution from lambda and from a channel") {
        DistributionRequest req;
        req.lambda = 0.5;
        auto d = distribution(req);
        REQUIRE(d.atoms.size() == 2);
        CHECK(d.moment(1) == doctest::Approx(0.56233514461880835));
        std::ostringstream out;
        write_distribution(d, OutputFormat::Csv, out);
        CHECK(out.str().find("delta_sigma,weight") != std::string::npos);
        CHECK(out.str().find("# mean=0.562335144619") != std::string::npos);

        DistributionRequest from_channel;
        from_channel.channel = config_from_text("[channel]\nrates = 0.1, 0.2, 0.3\n[scan]\nt_max = 4\n");
        from_channel.time = 1.0;
        auto dc = distribution(from_channel);
        CHECK(dc.lambda == doctest::Approx(std::exp(-0.6)).epsilon(1e-12));

        DistributionRequest empty;
        CHECK_THROWS_AS(distribution(empty), InvalidInput);
    }

    TEST_CASE("exit code mapping") {
        CHECK(exit_code_for(InvalidInput("x")) == kExitInvalidInput);
        CHECK(exit_code_for(SingularChannel("x")) == kExitInvalidInput);
        CHECK(exit_code_for(NumericalFailure("x")) == kExitNumerical);
        CHECK(exit_code_for(DivergentEntropy("x")) == kExitNumerical);
        CHECK(exit_code_for(IoError("x")) == kExitIo);
    }
}
