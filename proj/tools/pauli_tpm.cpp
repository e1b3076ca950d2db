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


// Command-line front end: constants, simulate, classify, sweep, distribution,
// selftest. Exit codes: 0 ok, 1 invalid input, 2 numerical failure, 3 I/O.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pauli_tpm/cli/acceptance.hpp"
#include "pauli_tpm/cli/commands.hpp"
#include "pauli_tpm/cli/config.hpp"
#include "pauli_tpm/error.hpp"

namespace {

using namespace ptpm;
using namespace ptpm::cli;

struct Flags {
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> kappa;
    std::optional<double> zeta0;
    std::optional<double> t_max;
    std::optional<std::size_t> grid;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::string> config;
    std::optional<unsigned> jobs;
};

void add_common(CLI::App* cmd, Flags& f, bool channel, bool scan) {
    cmd->add_option("--out", f.out, "Output path (default: stdout)");
    cmd->add_option("--format", f.format, "Output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
    if (channel) {
        cmd->add_option("--config", f.config, "Scenario config file; flags override its values");
        cmd->add_option("--alpha", f.alpha, "Example family alpha (1/time)");
        cmd->add_option("--beta", f.beta, "Example family beta (1/time)");
        cmd->add_option("--kappa", f.kappa, "Constant gamma_3 of the example rate split");
        cmd->add_option("--zeta0", f.zeta0, "Initial <sigma_z>, in [-1, 1]");
    }
    if (scan) {
        cmd->add_option("--t-max", f.t_max, "Time horizon (default 10/alpha)");
        cmd->add_option("--grid", f.grid, "Number of grid points (>= 16)");
        cmd->add_option("--jobs", f.jobs, "Worker threads (0 = all cores)");
    }
}

ScenarioConfig build_config(const Flags& f) {
    ScenarioConfig cfg = f.config ? load_config(*f.config) : ScenarioConfig{};
    if (f.alpha || f.beta || f.kappa) {
        if (cfg.channel && !std::holds_alternative<ExampleChannel>(*cfg.channel)) {
            throw InvalidInput("--alpha/--beta/--kappa conflict with the non-example channel in the config file");
        }
        ExampleChannel ch = cfg.channel ? std::get<ExampleChannel>(*cfg.channel) : ExampleChannel{};
        if (f.alpha) {
            ch.params.alpha = *f.alpha;
        }
        if (f.beta) {
            ch.params.beta = *f.beta;
        }
        if (f.kappa) {
            ch.kappa = *f.kappa;
        }
        cfg.channel = ch;
    }
    if (f.zeta0) {
        cfg.zeta0 = *f.zeta0;
    }
    if (f.t_max) {
        cfg.t_max = *f.t_max;
    }
    if (f.grid) {
        cfg.grid = *f.grid;
    }
    if (f.out) {
        cfg.out_path = *f.out;
    }
    if (f.format) {
        cfg.format = parse_format(*f.format);
    }
    if (f.jobs) {
        cfg.jobs = *f.jobs;
    }
    return cfg;
}

// Buffers the whole output so a failing command never leaves a partial file.
void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    file << text;
    file.close();
    if (!file) {
        throw IoError("failed writing '" + path + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy-production statistics of unital non-Markovian qubit dynamics (Pauli channels)"};
    app.require_subcommand(1);

    Flags f;
    auto* constants = app.add_subcommand("constants", "Print x*, phi*, z_max and beta_bar");
    add_common(constants, f, false, false);

    auto* simulate_cmd = app.add_subcommand("simulate", "Scan entropy statistics and their rates over time");
    add_common(simulate_cmd, f, true, true);

    auto* classify_cmd = app.add_subcommand("classify", "Classify the example family at (alpha, beta)");
    add_common(classify_cmd, f, false, false);
    classify_cmd->add_option("--alpha", f.alpha, "alpha (1/time)")->required();
    classify_cmd->add_option("--beta", f.beta, "beta (1/time)")->required();

    double alpha_min = 0.25;
    double alpha_max = 0.55;
    std::size_t steps = 121;
    double sweep_beta = 0.23;
    auto* sweep_cmd = app.add_subcommand("sweep", "phi_t1, phi_t2 and case across alpha at fixed beta");
    add_common(sweep_cmd, f, false, false);
    sweep_cmd->add_option("--beta", sweep_beta, "beta (1/time)")->capture_default_str();
    sweep_cmd->add_option("--alpha-min", alpha_min, "Lower end of the alpha range")->capture_default_str();
    sweep_cmd->add_option("--alpha-max", alpha_max, "Upper end of the alpha range")->capture_default_str();
    sweep_cmd->add_option("--steps", steps, "Number of alpha values")->capture_default_str();
    sweep_cmd->add_option("--jobs", f.jobs, "Worker threads (0 = all cores)");

    std::optional<double> lambda;
    std::optional<double> time;
    auto* dist_cmd = app.add_subcommand("distribution", "Entropy-production atoms for one TPM setup");
    add_common(dist_cmd, f, true, false);
    dist_cmd->add_option("--lambda", lambda, "sigma_z channel eigenvalue in (0, 1]");
    dist_cmd->add_option("--time", time, "Final time, when the channel is given instead of --lambda");

    auto* selftest = app.add_subcommand("selftest", "Run the acceptance checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        std::ostringstream out;
        OutputFormat format = f.format ? parse_format(*f.format) : OutputFormat::Csv;
        std::string path = f.out.value_or("");

        if (*constants) {
            write_constants(compute_constants(), format, out);
        } else if (*simulate_cmd) {
            ScenarioConfig cfg = build_config(f);
            auto rows = simulate(cfg);
            write_simulation(rows, cfg, out);
            path = cfg.out_path;
        } else if (*classify_cmd) {
            ExampleParams params{*f.alpha, *f.beta};
            ClassifyResult result = classify(params);
            write_classification(result, format, out);
            emit(out.str(), path);
            return result.admissibility.ok() ? kExitOk : kExitInvalidInput;
        } else if (*sweep_cmd) {
            write_sweep(sweep(sweep_beta, alpha_min, alpha_max, steps, f.jobs.value_or(0)), format, out);
        } else if (*dist_cmd) {
            DistributionRequest req;
            ScenarioConfig cfg = build_config(f);
            req.zeta0 = cfg.zeta0;
            req.lambda = lambda;
            req.time = time;
            if (cfg.channel) {
                req.channel = cfg;
            }
            write_distribution(distribution(req), cfg.format, out);
            path = cfg.out_path;
        } else if (*selftest) {
            bool ok = report_acceptance(run_acceptance(), out);
            emit(out.str(), "");
            return ok ? kExitOk : kExitNumerical;
        }
        emit(out.str(), path);
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}
