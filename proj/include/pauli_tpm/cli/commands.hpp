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


#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pauli_tpm/cli/config.hpp"
#include "pauli_tpm/reversibility.hpp"
#include "pauli_tpm/tpm_entropy.hpp"

namespace ptpm::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInvalidInput = 1, kExitNumerical = 2, kExitIo = 3 };

/// Maps the library error hierarchy onto exit codes.
int exit_code_for(const std::exception& e);

/// Version tag written into every CSV header comment and JSON document.
inline constexpr const char* kSchemaVersion = "v1";

inline constexpr const char* kSimulateColumns =
    "t,lambda,phi,gamma_sum,f,mean,var,d_mean,d_var,divisibility_flag";
inline constexpr const char* kSweepColumns = "alpha,t1,t2,phi_t1,phi_t2,case,phi_star,flag";

/// Twelve significant digits, '.' decimal separator, "inf"/"nan" spelled out.
std::string format_real(double v);

struct Constants {
    double x_star = 0.0;
    double phi_star = 0.0;
    double z_max = 0.0;
    double beta_bar = 0.0;
};

Constants compute_constants();
void write_constants(const Constants& c, OutputFormat format, std::ostream& out);

/// Scan of the configured channel, written as CSV or JSON.
std::vector<AnalysisPoint> simulate(const ScenarioConfig& config);
void write_simulation(const std::vector<AnalysisPoint>& rows, const ScenarioConfig& config, std::ostream& out);

struct ClassifyResult {
    ExampleParams params;
    Admissibility admissibility;
    std::optional<RegimeReport> report;  ///< present iff admissible
};

ClassifyResult classify(const ExampleParams& params);
void write_classification(const ClassifyResult& result, OutputFormat format, std::ostream& out);

struct SweepRow {
    double alpha = 0.0;
    std::optional<TimeWindow> window;
    double phi_t1 = 0.0;
    double phi_t2 = 0.0;
    std::optional<Regime> regime;
    std::string flag;  ///< "ok" or the failed admissibility bound(s)
};

struct SweepResult {
    double beta = 0.0;
    std::vector<SweepRow> rows;
    RegimeBoundaries boundaries;
};

/// `steps` evenly spaced alpha values on [alpha_lo, alpha_hi]. Inadmissible
/// points stay in the output with a flag. Rows come back in alpha order.
SweepResult sweep(double beta, double alpha_lo, double alpha_hi, std::size_t steps, unsigned jobs);
void write_sweep(const SweepResult& result, OutputFormat format, std::ostream& out);

struct DistributionRequest {
    double zeta0 = 1.0;
    std::optional<double> lambda;
    /// Used when lambda is not given: lambda = 1 - 2(p_1 + p_2) of this channel at `time`.
    std::optional<ScenarioConfig> channel;
    std::optional<double> time;
};

EntropyDistribution distribution(const DistributionRequest& request);
void write_distribution(const EntropyDistribution& dist, OutputFormat format, std::ostream& out);

}  // namespace ptpm::cli
