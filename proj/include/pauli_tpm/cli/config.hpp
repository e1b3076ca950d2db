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

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pauli_tpm/example_family.hpp"
#include "pauli_tpm/pauli_channel.hpp"

namespace ptpm::cli {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(std::string_view text);

struct ExampleChannel {
    ExampleParams params;
    double kappa = kDefaultKappa;
};

struct ConstantChannel {
    std::array<double, 3> rates{0.0, 0.0, 0.0};
};

struct TabulatedChannel {
    std::string path;
    std::vector<double> times;
    std::array<std::vector<double>, 3> values;
};

using ChannelSpec = std::variant<ExampleChannel, ConstantChannel, TabulatedChannel>;

/// Everything `simulate` (and `distribution` with a channel) needs.
///
/// Config files are flat key/value text with TOML-style section headers:
///
///     [channel]
///     kind  = example          # example | constant | tabulated
///     alpha = 0.31
///     beta  = 0.23
///     kappa = 0.3
///     # rates = 0.1, 0.1, 0.1  (constant)
///     # table = rates.csv      (tabulated: t, gamma1, gamma2, gamma3)
///     [state]
///     zeta0 = 1
///     [scan]
///     t_max = 10
///     grid  = 2000
///     [output]
///     path   = out.csv
///     format = csv
///     [run]
///     jobs = 4
struct ScenarioConfig {
    std::optional<ChannelSpec> channel;
    double zeta0 = 1.0;
    std::optional<double> t_max;
    std::size_t grid = 2000;
    std::string out_path;  ///< empty: stdout
    OutputFormat format = OutputFormat::Csv;
    unsigned jobs = 0;     ///< 0: all cores

    /// Throws InvalidInput with the offending field named.
    void validate() const;

    RateFunctions rates() const;
    /// t_max if given, else 10 / alpha for the example channel, else the last
    /// tabulated time. Constant channels need an explicit t_max.
    double horizon() const;
};

/// `section.key` -> raw value. Throws InvalidInput on malformed lines,
/// duplicate keys, or keys outside the known schema.
std::map<std::string, std::string> parse_key_values(std::string_view text);

/// Builds a config from file text. Relative table paths resolve against
/// base_dir.
ScenarioConfig config_from_text(std::string_view text, const std::string& base_dir = ".");

/// Reads and parses a config file. Throws IoError if it cannot be read.
ScenarioConfig load_config(const std::string& path);

/// Reads t, gamma1, gamma2, gamma3 rows ('#' comments and a non-numeric
/// header line allowed).
TabulatedChannel load_rate_table(const std::string& path);

}  // namespace ptpm::cli
