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


#include "pauli_tpm/cli/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "pauli_tpm/error.hpp"

namespace ptpm::cli {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "channel.kind", "channel.alpha", "channel.beta", "channel.kappa", "channel.rates", "channel.table",
        "state.zeta0",  "scan.t_max",    "scan.grid",    "output.path",   "output.format", "run.jobs",
    };
    return keys;
}

std::string trim(std::string_view s) {
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(s[b])) {
        ++b;
    }
    while (e > b && is_space(s[e - 1])) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

double parse_real(const std::string& text, const std::string& field) {
    std::istringstream in(text);
    in.imbue(std::locale::classic());
    double v = 0.0;
    in >> v;
    if (in.fail() || !(in >> std::ws).eof() || !std::isfinite(v)) {
        throw InvalidInput(field + ": expected a finite number, got '" + text + "'");
    }
    return v;
}

long long parse_integer(const std::string& text, const std::string& field) {
    std::istringstream in(text);
    long long v = 0;
    in >> v;
    if (in.fail() || !(in >> std::ws).eof()) {
        throw InvalidInput(field + ": expected an integer, got '" + text + "'");
    }
    return v;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& field) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        out.push_back(parse_real(trim(item), field));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed reading '" + path + "'");
    }
    return buf.str();
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") {
        return OutputFormat::Csv;
    }
    if (text == "json") {
        return OutputFormat::Json;
    }
    throw InvalidInput("format: expected csv or json, got '" + std::string(text) + "'");
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> out;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        auto where = "config line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw InvalidInput(where + ": malformed section header '" + line + "'");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput(where + ": expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string full = section.empty() ? key : section + "." + key;
        if (!known_keys().contains(full)) {
            throw InvalidInput(where + ": unknown key '" + full + "'");
        }
        if (out.contains(full)) {
            throw InvalidInput(where + ": duplicate key '" + full + "'");
        }
        out[full] = unquote(trim(line.substr(eq + 1)));
    }
    return out;
}

TabulatedChannel load_rate_table(const std::string& path) {
    std::string text = read_file(path);
    TabulatedChannel table;
    table.path = path;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool seen_data = false;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        try {
            row = parse_real_list(line, path + ":" + std::to_string(line_no));
        } catch (const InvalidInput&) {
            if (!seen_data) {
                continue;  // header
            }
            throw;
        }
        if (row.size() != 4) {
            throw InvalidInput(path + ":" + std::to_string(line_no) + ": expected 4 columns (t, gamma1, gamma2, gamma3)");
        }
        seen_data = true;
        table.times.push_back(row[0]);
        for (std::size_t k = 0; k < 3; ++k) {
            table.values[k].push_back(row[k + 1]);
        }
    }
    if (table.times.size() < 2) {
        throw InvalidInput(path + ": rate table needs at least two rows");
    }
    return table;
}

ScenarioConfig config_from_text(std::string_view text, const std::string& base_dir) {
    auto kv = parse_key_values(text);
    ScenarioConfig cfg;

    auto has = [&](const char* key) { return kv.contains(key); };
    bool example_keys = has("channel.alpha") || has("channel.beta") || has("channel.kappa");
    bool constant_keys = has("channel.rates");
    bool table_keys = has("channel.table");
    int variants = int(example_keys) + int(constant_keys) + int(table_keys);
    if (variants > 1) {
        throw InvalidInput("channel: exactly one of (alpha/beta/kappa), rates, table may be given");
    }
    std::string kind;
    if (has("channel.kind")) {
        kind = kv["channel.kind"];
    } else if (example_keys) {
        kind = "example";
    } else if (constant_keys) {
        kind = "constant";
    } else if (table_keys) {
        kind = "tabulated";
    }

    if (kind == "example") {
        if (constant_keys || table_keys) {
            throw InvalidInput("channel.kind = example conflicts with channel.rates / channel.table");
        }
        ExampleChannel ch;
        // Missing alpha/beta may still come from command-line flags; validate() catches the rest.
        if (has("channel.alpha")) {
            ch.params.alpha = parse_real(kv["channel.alpha"], "channel.alpha");
        }
        if (has("channel.beta")) {
            ch.params.beta = parse_real(kv["channel.beta"], "channel.beta");
        }
        if (has("channel.kappa")) {
            ch.kappa = parse_real(kv["channel.kappa"], "channel.kappa");
        }
        cfg.channel = ch;
    } else if (kind == "constant") {
        if (example_keys || table_keys || !constant_keys) {
            throw InvalidInput("channel.kind = constant needs channel.rates and nothing else");
        }
        auto list = parse_real_list(kv["channel.rates"], "channel.rates");
        if (list.size() != 3) {
            throw InvalidInput("channel.rates: expected three comma-separated values");
        }
        cfg.channel = ConstantChannel{{list[0], list[1], list[2]}};
    } else if (kind == "tabulated") {
        if (example_keys || constant_keys || !table_keys) {
            throw InvalidInput("channel.kind = tabulated needs channel.table and nothing else");
        }
        std::filesystem::path p(kv["channel.table"]);
        if (p.is_relative()) {
            p = std::filesystem::path(base_dir) / p;
        }
        cfg.channel = load_rate_table(p.string());
    } else if (!kind.empty()) {
        throw InvalidInput("channel.kind: expected example, constant or tabulated, got '" + kind + "'");
    }

    if (has("state.zeta0")) {
        cfg.zeta0 = parse_real(kv["state.zeta0"], "state.zeta0");
    }
    if (has("scan.t_max")) {
        cfg.t_max = parse_real(kv["scan.t_max"], "scan.t_max");
    }
    if (has("scan.grid")) {
        long long g = parse_integer(kv["scan.grid"], "scan.grid");
        if (g < 0) {
            throw InvalidInput("scan.grid must be positive");
        }
        cfg.grid = static_cast<std::size_t>(g);
    }
    if (has("output.path")) {
        cfg.out_path = kv["output.path"];
    }
    if (has("output.format")) {
        cfg.format = parse_format(kv["output.format"]);
    }
    if (has("run.jobs")) {
        long long j = parse_integer(kv["run.jobs"], "run.jobs");
        if (j < 0) {
            throw InvalidInput("run.jobs must be non-negative");
        }
        cfg.jobs = static_cast<unsigned>(j);
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    auto base = std::filesystem::path(path).parent_path().string();
    return config_from_text(read_file(path), base.empty() ? "." : base);
}

void ScenarioConfig::validate() const {
    if (!channel) {
        throw InvalidInput("channel: no channel specified (use --alpha/--beta or a config file)");
    }
    if (const auto* ex = std::get_if<ExampleChannel>(&*channel)) {
        if (!(ex->params.alpha > 0.0)) {
            throw InvalidInput("alpha: must be positive");
        }
        if (!(ex->params.beta > 0.0)) {
            throw InvalidInput("beta: must be positive");
        }
        if (!std::isfinite(ex->kappa)) {
            throw InvalidInput("kappa: must be finite");
        }
    }
    if (const auto* tab = std::get_if<TabulatedChannel>(&*channel)) {
        if (tab->times.empty() || tab->times.front() != 0.0) {
            throw InvalidInput("table: rate table must start at t = 0");
        }
        if (t_max && *t_max > tab->times.back()) {
            throw InvalidInput("t_max: exceeds the last tabulated time");
        }
    }
    if (std::holds_alternative<ConstantChannel>(*channel) && !t_max) {
        throw InvalidInput("t_max: required for constant-rate channels");
    }
    if (!(zeta0 >= -1.0 && zeta0 <= 1.0)) {
        throw InvalidInput("zeta0: must lie in [-1, 1]");
    }
    if (t_max && !(*t_max > 0.0)) {
        throw InvalidInput("t_max: must be positive");
    }
    if (grid < 16) {
        throw InvalidInput("grid: at least 16 points required");
    }
}

RateFunctions ScenarioConfig::rates() const {
    validate();
    return std::visit(
        [&](const auto& ch) -> RateFunctions {
            using T = std::decay_t<decltype(ch)>;
            if constexpr (std::is_same_v<T, ExampleChannel>) {
                return default_rate_split(ch.params, ch.kappa, horizon());
            } else if constexpr (std::is_same_v<T, ConstantChannel>) {
                return RateFunctions::constant(ch.rates[0], ch.rates[1], ch.rates[2]);
            } else {
                return RateFunctions::tabulated(ch.times, ch.values);
            }
        },
        *channel);
}

double ScenarioConfig::horizon() const {
    if (t_max) {
        return *t_max;
    }
    if (!channel) {
        throw InvalidInput("t_max: cannot infer a horizon without a channel");
    }
    if (const auto* ex = std::get_if<ExampleChannel>(&*channel)) {
        return default_horizon(ex->params);
    }
    if (const auto* tab = std::get_if<TabulatedChannel>(&*channel)) {
        return tab->times.back();
    }
    throw InvalidInput("t_max: required for constant-rate channels");
}

}  // namespace ptpm::cli
