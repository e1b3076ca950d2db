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


#include "pauli_tpm/cli/commands.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

#include "json.hpp"
#include "pauli_tpm/error.hpp"
#include "pauli_tpm/example_family.hpp"
#include "pauli_tpm/parallel.hpp"

namespace ptpm::cli {

namespace {

using nlohmann::ordered_json;

// nlohmann writes NaN/inf as null; keep that explicit.
ordered_json json_real(double v) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return v;
}

std::string flag_for(DivisibilityClass c) {
    switch (c) {
        case DivisibilityClass::CPDivisible:
            return "cp";
        case DivisibilityClass::PDivisibleOnly:
            return "p";
        case DivisibilityClass::EssentiallyNonMarkovian:
            return "enm";
    }
    return "?";
}

std::string describe_channel(const ScenarioConfig& cfg) {
    return std::visit(
        [](const auto& ch) -> std::string {
            using T = std::decay_t<decltype(ch)>;
            if constexpr (std::is_same_v<T, ExampleChannel>) {
                return fmt::format("example alpha={} beta={} kappa={}", format_real(ch.params.alpha),
                                   format_real(ch.params.beta), format_real(ch.kappa));
            } else if constexpr (std::is_same_v<T, ConstantChannel>) {
                return fmt::format("constant rates={},{},{}", format_real(ch.rates[0]), format_real(ch.rates[1]),
                                   format_real(ch.rates[2]));
            } else {
                return fmt::format("tabulated rows={}", ch.times.size());
            }
        },
        *cfg.channel);
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const IoError*>(&e) != nullptr) {
        return kExitIo;
    }
    if (dynamic_cast<const NumericalFailure*>(&e) != nullptr ||
        dynamic_cast<const DivergentEntropy*>(&e) != nullptr) {
        return kExitNumerical;
    }
    return kExitInvalidInput;
}

std::string format_real(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return fmt::format("{:.12g}", v);
}

Constants compute_constants() { return {x_star(), phi_star(), solve_z_max(), beta_bar()}; }

void write_constants(const Constants& c, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::Json) {
        ordered_json j;
        j["x_star"] = c.x_star;
        j["phi_star"] = c.phi_star;
        j["z_max"] = c.z_max;
        j["beta_bar"] = c.beta_bar;
        out << j.dump(2) << '\n';
        return;
    }
    out << fmt::format("x_star   = {:.10g}\n", c.x_star);
    out << fmt::format("phi_star = {:.10g}\n", c.phi_star);
    out << fmt::format("z_max    = {:.10g}\n", c.z_max);
    out << fmt::format("beta_bar = {:.10g}\n", c.beta_bar);
}

std::vector<AnalysisPoint> simulate(const ScenarioConfig& config) {
    config.validate();
    ScanOptions opts;
    opts.grid_points = config.grid;
    opts.jobs = config.jobs;
    return scan_trajectory(config.rates(), config.horizon(), config.zeta0, opts);
}

void write_simulation(const std::vector<AnalysisPoint>& rows, const ScenarioConfig& config, std::ostream& out) {
    std::string channel = describe_channel(config);
    if (config.format == OutputFormat::Json) {
        ordered_json j;
        j["schema"] = std::string("pauli-tpm/simulate/") + kSchemaVersion;
        j["channel"] = channel;
        j["zeta0"] = config.zeta0;
        j["t_max"] = config.horizon();
        j["grid"] = config.grid;
        ordered_json arr = ordered_json::array();
        for (const auto& p : rows) {
            ordered_json r;
            r["t"] = json_real(p.t);
            r["lambda"] = json_real(p.lambda);
            r["phi"] = json_real(p.phi);
            r["gamma_sum"] = json_real(p.gamma_sum);
            r["f"] = json_real(p.f);
            r["mean"] = json_real(p.mean);
            r["var"] = json_real(p.variance);
            r["d_mean"] = json_real(p.d_mean);
            r["d_var"] = json_real(p.d_var);
            r["divisibility_flag"] = flag_for(p.divisibility);
            arr.push_back(std::move(r));
        }
        j["rows"] = std::move(arr);
        out << j.dump(2) << '\n';
        return;
    }
    out << "# pauli-tpm simulate " << kSchemaVersion << " columns: " << kSimulateColumns << '\n';
    out << "# channel: " << channel << "; zeta0=" << format_real(config.zeta0)
        << "; t_max=" << format_real(config.horizon()) << "; grid=" << config.grid << '\n';
    out << kSimulateColumns << '\n';
    for (const auto& p : rows) {
        out << format_real(p.t) << ',' << format_real(p.lambda) << ',' << format_real(p.phi) << ','
            << format_real(p.gamma_sum) << ',' << format_real(p.f) << ',' << format_real(p.mean) << ','
            << format_real(p.variance) << ',' << format_real(p.d_mean) << ',' << format_real(p.d_var) << ','
            << flag_for(p.divisibility) << '\n';
    }
}

ClassifyResult classify(const ExampleParams& params) {
    ClassifyResult result;
    result.params = params;
    result.admissibility = check_admissible(params);
    if (result.admissibility.ok()) {
        result.report = classify_example(params);
    }
    return result;
}

void write_classification(const ClassifyResult& result, OutputFormat format, std::ostream& out) {
    const auto& adm = result.admissibility;
    auto window = negativity_window(result.params);
    if (format == OutputFormat::Json) {
        ordered_json j;
        j["alpha"] = result.params.alpha;
        j["beta"] = result.params.beta;
        j["admissible"] = adm.ok();
        j["reason"] = adm.reason();
        j["beta_bar"] = beta_bar();
        j["phi_star"] = phi_star();
        if (window) {
            j["t1"] = window->begin;
            j["t2"] = window->end;
        }
        if (result.report) {
            j["phi_t1"] = result.report->phi_t1;
            j["phi_t2"] = result.report->phi_t2;
            j["case"] = to_string(result.report->regime);
            j["t3"] = result.report->t3 ? ordered_json(*result.report->t3) : ordered_json(nullptr);
        }
        out << j.dump(2) << '\n';
        return;
    }
    out << "alpha      = " << format_real(result.params.alpha) << '\n';
    out << "beta       = " << format_real(result.params.beta) << '\n';
    out << "admissible = " << (adm.ok() ? "yes" : "no: " + adm.reason()) << '\n';
    if (window) {
        out << "t1         = " << format_real(window->begin) << '\n';
        out << "t2         = " << format_real(window->end) << '\n';
    }
    if (result.report) {
        out << "phi_t1     = " << format_real(result.report->phi_t1) << '\n';
        out << "phi_t2     = " << format_real(result.report->phi_t2) << '\n';
    }
    out << "phi_star   = " << format_real(phi_star()) << '\n';
    if (result.report) {
        out << "case       = " << to_string(result.report->regime) << '\n';
        if (result.report->t3) {
            out << "t3         = " << format_real(*result.report->t3) << '\n';
        }
    }
}

SweepResult sweep(double beta, double alpha_lo, double alpha_hi, std::size_t steps, unsigned jobs) {
    if (!(beta > 0.0)) {
        throw InvalidInput("beta: must be positive");
    }
    if (!(alpha_lo > 0.0) || !(alpha_hi >= alpha_lo)) {
        throw InvalidInput("alpha range: need 0 < alpha_min <= alpha_max");
    }
    if (steps < 1) {
        throw InvalidInput("steps: at least one sweep point required");
    }
    if (steps > 1 && alpha_hi == alpha_lo) {
        throw InvalidInput("alpha range: alpha_min == alpha_max with more than one step");
    }
    std::vector<double> alphas = steps == 1 ? std::vector<double>{alpha_lo} : linspace(alpha_lo, alpha_hi, steps);

    SweepResult result;
    result.beta = beta;
    result.rows.resize(steps);
    parallel_for(steps, jobs, [&](std::size_t i) {
        SweepRow row;
        row.alpha = alphas[i];
        ExampleParams params{alphas[i], beta};
        Admissibility adm = check_admissible(params);
        row.window = negativity_window(params);
        row.phi_t1 = std::numeric_limits<double>::quiet_NaN();
        row.phi_t2 = std::numeric_limits<double>::quiet_NaN();
        if (row.window) {
            row.phi_t1 = phi_closed(params, row.window->begin);
            row.phi_t2 = phi_closed(params, row.window->end);
        }
        if (adm.ok()) {
            row.regime = classify_example(params).regime;
            row.flag = "ok";
        } else if (!adm.completely_positive && !adm.has_window) {
            row.flag = "not_cp;no_window";
        } else {
            row.flag = adm.completely_positive ? "no_window" : "not_cp";
        }
        result.rows[i] = std::move(row);
    });
    if (beta < 0.25 && alpha_hi > alpha_lo) {
        result.boundaries = regime_boundaries(beta, alpha_lo, alpha_hi);
    }
    return result;
}

void write_sweep(const SweepResult& result, OutputFormat format, std::ostream& out) {
    double threshold = phi_star();
    if (format == OutputFormat::Json) {
        ordered_json j;
        j["schema"] = std::string("pauli-tpm/sweep/") + kSchemaVersion;
        j["beta"] = result.beta;
        j["phi_star"] = threshold;
        j["boundary_phi_t1"] = result.boundaries.phi_t1_crossing ? ordered_json(*result.boundaries.phi_t1_crossing)
                                                                 : ordered_json(nullptr);
        j["boundary_phi_t2"] = result.boundaries.phi_t2_crossing ? ordered_json(*result.boundaries.phi_t2_crossing)
                                                                 : ordered_json(nullptr);
        ordered_json arr = ordered_json::array();
        for (const auto& row : result.rows) {
            ordered_json r;
            r["alpha"] = row.alpha;
            r["t1"] = row.window ? ordered_json(row.window->begin) : ordered_json(nullptr);
            r["t2"] = row.window ? ordered_json(row.window->end) : ordered_json(nullptr);
            r["phi_t1"] = json_real(row.phi_t1);
            r["phi_t2"] = json_real(row.phi_t2);
            r["case"] = row.regime ? ordered_json(to_string(*row.regime)) : ordered_json(nullptr);
            r["phi_star"] = threshold;
            r["flag"] = row.flag;
            arr.push_back(std::move(r));
        }
        j["rows"] = std::move(arr);
        out << j.dump(2) << '\n';
        return;
    }
    auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string("none"); };
    out << "# pauli-tpm sweep " << kSchemaVersion << " columns: " << kSweepColumns << '\n';
    out << "# beta=" << format_real(result.beta) << "; boundary alpha(phi_t1=phi_star)="
        << opt(result.boundaries.phi_t1_crossing)
        << "; boundary alpha(phi_t2=phi_star)=" << opt(result.boundaries.phi_t2_crossing) << '\n';
    out << kSweepColumns << '\n';
    double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : result.rows) {
        out << format_real(row.alpha) << ',' << format_real(row.window ? row.window->begin : nan) << ','
            << format_real(row.window ? row.window->end : nan) << ',' << format_real(row.phi_t1) << ','
            << format_real(row.phi_t2) << ',' << (row.regime ? to_string(*row.regime) : std::string("-")) << ','
            << format_real(threshold) << ',' << row.flag << '\n';
    }
}

EntropyDistribution distribution(const DistributionRequest& request) {
    if (request.lambda) {
        return entropy_distribution(TpmSetup::from_zeta(request.zeta0, *request.lambda));
    }
    if (!request.channel || !request.time) {
        throw InvalidInput("distribution: give --lambda, or a channel together with --time");
    }
    double t = *request.time;
    if (!(t >= 0.0)) {
        throw InvalidInput("time: must be non-negative");
    }
    ProbabilityVector p = probabilities_from_rates(request.channel->rates(), t);
    double lambda = 1.0 - 2.0 * p.pair_sum(1, 2);
    if (lambda > 1.0 && lambda < 1.0 + 1e-12) {
        lambda = 1.0;
    }
    return entropy_distribution(TpmSetup::from_zeta(request.zeta0, lambda), t);
}

void write_distribution(const EntropyDistribution& dist, OutputFormat format, std::ostream& out) {
    double mean = dist.moment(1);
    double variance = std::max(0.0, dist.moment(2) - mean * mean);
    if (format == OutputFormat::Json) {
        ordered_json j;
        j["zeta0"] = dist.zeta0;
        j["lambda"] = dist.lambda;
        j["t"] = dist.t ? ordered_json(*dist.t) : ordered_json(nullptr);
        ordered_json atoms = ordered_json::array();
        for (const auto& a : dist.atoms) {
            atoms.push_back({{"delta_sigma", a.value}, {"weight", a.weight}});
        }
        j["atoms"] = std::move(atoms);
        j["mean"] = mean;
        j["variance"] = variance;
        j["exp_average"] = dist.exp_average();
        out << j.dump(2) << '\n';
        return;
    }
    out << "# pauli-tpm distribution " << kSchemaVersion << " zeta0=" << format_real(dist.zeta0)
        << " lambda=" << format_real(dist.lambda);
    if (dist.t) {
        out << " t=" << format_real(*dist.t);
    }
    out << '\n';
    out << "delta_sigma,weight\n";
    for (const auto& a : dist.atoms) {
        out << format_real(a.value) << ',' << format_real(a.weight) << '\n';
    }
    out << "# mean=" << format_real(mean) << " variance=" << format_real(variance)
        << " exp_average=" << format_real(dist.exp_average()) << '\n';
}

}  // namespace ptpm::cli
