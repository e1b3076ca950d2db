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


#include "pauli_tpm/example_family.hpp"

#include <cmath>
#include <string>

#include "pauli_tpm/error.hpp"

namespace ptpm {

namespace {

void check_params(const ExampleParams& params) {
    if (!(params.alpha > 0.0) || !std::isfinite(params.alpha)) {
        throw InvalidInput("alpha must be finite and positive");
    }
    if (!(params.beta > 0.0) || !std::isfinite(params.beta)) {
        throw InvalidInput("beta must be finite and positive");
    }
}

}  // namespace

std::string Admissibility::reason() const {
    if (ok()) {
        return "admissible";
    }
    std::string out;
    if (!completely_positive) {
        out = "beta <= beta_bar: phi_t becomes negative, the map is not completely positive";
    }
    if (!has_window) {
        if (!out.empty()) {
            out += "; ";
        }
        out += "beta >= 1/4: gamma_1 + gamma_2 never turns negative (always P-divisible)";
    }
    return out;
}

double gamma_sum(const ExampleParams& params, double t) {
    double e = std::exp(-params.alpha * t);
    return params.beta - e * (1.0 - e);
}

double phi_closed(const ExampleParams& params, double t) {
    double one_minus = -std::expm1(-params.alpha * t);
    return params.beta * t - one_minus * one_minus / (2.0 * params.alpha);
}

std::optional<TimeWindow> negativity_window(const ExampleParams& params) {
    check_params(params);
    if (params.beta >= 0.25) {
        return std::nullopt;
    }
    double root = std::sqrt(1.0 - 4.0 * params.beta);
    return TimeWindow{-std::log(0.5 + 0.5 * root) / params.alpha, -std::log(0.5 - 0.5 * root) / params.alpha};
}

double solve_z_max() {
    // z = 0 is the trivial root; the positive one lies in (1, 2).
    return bisect([](double z) { return std::exp(z) - 1.0 - 2.0 * z; }, 1.0, 2.0, {1e-12, 200});
}

double beta_bar() {
    static const double value = [] {
        double z = solve_z_max();
        return 2.0 * z * std::exp(-2.0 * z);
    }();
    return value;
}

Admissibility check_admissible(const ExampleParams& params) {
    check_params(params);
    return {params.beta > beta_bar(), params.beta < 0.25};
}

RegimeReport classify_example(const ExampleParams& params) {
    Admissibility adm = check_admissible(params);
    if (!adm.ok()) {
        throw InvalidInput("inadmissible (alpha, beta) = (" + std::to_string(params.alpha) + ", " +
                           std::to_string(params.beta) + "): " + adm.reason());
    }
    return classify_regime(*negativity_window(params), [&](double t) { return phi_closed(params, t); });
}

double default_horizon(const ExampleParams& params) {
    check_params(params);
    return 10.0 / params.alpha;
}

RateFunctions default_rate_split(const ExampleParams& params, double kappa, std::optional<double> horizon,
                                 std::size_t grid_points) {
    check_params(params);
    if (!std::isfinite(kappa)) {
        throw InvalidInput("kappa must be finite");
    }
    auto half = [params](double t) { return 0.5 * gamma_sum(params, t); };
    RateFunctions rates(half, half, [kappa](double) { return kappa; });

    double t_max = horizon.value_or(default_horizon(params));
    if (!(t_max > 0.0) || grid_points < 2) {
        throw InvalidInput("CP validation needs a positive horizon and at least two grid points");
    }
    auto grid = linspace(0.0, t_max, grid_points);
    auto probs = probabilities_on_grid(rates, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CpCheck cp = check_cp(probs[k]);
        if (!cp.ok) {
            int alpha = cp.violations.front();
            throw InvalidInput("rate split with kappa = " + std::to_string(kappa) + " is not CP: p_" +
                               std::to_string(alpha) + " = " + std::to_string(probs[k][alpha]) +
                               " < 0 first at t = " + std::to_string(grid[k]));
        }
    }
    return rates;
}

RegimeBoundaries regime_boundaries(double beta, double alpha_lo, double alpha_hi) {
    if (!(alpha_lo > 0.0 && alpha_hi > alpha_lo)) {
        throw InvalidInput("alpha range must satisfy 0 < alpha_lo < alpha_hi");
    }
    if (!(beta > 0.0 && beta < 0.25)) {
        throw InvalidInput("regime boundaries need 0 < beta < 1/4");
    }
    double threshold = phi_star();
    auto endpoint_phi = [&](double alpha, bool start) {
        ExampleParams p{alpha, beta};
        auto w = *negativity_window(p);
        return phi_closed(p, start ? w.begin : w.end) - threshold;
    };
    auto crossing = [&](bool start) -> std::optional<double> {
        ScalarFn fn = [&](double a) { return endpoint_phi(a, start); };
        if (std::signbit(fn(alpha_lo)) == std::signbit(fn(alpha_hi))) {
            return std::nullopt;
        }
        return bisect(fn, alpha_lo, alpha_hi);
    };
    return {crossing(true), crossing(false)};
}

}  // namespace ptpm
