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

#include <optional>
#include <string>

#include "pauli_tpm/pauli_channel.hpp"
#include "pauli_tpm/reversibility.hpp"

namespace ptpm {

/// Rate sum gamma_1 + gamma_2 = beta - exp(-alpha t)(1 - exp(-alpha t)).
struct ExampleParams {
    double alpha = 0.0;
    double beta = 0.0;
};

inline constexpr double kDefaultKappa = 0.3;

struct Admissibility {
    bool completely_positive = false;  ///< beta > beta_bar, so phi_t >= 0 for all t
    bool has_window = false;           ///< beta < 1/4, so the rate sum turns negative
    bool ok() const { return completely_positive && has_window; }
    std::string reason() const;
};

double gamma_sum(const ExampleParams& params, double t);

/// phi_t = beta t - (1 - exp(-alpha t))^2 / (2 alpha).
double phi_closed(const ExampleParams& params, double t);

/// Interval (t1, t2) on which gamma_sum < 0, or nullopt if beta >= 1/4.
std::optional<TimeWindow> negativity_window(const ExampleParams& params);

/// Positive root of exp(z) = 1 + 2z (the maximiser alpha t of
/// (1 - exp(-alpha t))^2 / (2 alpha t)), to 1e-12.
double solve_z_max();

/// Lower bound on beta for complete positivity, 2 z_max exp(-2 z_max).
/// Independent of alpha.
double beta_bar();

/// Throws InvalidInput for alpha <= 0 or beta <= 0.
Admissibility check_admissible(const ExampleParams& params);

/// Case of the negativity window; t3 is filled in for case II.
/// Throws InvalidInput naming the failed bound for inadmissible parameters.
RegimeReport classify_example(const ExampleParams& params);

/// gamma_1 = gamma_2 = gamma_sum / 2, gamma_3 = kappa. Validated for CP on a
/// grid_points-point grid over [0, horizon] (default 10 / alpha); throws
/// InvalidInput naming the first time with a negative Kraus weight.
RateFunctions default_rate_split(const ExampleParams& params, double kappa = kDefaultKappa,
                                 std::optional<double> horizon = std::nullopt, std::size_t grid_points = 2000);

/// Default scan horizon, 10 / alpha.
double default_horizon(const ExampleParams& params);

struct RegimeBoundaries {
    std::optional<double> phi_t1_crossing;  ///< alpha with phi_t1(alpha) = phi*
    std::optional<double> phi_t2_crossing;  ///< alpha with phi_t2(alpha) = phi*
};

/// Bisection on phi_t1(alpha) - phi* and phi_t2(alpha) - phi* over
/// [alpha_lo, alpha_hi] at fixed beta. A crossing is reported only when the
/// bracket shows a sign change.
RegimeBoundaries regime_boundaries(double beta, double alpha_lo, double alpha_hi);

}  // namespace ptpm
