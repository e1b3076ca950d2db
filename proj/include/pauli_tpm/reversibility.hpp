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
#include <string>
#include <vector>

#include "pauli_tpm/numerics.hpp"
#include "pauli_tpm/pauli_channel.hpp"

namespace ptpm {

struct TimeWindow {
    double begin = 0.0;
    double end = 0.0;
};

/// Sign pattern of the variance rate across a window where the mean entropy
/// production decreases.
///   I   : f >= 0 at both ends, variance decreases on the whole window
///   II  : f < 0 at the start, f >= 0 at the end, variance decreases after t3
///   III : f < 0 at both ends, variance increases on the whole window
enum class Regime { I, II, III };

std::string to_string(Regime r);

struct RegimeReport {
    TimeWindow window;
    double phi_t1 = 0.0;
    double phi_t2 = 0.0;
    Regime regime = Regime::I;
    std::optional<double> t3;  ///< interior crossing phi = phi*, case II only
};

/// One grid point of a trajectory scan.
///
/// For zeta0 == 1 the rates come from the closed forms and `analytic` is set;
/// fd_d_mean / fd_d_var always hold central finite differences of the TPM
/// moments. For other initial states d_mean / d_var are the finite
/// differences and f is NaN.
struct AnalysisPoint {
    double t = 0.0;
    double lambda = 1.0;
    double phi = 0.0;
    double gamma_sum = 0.0;
    double f = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    double d_mean = 0.0;
    double d_var = 0.0;
    double fd_d_mean = 0.0;
    double fd_d_var = 0.0;
    DivisibilityClass divisibility = DivisibilityClass::CPDivisible;
    bool analytic = true;
    /// lambda == 1: the mean rate prefactor diverges. d_mean and d_var are 0
    /// when gamma_sum == 0 and signed infinities otherwise.
    bool singular = false;
};

struct ScanOptions {
    std::size_t grid_points = 2000;
    double fd_step = 1e-4;
    /// Finite differences never sample rates past this time; a one-sided
    /// stencil is used within fd_step of it. scan_trajectory sets it to the
    /// horizon when unset.
    std::optional<double> fd_limit;
    unsigned jobs = 1;
    QuadratureOptions quadrature{};
};

/// f(lambda) = (lambda/2) ln((1+lambda)/(1-lambda)) - 1 on [0, 1).
double f_function(double lambda);

/// d<Delta sigma>/dt = lambda ln((1+lambda)/(1-lambda)) (gamma_1 + gamma_2),
/// valid for a pure sigma_z initial state. lambda in [0, 1).
double mean_rate(double lambda, double gamma_sum);

/// d<Delta sigma^2>/dt = -2 (1 + ln((1-lambda^2)/4)/2) d<Delta sigma>/dt.
double second_moment_rate(double lambda, double d_mean);

/// dVar/dt = 2 f(lambda) d<Delta sigma>/dt.
double var_rate(double lambda, double d_mean);

/// Unique zero of x ln((1+x)/(1-x)) - 2 on (0, 1), by bisection.
double solve_x_star();

/// Cached solve_x_star() and phi* = -ln(x*)/2, computed once on first use.
double x_star();
double phi_star();

/// Case from the integrated rate sum at the window endpoints. phi = phi*
/// counts as f >= 0. Throws InvalidInput for phi < 0 (non-CP) and for
/// phi_t1 <= phi* < phi_t2, which no window with gamma_1 + gamma_2 <= 0 can
/// produce.
RegimeReport classify_regime(double phi_t1, double phi_t2);

/// As above with phi evaluated from a trajectory; for case II the crossing
/// t3 in (t1, t2) with phi(t3) = phi* is located by bisection.
RegimeReport classify_regime(const TimeWindow& window, const ScalarFn& phi);

/// Scan t_k = k h, k = 1..grid_points, h = horizon / grid_points (the t = 0
/// singularity is never sampled). phi by quadrature of gamma_1 + gamma_2,
/// lambda = 1 - 2(p_1 + p_2) from probabilities_from_rates. Output order
/// follows the grid regardless of opts.jobs.
///
/// Throws InvalidInput if phi < 0 somewhere (lambda > 1, not CP).
std::vector<AnalysisPoint> scan_trajectory(const RateFunctions& rates, double horizon, double zeta0,
                                           const ScanOptions& opts = {});

/// Single-point version of scan_trajectory.
AnalysisPoint analyze_point(const RateFunctions& rates, double t, double zeta0, const ScanOptions& opts = {});

}  // namespace ptpm
