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


#include "pauli_tpm/reversibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pauli_tpm/error.hpp"
#include "pauli_tpm/parallel.hpp"
#include "pauli_tpm/tpm_entropy.hpp"

namespace ptpm {

namespace {

// phi below -kPhiTol is a genuine CP violation rather than round-off.
constexpr double kPhiTol = 1e-12;

void check_open_lambda(double lambda, const char* what) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw InvalidInput(std::string(what) + ": lambda must lie in [0, 1) (got " + std::to_string(lambda) + ")");
    }
}

// ln((1+x)/(1-x)) = 2 artanh(x)
double log_ratio(double x) { return 2.0 * std::atanh(x); }

DivisibilityClass point_divisibility(const std::array<double, 3>& g) {
    for (const auto& [a, b] : kPauliPairs) {
        if (g[a - 1] + g[b - 1] < -kDivisibilityTol) {
            return DivisibilityClass::EssentiallyNonMarkovian;
        }
    }
    for (double x : g) {
        if (x < -kDivisibilityTol) {
            return DivisibilityClass::PDivisibleOnly;
        }
    }
    return DivisibilityClass::CPDivisible;
}

double lambda_of_phi(double phi) {
    return std::max(std::exp(-2.0 * phi), std::numeric_limits<double>::min());
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::I:
            return "I";
        case Regime::II:
            return "II";
        case Regime::III:
            return "III";
    }
    return "?";
}

double f_function(double lambda) {
    check_open_lambda(lambda, "f_function");
    return 0.5 * lambda * log_ratio(lambda) - 1.0;
}

double mean_rate(double lambda, double gamma_sum) {
    if (lambda == 1.0) {
        throw NumericalFailure("mean entropy rate diverges at lambda = 1");
    }
    check_open_lambda(lambda, "mean_rate");
    return lambda * log_ratio(lambda) * gamma_sum;
}

double second_moment_rate(double lambda, double d_mean) {
    if (lambda == 1.0) {
        throw NumericalFailure("second-moment rate diverges at lambda = 1");
    }
    check_open_lambda(lambda, "second_moment_rate");
    return -2.0 * (1.0 + 0.5 * std::log((1.0 - lambda * lambda) / 4.0)) * d_mean;
}

double var_rate(double lambda, double d_mean) {
    if (lambda == 1.0) {
        throw NumericalFailure("variance rate diverges at lambda = 1");
    }
    return 2.0 * f_function(lambda) * d_mean;
}

double solve_x_star() {
    return bisect([](double x) { return x * log_ratio(x) - 2.0; }, 0.5, 0.99, {1e-12, 200});
}

double x_star() {
    static const double value = solve_x_star();
    return value;
}

double phi_star() {
    static const double value = -0.5 * std::log(x_star());
    return value;
}

RegimeReport classify_regime(double phi_t1, double phi_t2) {
    if (!std::isfinite(phi_t1) || !std::isfinite(phi_t2)) {
        throw InvalidInput("phi values must be finite");
    }
    if (phi_t1 < 0.0 || phi_t2 < 0.0) {
        throw InvalidInput("phi < 0 at a window endpoint: the map is not completely positive there");
    }
    double threshold = phi_star();
    RegimeReport report;
    report.phi_t1 = phi_t1;
    report.phi_t2 = phi_t2;
    bool start_nonneg_f = phi_t1 <= threshold;
    bool end_nonneg_f = phi_t2 <= threshold;
    if (start_nonneg_f && end_nonneg_f) {
        report.regime = Regime::I;
    } else if (!start_nonneg_f && end_nonneg_f) {
        report.regime = Regime::II;
    } else if (!start_nonneg_f && !end_nonneg_f) {
        report.regime = Regime::III;
    } else {
        throw InvalidInput("phi rises across the window (phi_t1 <= phi* < phi_t2); "
                           "gamma_1 + gamma_2 cannot be negative on it");
    }
    return report;
}

RegimeReport classify_regime(const TimeWindow& window, const ScalarFn& phi) {
    if (!(window.end > window.begin)) {
        throw InvalidInput("regime window must satisfy t1 < t2");
    }
    RegimeReport report = classify_regime(phi(window.begin), phi(window.end));
    report.window = window;
    if (report.regime == Regime::II) {
        double threshold = phi_star();
        report.t3 = bisect([&](double t) { return phi(t) - threshold; }, window.begin, window.end);
    }
    return report;
}

AnalysisPoint analyze_point(const RateFunctions& rates, double t, double zeta0, const ScanOptions& opts) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw InvalidInput("analysis time must be finite and positive");
    }
    if (!(zeta0 >= -1.0 && zeta0 <= 1.0)) {
        throw InvalidInput("zeta0 must lie in [-1, 1]");
    }
    AnalysisPoint pt;
    pt.t = t;
    ScalarFn gsum = rates.pair_sum_fn(1, 2);
    pt.phi = integrate(gsum, 0.0, t, opts.quadrature);
    if (pt.phi < -kPhiTol) {
        throw InvalidInput("phi = " + std::to_string(pt.phi) + " < 0 at t = " + std::to_string(t) +
                           ": lambda > 1, the dynamics is not completely positive");
    }
    ProbabilityVector p = probabilities_from_rates(rates, t, opts.quadrature);
    pt.lambda = std::clamp(1.0 - 2.0 * p.pair_sum(1, 2), std::numeric_limits<double>::min(), 1.0);
    auto g = rates.gammas(t);
    pt.gamma_sum = g[0] + g[1];
    pt.divisibility = point_divisibility(g);

    auto moments_at = [&](double lambda) { return mean_and_variance(TpmSetup::from_zeta(zeta0, lambda)); };
    EntropyMoments here = moments_at(pt.lambda);
    pt.mean = here.mean;
    pt.variance = here.variance;

    double h = std::min(opts.fd_step, 0.5 * t);
    auto moments_after = [&](double from, double to, double base) {
        double phi_to = base + integrate(gsum, from, to, opts.quadrature);
        return moments_at(lambda_of_phi(std::max(phi_to, 0.0)));
    };
    EntropyMoments minus = moments_after(t, t - h, pt.phi);
    if (!opts.fd_limit || t + h <= *opts.fd_limit) {
        EntropyMoments plus = moments_after(t, t + h, pt.phi);
        pt.fd_d_mean = (plus.mean - minus.mean) / (2.0 * h);
        pt.fd_d_var = (plus.variance - minus.variance) / (2.0 * h);
    } else {
        EntropyMoments minus2 = moments_after(t, t - 2.0 * h, pt.phi);
        pt.fd_d_mean = (3.0 * here.mean - 4.0 * minus.mean + minus2.mean) / (2.0 * h);
        pt.fd_d_var = (3.0 * here.variance - 4.0 * minus.variance + minus2.variance) / (2.0 * h);
    }

    pt.analytic = zeta0 == 1.0;
    if (!pt.analytic) {
        pt.f = std::numeric_limits<double>::quiet_NaN();
        pt.d_mean = pt.fd_d_mean;
        pt.d_var = pt.fd_d_var;
        pt.singular = pt.lambda >= 1.0;
        return pt;
    }
    if (pt.lambda >= 1.0) {
        pt.singular = true;
        pt.f = std::numeric_limits<double>::infinity();
        if (pt.gamma_sum == 0.0) {
            pt.d_mean = 0.0;
            pt.d_var = 0.0;
        } else {
            pt.d_mean = std::copysign(std::numeric_limits<double>::infinity(), pt.gamma_sum);
            pt.d_var = pt.d_mean;
        }
        return pt;
    }
    pt.f = f_function(pt.lambda);
    pt.d_mean = mean_rate(pt.lambda, pt.gamma_sum);
    pt.d_var = var_rate(pt.lambda, pt.d_mean);
    return pt;
}

std::vector<AnalysisPoint> scan_trajectory(const RateFunctions& rates, double horizon, double zeta0,
                                           const ScanOptions& opts) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw InvalidInput("scan horizon must be finite and positive");
    }
    if (opts.grid_points < 1) {
        throw InvalidInput("scan needs at least one grid point");
    }
    double h = horizon / static_cast<double>(opts.grid_points);
    ScanOptions point_opts = opts;
    if (!point_opts.fd_limit) {
        point_opts.fd_limit = horizon;
    }
    std::vector<AnalysisPoint> out(opts.grid_points);
    parallel_for(opts.grid_points, opts.jobs, [&](std::size_t k) {
        double t = (k + 1 == opts.grid_points) ? horizon : h * static_cast<double>(k + 1);
        out[k] = analyze_point(rates, t, zeta0, point_opts);
    });
    return out;
}

}  // namespace ptpm
