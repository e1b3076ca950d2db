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


#include "pauli_tpm/pauli_channel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "pauli_tpm/error.hpp"

namespace ptpm {

namespace {

void check_axis(int alpha) {
    if (alpha < 1 || alpha > 3) {
        throw InvalidInput("Pauli axis index must be 1, 2 or 3 (got " + std::to_string(alpha) + ")");
    }
}

// (1 - exp(-2A))/2 without cancellation for small A.
double pair_probability(double integral) { return -0.5 * std::expm1(-2.0 * integral); }

constexpr std::size_t kStencil = 5;

// Value and derivative at t of the Lagrange polynomial through (x[k], y[k]).
std::array<double, 2> lagrange(std::span<const double> x, std::span<const double> y, double t) {
    double value = 0.0;
    double slope = 0.0;
    const std::size_t n = x.size();
    for (std::size_t j = 0; j < n; ++j) {
        double basis = 1.0;
        double basis_slope = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            if (m == j) {
                continue;
            }
            double term = 1.0 / (x[j] - x[m]);
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j && k != m) {
                    term *= (t - x[k]) / (x[j] - x[k]);
                }
            }
            basis_slope += term;
            basis *= (t - x[m]) / (x[j] - x[m]);
        }
        value += basis * y[j];
        slope += basis_slope * y[j];
    }
    return {value, slope};
}

void check_grid(std::span<const double> grid) {
    if (grid.empty()) {
        throw InvalidInput("time grid is empty");
    }
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) {
            throw InvalidInput("time grid must be strictly increasing");
        }
    }
}

// Maximal runs where fn(t) < -tol, endpoints refined by bisection.
std::vector<ViolationWindow> negative_windows(const ScalarFn& fn, std::span<const double> grid, double tol,
                                              int first, int second) {
    constexpr BisectionOptions kRefine{1e-10, 200};
    auto refine = [&](double lo, double hi) {
        // Prefer the zero crossing; fall back to the -tol crossing when the
        // bracket sits entirely below zero.
        double flo = fn(lo);
        double fhi = fn(hi);
        if (std::signbit(flo) != std::signbit(fhi)) {
            return bisect(fn, lo, hi, kRefine);
        }
        return bisect([&](double t) { return fn(t) + tol; }, lo, hi, kRefine);
    };

    std::vector<ViolationWindow> out;
    std::vector<double> values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        values[k] = fn(grid[k]);
    }
    std::size_t k = 0;
    while (k < grid.size()) {
        if (values[k] >= -tol) {
            ++k;
            continue;
        }
        std::size_t start = k;
        while (k < grid.size() && values[k] < -tol) {
            ++k;
        }
        ViolationWindow w{first, second};
        if (start == 0) {
            w.begin = grid.front();
            w.open_at_begin = true;
        } else {
            w.begin = refine(grid[start - 1], grid[start]);
        }
        if (k == grid.size()) {
            w.end = grid.back();
            w.open_at_end = true;
        } else {
            w.end = refine(grid[k - 1], grid[k]);
        }
        out.push_back(w);
    }
    return out;
}

}  // namespace

RateFunctions::RateFunctions(ScalarFn gamma1, ScalarFn gamma2, ScalarFn gamma3)
    : gamma_{std::move(gamma1), std::move(gamma2), std::move(gamma3)} {
    for (const auto& g : gamma_) {
        if (!g) {
            throw InvalidInput("rate function is empty");
        }
    }
}

RateFunctions RateFunctions::constant(double g1, double g2, double g3) {
    return RateFunctions([g1](double) { return g1; }, [g2](double) { return g2; }, [g3](double) { return g3; });
}

RateFunctions RateFunctions::tabulated(std::vector<double> times, std::array<std::vector<double>, 3> values) {
    if (times.size() < 2) {
        throw InvalidInput("tabulated rates need at least two samples");
    }
    check_grid(times);
    for (const auto& v : values) {
        if (v.size() != times.size()) {
            throw InvalidInput("tabulated rate columns must match the time column length");
        }
        for (double x : v) {
            if (!std::isfinite(x)) {
                throw InvalidInput("tabulated rates must be finite");
            }
        }
    }
    auto ts = std::make_shared<const std::vector<double>>(std::move(times));
    auto make = [ts](std::vector<double> column) -> ScalarFn {
        auto ys = std::make_shared<const std::vector<double>>(std::move(column));
        return [ts, ys](double t) {
            const auto& x = *ts;
            if (t < x.front() || t > x.back()) {
                throw InvalidInput("time " + std::to_string(t) + " outside the tabulated rate range");
            }
            auto it = std::upper_bound(x.begin(), x.end(), t);
            if (it == x.end()) {
                return ys->back();
            }
            auto hi = static_cast<std::size_t>(it - x.begin());
            auto lo = hi - 1;
            double w = (t - x[lo]) / (x[hi] - x[lo]);
            return (1.0 - w) * (*ys)[lo] + w * (*ys)[hi];
        };
    };
    return RateFunctions(make(std::move(values[0])), make(std::move(values[1])), make(std::move(values[2])));
}

double RateFunctions::gamma(int alpha, double t) const {
    check_axis(alpha);
    return gamma_[static_cast<std::size_t>(alpha - 1)](t);
}

std::array<double, 3> RateFunctions::gammas(double t) const { return {gamma_[0](t), gamma_[1](t), gamma_[2](t)}; }

ScalarFn RateFunctions::pair_sum_fn(int a, int b) const {
    check_axis(a);
    check_axis(b);
    if (a == b) {
        throw InvalidInput("pair sum needs two distinct axes");
    }
    return [ga = gamma_[static_cast<std::size_t>(a - 1)], gb = gamma_[static_cast<std::size_t>(b - 1)]](double t) {
        return ga(t) + gb(t);
    };
}

bool ProbabilityVector::is_invertible(double tol) const {
    for (const auto& [a, b] : kPauliPairs) {
        if (pair_sum(a, b) >= 0.5 - tol) {
            return false;
        }
    }
    return true;
}

ChannelEigenvalues ChannelEigenvalues::from_probabilities(const ProbabilityVector& p) {
    return {{1.0 - 2.0 * (p[2] + p[3]), 1.0 - 2.0 * (p[1] + p[3]), 1.0 - 2.0 * (p[1] + p[2])}};
}

std::string to_string(DivisibilityClass c) {
    switch (c) {
        case DivisibilityClass::CPDivisible:
            return "cp-divisible";
        case DivisibilityClass::PDivisibleOnly:
            return "p-divisible-only";
        case DivisibilityClass::EssentiallyNonMarkovian:
            return "essentially-non-markovian";
    }
    return "unknown";
}

ProbabilityVector probabilities_from_pair_integrals(const std::array<double, 3>& pair_integrals) {
    double s12 = pair_probability(pair_integrals[0]);
    double s13 = pair_probability(pair_integrals[1]);
    double s23 = pair_probability(pair_integrals[2]);
    ProbabilityVector out;
    out.p[1] = 0.5 * (s12 + s13 - s23);
    out.p[2] = 0.5 * (s12 + s23 - s13);
    out.p[3] = 0.5 * (s13 + s23 - s12);
    out.p[0] = 1.0 - out.p[1] - out.p[2] - out.p[3];
    return out;
}

ProbabilityVector probabilities_from_rates(const RateFunctions& rates, double t, const QuadratureOptions& opts) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidInput("probabilities_from_rates needs a finite t >= 0");
    }
    std::array<double, 3> integrals{};
    for (std::size_t k = 0; k < kPauliPairs.size(); ++k) {
        integrals[k] = integrate(rates.pair_sum_fn(kPauliPairs[k][0], kPauliPairs[k][1]), 0.0, t, opts);
    }
    return probabilities_from_pair_integrals(integrals);
}

std::vector<ProbabilityVector> probabilities_on_grid(const RateFunctions& rates, std::span<const double> grid,
                                                     const QuadratureOptions& opts) {
    if (grid.empty()) {
        return {};
    }
    if (grid.front() < 0.0) {
        throw InvalidInput("probability grid must start at t >= 0");
    }
    std::array<std::vector<double>, 3> cumulative;
    for (std::size_t k = 0; k < kPauliPairs.size(); ++k) {
        ScalarFn fn = rates.pair_sum_fn(kPauliPairs[k][0], kPauliPairs[k][1]);
        double offset = integrate(fn, 0.0, grid.front(), opts);
        cumulative[k] = integrate_cumulative(fn, grid, opts);
        for (double& v : cumulative[k]) {
            v += offset;
        }
    }
    std::vector<ProbabilityVector> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = probabilities_from_pair_integrals({cumulative[0][i], cumulative[1][i], cumulative[2][i]});
    }
    return out;
}

std::array<double, 3> rates_from_probabilities(const ProbabilityTrajectory& trajectory, double t) {
    const auto& ts = trajectory.times;
    if (ts.size() != trajectory.values.size()) {
        throw InvalidInput("trajectory times and values differ in length");
    }
    if (ts.size() < 3) {
        throw InvalidInput("rate recovery needs at least three samples");
    }
    check_grid(ts);
    double span_tol = 1e-12 * std::max(1.0, std::abs(ts.back()));
    if (t < ts.front() - span_tol || t > ts.back() + span_tol) {
        throw InvalidInput("time " + std::to_string(t) + " outside the sampled trajectory");
    }

    // Up to five consecutive samples centred on the one nearest t.
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    auto nearest = static_cast<std::size_t>(it - ts.begin());
    if (nearest == ts.size() || (nearest > 0 && t - ts[nearest - 1] < ts[nearest] - t)) {
        nearest = (nearest == 0) ? 0 : nearest - 1;
    }
    const std::size_t width = std::min(kStencil, ts.size());
    std::size_t lo = nearest >= width / 2 ? nearest - width / 2 : 0;
    lo = std::min(lo, ts.size() - width);
    std::span<const double> x(ts.data() + lo, width);

    std::array<double, 3> pair_rates{};
    std::array<double, kStencil> y{};
    for (std::size_t k = 0; k < kPauliPairs.size(); ++k) {
        auto [a, b] = kPauliPairs[k];
        for (std::size_t j = 0; j < width; ++j) {
            y[j] = trajectory.values[lo + j].pair_sum(a, b);
            if (y[j] >= 0.5 - kSingularTol) {
                throw SingularChannel("p_" + std::to_string(a) + " + p_" + std::to_string(b) +
                                      " reaches 1/2 at t = " + std::to_string(x[j]) + ": channel not invertible");
            }
        }
        auto [value, slope] = lagrange(x, std::span<const double>(y.data(), width), t);
        if (value >= 0.5 - kSingularTol) {
            throw SingularChannel("channel not invertible at t = " + std::to_string(t));
        }
        pair_rates[k] = slope / (1.0 - 2.0 * value);
    }
    // pair_rates = (g1+g2, g1+g3, g2+g3)
    return {0.5 * (pair_rates[0] + pair_rates[1] - pair_rates[2]),
            0.5 * (pair_rates[0] + pair_rates[2] - pair_rates[1]),
            0.5 * (pair_rates[1] + pair_rates[2] - pair_rates[0])};
}

QubitState apply(const ChannelEigenvalues& eigs, const QubitState& state) {
    return QubitState(eigs.lambda[0] * state.rx(), eigs.lambda[1] * state.ry(), eigs.lambda[2] * state.rz());
}

CpCheck check_cp(const ProbabilityVector& p) {
    CpCheck out;
    for (int alpha = 0; alpha < 4; ++alpha) {
        if (p[alpha] < -kCpTol) {
            out.ok = false;
            out.violations.push_back(alpha);
        }
    }
    return out;
}

DivisibilityReport classify_divisibility(const RateFunctions& rates, std::span<const double> grid, double tol) {
    check_grid(grid);
    DivisibilityReport report;
    for (int alpha = 1; alpha <= 3; ++alpha) {
        auto w = negative_windows([&](double t) { return rates.gamma(alpha, t); }, grid, tol, alpha, 0);
        report.rate_windows.insert(report.rate_windows.end(), w.begin(), w.end());
    }
    for (const auto& [a, b] : kPauliPairs) {
        auto w = negative_windows(rates.pair_sum_fn(a, b), grid, tol, a, b);
        report.pair_windows.insert(report.pair_windows.end(), w.begin(), w.end());
    }
    if (!report.pair_windows.empty()) {
        report.kind = DivisibilityClass::EssentiallyNonMarkovian;
    } else if (!report.rate_windows.empty()) {
        report.kind = DivisibilityClass::PDivisibleOnly;
    } else {
        report.kind = DivisibilityClass::CPDivisible;
    }
    return report;
}

}  // namespace ptpm
