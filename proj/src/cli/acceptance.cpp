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


#include "pauli_tpm/cli/acceptance.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "pauli_tpm/error.hpp"
#include "pauli_tpm/example_family.hpp"
#include "pauli_tpm/pauli_channel.hpp"
#include "pauli_tpm/reversibility.hpp"
#include "pauli_tpm/tpm_entropy.hpp"

namespace ptpm::cli {

namespace {

constexpr double kBeta = 0.23;
constexpr std::array<double, 3> kAlphas{0.31, 0.38, 0.45};

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Average wall time of fn over `reps` calls, in milliseconds.
double time_ms(const std::function<double()>& fn, int reps = 100) {
    volatile double sink = 0.0;
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) {
        sink = sink + fn();
    }
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

CriterionResult constants() {
    CriterionResult r{1, "constants x*, phi*, z_max, beta_bar", false, {}};
    double xs = solve_x_star();
    double ps = -0.5 * std::log(xs);
    double z = solve_z_max();
    double bb = 2.0 * z * std::exp(-2.0 * z);
    double t_x = time_ms([] { return solve_x_star(); });
    double t_p = time_ms([] { return -0.5 * std::log(solve_x_star()); });
    double t_z = time_ms([] { return solve_z_max(); });
    double t_b = time_ms([] {
        double zz = solve_z_max();
        return 2.0 * zz * std::exp(-2.0 * zz);
    });
    bool ok_values = within(xs, 0.8336, 5e-4) && within(ps, 0.091, 5e-4) && within(z, 1.25, 0.01) &&
                     within(bb, 0.20, 0.01);
    bool ok_time = t_x < 1.0 && t_p < 1.0 && t_z < 1.0 && t_b < 1.0;
    r.passed = ok_values && ok_time;
    r.details.push_back(fmt::format("x* = {:.10f} (0.8336 +- 5e-4), phi* = {:.10f} (0.091 +- 5e-4)", xs, ps));
    r.details.push_back(fmt::format("z_max = {:.10f} (1.25 +- 0.01), beta_bar = {:.10f} (0.20 +- 0.01)", z, bb));
    r.details.push_back(fmt::format("runtime ms: x* {:.4f}, phi* {:.4f}, z_max {:.4f}, beta_bar {:.4f} (< 1 ms each)",
                                    t_x, t_p, t_z, t_b));
    return r;
}

CriterionResult window_endpoints() {
    CriterionResult r{2, "negativity window endpoints at beta = 0.23", false, {}};
    auto w31 = negativity_window({0.31, kBeta});
    auto w45 = negativity_window({0.45, kBeta});
    double lo = -INFINITY;
    double hi = INFINITY;
    for (double a : kAlphas) {
        auto w = negativity_window({a, kBeta});
        lo = std::max(lo, w->begin);
        hi = std::min(hi, w->end);
    }
    r.passed = within(w31->begin, 1.43, 0.01) && within(w45->end, 2.28, 0.01) && within(lo, 1.43, 0.01) &&
               within(hi, 2.28, 0.01);
    r.details.push_back(fmt::format("t1(alpha=0.31) = {:.6f}, t2(alpha=0.45) = {:.6f}", w31->begin, w45->end));
    r.details.push_back(fmt::format("intersection over alpha in {{0.31, 0.38, 0.45}} = [{:.6f}, {:.6f}] "
                                    "(target [1.43, 2.28] +- 0.01)",
                                    lo, hi));
    return r;
}

// Sign pattern of d_var strictly inside the window against a case.
bool pattern_matches(const std::vector<double>& d_var, Regime regime) {
    switch (regime) {
        case Regime::I:
            return std::all_of(d_var.begin(), d_var.end(), [](double v) { return v <= 0.0; });
        case Regime::III:
            return std::all_of(d_var.begin(), d_var.end(), [](double v) { return v >= 0.0; });
        case Regime::II: {
            int changes = 0;
            int first = 0;
            int last = 0;
            for (double v : d_var) {
                int s = sign_of(v);
                if (s == 0) {
                    continue;
                }
                if (first == 0) {
                    first = s;
                } else if (s != last) {
                    ++changes;
                }
                last = s;
            }
            return changes == 1 && first > 0 && last < 0;
        }
    }
    return false;
}

CriterionResult regimes() {
    CriterionResult r{3, "regime reproduction at beta = 0.23 (I, II, III for alpha = 0.31, 0.38, 0.45)", false, {}};
    constexpr std::array<Regime, 3> expected{Regime::I, Regime::II, Regime::III};
    r.passed = true;
    for (std::size_t i = 0; i < kAlphas.size(); ++i) {
        ExampleParams params{kAlphas[i], kBeta};
        RegimeReport report = classify_example(params);
        auto window = *negativity_window(params);
        ScanOptions opts;
        opts.grid_points = 2000;
        opts.jobs = 0;
        auto points = scan_trajectory(default_rate_split(params), default_horizon(params), 1.0, opts);
        std::vector<double> inside;
        std::size_t positive = 0;
        for (const auto& p : points) {
            if (p.t > window.begin && p.t < window.end) {
                inside.push_back(p.d_var);
                positive += p.d_var > 0.0 ? 1 : 0;
            }
        }
        bool case_ok = report.regime == expected[i];
        bool pattern_ok = pattern_matches(inside, expected[i]);
        bool self_consistent = pattern_matches(inside, report.regime);
        r.passed = r.passed && case_ok && pattern_ok;
        r.details.push_back(fmt::format(
            "alpha = {:.2f}: expected case {}, classifier says {} (phi_t1 = {:.6f}, phi_t2 = {:.6f}, phi* = {:.6f}); "
            "d_var > 0 at {}/{} window points; sign pattern of expected case {}; of computed case {}",
            kAlphas[i], to_string(expected[i]), to_string(report.regime), report.phi_t1, report.phi_t2, phi_star(),
            positive, inside.size(), pattern_ok ? "holds" : "violated", self_consistent ? "holds" : "violated"));
    }
    return r;
}

CriterionResult oracle_equivalence() {
    CriterionResult r{4, "closed-form moments vs direct enumeration", false, {}};
    double worst = 0.0;
    for (double zeta : linspace(0.1, 1.0, 10)) {
        for (double lambda : linspace(0.05, 0.95, 10)) {
            auto setup = TpmSetup::from_zeta(zeta, lambda);
            for (int order = 1; order <= 4; ++order) {
                worst = std::max(worst, std::abs(moment_closed_form(order, setup) - moment_oracle(order, setup)));
            }
        }
    }
    r.passed = worst < 1e-12;
    r.details.push_back(fmt::format("max |closed - oracle| over 10x10 grid, l = 1..4: {:.3e} (< 1e-12)", worst));
    return r;
}

CriterionResult analytic_vs_numeric() {
    CriterionResult r{5, "analytic entropy rates vs finite differences of the TPM moments", false, {}};
    r.passed = true;
    ScanOptions opts;
    opts.fd_step = 1e-4;
    for (double alpha : kAlphas) {
        ExampleParams params{alpha, kBeta};
        RateFunctions rates = default_rate_split(params);
        auto times = linspace(0.1, 10.0, 2000);
        std::vector<AnalysisPoint> pts(times.size());
        for (std::size_t k = 0; k < times.size(); ++k) {
            pts[k] = analyze_point(rates, times[k], 1.0, opts);
        }
        double worst_mean = 0.0;
        double worst_var = 0.0;
        std::size_t checked = 0;
        for (const auto& p : pts) {
            if (std::abs(p.d_mean) <= 1e-6) {
                continue;
            }
            ++checked;
            worst_mean = std::max(worst_mean, std::abs(p.fd_d_mean - p.d_mean) / std::abs(p.d_mean));
            worst_var = std::max(worst_var, std::abs(p.fd_d_var - p.d_var) / std::abs(p.d_var));
        }
        bool ok = worst_mean < 1e-4 && worst_var < 1e-4;
        r.passed = r.passed && ok;
        r.details.push_back(fmt::format("alpha = {:.2f}: {} points, max rel err mean rate {:.3e}, variance rate {:.3e}",
                                        alpha, checked, worst_mean, worst_var));
    }
    return r;
}

CriterionResult identities() {
    CriterionResult r{6, "algebraic identities on random admissible inputs", false, {}};
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double bb = beta_bar();
    std::size_t samples = 0;
    double worst_lambda = 0.0;
    double worst_var = 0.0;
    double min_f = INFINITY;
    std::size_t sign_failures = 0;
    ScanOptions opts;
    while (samples < 10000) {
        ExampleParams params{0.2 + 0.8 * u(rng), bb + (0.25 - bb) * (0.001 + 0.998 * u(rng))};
        RateFunctions rates = default_rate_split(params, kDefaultKappa, 1.0, 2);
        for (int k = 0; k < 10; ++k, ++samples) {
            double t = 1e-3 + (default_horizon(params) - 1e-3) * u(rng);
            AnalysisPoint p = analyze_point(rates, t, 1.0, opts);
            worst_lambda = std::max(worst_lambda, std::abs(p.lambda - std::exp(-2.0 * p.phi)));
            worst_var = std::max(worst_var, std::abs(p.d_var - 2.0 * p.f * p.d_mean));
            min_f = std::min(min_f, p.f);
            sign_failures += sign_of(p.d_mean) != sign_of(p.gamma_sum) ? 1 : 0;
        }
    }

    // P-divisible families: pair sums h_i = c_i + a_i exp(-b_i t) >= 0, individual rates free in sign.
    std::size_t pdiv_samples = 0;
    std::size_t pdiv_failures = 0;
    while (pdiv_samples < 10000) {
        std::array<ScalarFn, 3> h;
        for (auto& hi : h) {
            double c = 0.5 * u(rng);
            double a = -c + (1.0 + c) * u(rng);
            double b = 0.1 + 2.0 * u(rng);
            hi = [=](double t) { return c + a * std::exp(-b * t); };
        }
        // h[0] = g1 + g2, h[1] = g1 + g3, h[2] = g2 + g3
        RateFunctions rates([h](double t) { return 0.5 * (h[0](t) + h[1](t) - h[2](t)); },
                            [h](double t) { return 0.5 * (h[0](t) + h[2](t) - h[1](t)); },
                            [h](double t) { return 0.5 * (h[1](t) + h[2](t) - h[0](t)); });
        for (int k = 0; k < 50; ++k, ++pdiv_samples) {
            double t = 1e-3 + 10.0 * u(rng);
            AnalysisPoint p = analyze_point(rates, t, 1.0, opts);
            bool ok = p.singular ? p.d_mean >= 0.0 : (p.d_mean >= 0.0 && p.fd_d_mean >= -1e-9);
            pdiv_failures += ok ? 0 : 1;
        }
    }

    r.passed = worst_lambda <= 1e-10 && worst_var <= 1e-12 && min_f >= -1.0 && sign_failures == 0 &&
               pdiv_failures == 0;
    r.details.push_back(fmt::format("{} samples: max |lambda - exp(-2 phi)| = {:.3e} (<= 1e-10), "
                                    "max |d_var - 2 f d_mean| = {:.3e} (<= 1e-12)",
                                    samples, worst_lambda, worst_var));
    r.details.push_back(fmt::format("min f = {:.6f} (>= -1), sign(d_mean) != sign(gamma_sum) in {} samples",
                                    min_f, sign_failures));
    r.details.push_back(fmt::format("P-divisible families: {} samples, d_mean < 0 in {}", pdiv_samples,
                                    pdiv_failures));
    return r;
}

CriterionResult channel_round_trip() {
    CriterionResult r{7, "rates -> probabilities -> rates round trip and CP of the default split", false, {}};
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto grid = linspace(0.0, 5.0, 5001);
    double worst_rate = 0.0;
    double worst_sum = 0.0;
    for (int family = 0; family < 20; ++family) {
        std::array<ScalarFn, 3> g;
        for (auto& gi : g) {
            double a = -0.3 + 0.8 * u(rng);
            double b = -0.5 + u(rng);
            double c = 0.2 + 1.3 * u(rng);
            double d = -0.3 + 0.6 * u(rng);
            double w = 0.2 + 1.3 * u(rng);
            gi = [=](double t) { return a + b * std::exp(-c * t) + d * std::cos(w * t); };
        }
        RateFunctions rates(g[0], g[1], g[2]);
        ProbabilityTrajectory traj{grid, probabilities_on_grid(rates, grid)};
        for (const auto& p : traj.values) {
            worst_sum = std::max(worst_sum, std::abs(p.sum() - 1.0));
        }
        for (std::size_t k = 0; k < grid.size(); k += 50) {
            auto recovered = rates_from_probabilities(traj, grid[k]);
            auto exact = rates.gammas(grid[k]);
            for (int i = 0; i < 3; ++i) {
                worst_rate = std::max(worst_rate, std::abs(recovered[i] - exact[i]));
            }
        }
    }
    std::size_t cp_failures = 0;
    for (double alpha : linspace(0.25, 0.55, 31)) {
        ExampleParams params{alpha, kBeta};
        try {
            RateFunctions rates = default_rate_split(params, kDefaultKappa);
            auto cp_grid = linspace(0.0, default_horizon(params), 2000);
            for (const auto& p : probabilities_on_grid(rates, cp_grid)) {
                cp_failures += check_cp(p).ok ? 0 : 1;
            }
        } catch (const InvalidInput&) {
            ++cp_failures;
        }
    }
    r.passed = worst_rate <= 1e-6 && worst_sum <= 1e-12 && cp_failures == 0;
    r.details.push_back(fmt::format("20 random smooth families on [0, 5]: max |gamma_recovered - gamma| = {:.3e} "
                                    "(<= 1e-6), max |sum p - 1| = {:.3e} (<= 1e-12)",
                                    worst_rate, worst_sum));
    r.details.push_back(fmt::format("kappa = 0.3 split, alpha in [0.25, 0.55] (31 values): {} CP violations",
                                    cp_failures));
    return r;
}

CriterionResult kappa_independence() {
    CriterionResult r{8, "entropy statistics independent of kappa", false, {}};
    double worst = 0.0;
    ScanOptions opts;
    opts.jobs = 0;
    for (double alpha : kAlphas) {
        ExampleParams params{alpha, kBeta};
        auto ref = scan_trajectory(default_rate_split(params, 0.3), default_horizon(params), 1.0, opts);
        for (double kappa : {0.5, 1.0}) {
            auto other = scan_trajectory(default_rate_split(params, kappa), default_horizon(params), 1.0, opts);
            for (std::size_t k = 0; k < ref.size(); ++k) {
                worst = std::max(worst, std::abs(ref[k].mean - other[k].mean));
                worst = std::max(worst, std::abs(ref[k].variance - other[k].variance));
            }
        }
    }
    r.passed = worst <= 1e-12;
    r.details.push_back(fmt::format("max |difference| in mean/variance across kappa in {{0.3, 0.5, 1.0}}: {:.3e} "
                                    "(<= 1e-12)",
                                    worst));
    return r;
}

bool is_delta_at_zero(const EntropyDistribution& d) {
    return d.atoms.size() == 1 && d.atoms[0].value == 0.0 && std::abs(d.atoms[0].weight - 1.0) <= 1e-12;
}

CriterionResult reversible_limits() {
    CriterionResult r{9, "reversible limits give a delta at zero", false, {}};
    RateFunctions identity = RateFunctions::constant(0.0, 0.0, 0.0);
    bool ok = true;
    for (double t : {0.0, 1.0, 10.0}) {
        ProbabilityVector p = probabilities_from_rates(identity, t);
        auto setup = TpmSetup::from_zeta(1.0, 1.0 - 2.0 * p.pair_sum(1, 2));
        auto m = mean_and_variance(setup);
        ok = ok && is_delta_at_zero(entropy_distribution(setup)) && m.mean == 0.0 && m.variance == 0.0;
    }
    r.details.push_back(std::string("zeta0 = 1, identity channel: ") + (ok ? "delta at 0" : "NOT a delta at 0"));
    bool ok_mixed = true;
    ExampleParams params{0.38, kBeta};
    RateFunctions rates = default_rate_split(params);
    std::vector<double> lambdas{0.05, 0.5, 0.95, 1.0};
    for (double t : {0.5, 2.0, 5.0, 20.0}) {
        ProbabilityVector p = probabilities_from_rates(rates, t);
        lambdas.push_back(1.0 - 2.0 * p.pair_sum(1, 2));
    }
    for (double lambda : lambdas) {
        auto setup = TpmSetup::from_zeta(0.0, lambda);
        auto m = mean_and_variance(setup);
        ok_mixed = ok_mixed && is_delta_at_zero(entropy_distribution(setup)) && m.mean == 0.0 && m.variance == 0.0;
    }
    r.details.push_back(std::string("zeta0 = 0, ") + std::to_string(lambdas.size()) +
                        " channels: " + (ok_mixed ? "delta at 0" : "NOT a delta at 0"));
    r.passed = ok && ok_mixed;
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
    std::vector<std::function<CriterionResult()>> checks{constants,        window_endpoints,   regimes,
                                                         oracle_equivalence, analytic_vs_numeric, identities,
                                                         channel_round_trip, kappa_independence, reversible_limits};
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        try {
            out.push_back(checks[i]());
        } catch (const std::exception& e) {
            CriterionResult failed{static_cast<int>(i + 1), "criterion raised an error", false, {}};
            failed.details.push_back(e.what());
            out.push_back(std::move(failed));
        }
    }
    return out;
}

bool report_acceptance(const std::vector<CriterionResult>& results, std::ostream& out) {
    bool all = true;
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.title << '\n';
        for (const auto& d : r.details) {
            out << "       " << d << '\n';
        }
        all = all && r.passed;
    }
    std::size_t passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    out << passed << "/" << results.size() << " acceptance criteria passed\n";
    return all;
}

}  // namespace ptpm::cli
