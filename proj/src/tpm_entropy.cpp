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


#include "pauli_tpm/tpm_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pauli_tpm/error.hpp"

namespace ptpm {

namespace {

void check_order(int order) {
    if (order < 1 || order > kMaxMomentOrder) {
        throw InvalidInput("moment order must be in [1, " + std::to_string(kMaxMomentOrder) + "] (got " +
                           std::to_string(order) + ")");
    }
}

double binomial(int n, int k) {
    double out = 1.0;
    for (int j = 1; j <= k; ++j) {
        out = out * static_cast<double>(n - k + j) / static_cast<double>(j);
    }
    return out;
}

// (ln x)^power with the 0 ln 0 = 0 convention carried by the caller: a zero
// population contributes 0 to every trace it appears in.
double log_power(double x, int power) { return power == 0 ? 1.0 : std::pow(std::log(x), power); }

constexpr double kMergeTol = 1e-12;

}  // namespace

TpmSetup::TpmSetup(QubitState initial, double lambda_z) : initial_(initial), lambda_(lambda_z) {
    if (!(lambda_z > 0.0 && lambda_z <= 1.0)) {
        throw InvalidInput("sigma_z channel eigenvalue must lie in (0, 1] (got " + std::to_string(lambda_z) + ")");
    }
}

std::array<double, 2> TpmSetup::initial_populations() const { return initial_.z_populations(); }

std::array<double, 2> TpmSetup::final_populations() const {
    double zeta = lambda_ * initial_.rz();
    return {clamp_population(0.5 * (1.0 + zeta)), clamp_population(0.5 * (1.0 - zeta))};
}

JointTable joint_distribution(const TpmSetup& setup) {
    auto p_in = setup.initial_populations();
    double stay = 0.5 * (1.0 + setup.lambda());
    double flip = 0.5 * (1.0 - setup.lambda());
    JointTable joint{};
    for (int k = 0; k < 2; ++k) {
        for (int m = 0; m < 2; ++m) {
            joint[k][m] = (k == m ? stay : flip) * p_in[k];
        }
    }
    return joint;
}

EntropyDistribution entropy_distribution(const TpmSetup& setup, std::optional<double> t) {
    EntropyDistribution dist;
    dist.zeta0 = setup.zeta0();
    dist.lambda = setup.lambda();
    dist.t = t;

    auto joint = joint_distribution(setup);
    auto p_in = setup.initial_populations();
    auto p_fin = setup.final_populations();
    for (int k = 0; k < 2; ++k) {
        if (p_in[k] == 0.0) {
            continue;
        }
        for (int m = 0; m < 2; ++m) {
            double w = joint[k][m];
            if (w == 0.0) {
                continue;
            }
            double value = std::log(p_in[k]) - std::log(p_fin[m]);
            auto same = std::find_if(dist.atoms.begin(), dist.atoms.end(),
                                     [&](const EntropyAtom& a) { return std::abs(a.value - value) <= kMergeTol; });
            if (same != dist.atoms.end()) {
                same->weight += w;
            } else {
                dist.atoms.push_back({value, w});
            }
        }
    }
    std::sort(dist.atoms.begin(), dist.atoms.end(),
              [](const EntropyAtom& a, const EntropyAtom& b) { return a.value < b.value; });
    return dist;
}

double EntropyDistribution::total_weight() const {
    double s = 0.0;
    for (const auto& a : atoms) {
        s += a.weight;
    }
    return s;
}

double EntropyDistribution::moment(int order) const {
    double s = 0.0;
    for (const auto& a : atoms) {
        s += a.weight * std::pow(a.value, order);
    }
    return s;
}

double EntropyDistribution::exp_average() const {
    double s = 0.0;
    for (const auto& a : atoms) {
        s += a.weight * std::exp(-a.value);
    }
    return s;
}

double moment_closed_form(int order, const TpmSetup& setup) {
    check_order(order);
    auto q = setup.initial_populations();  // spectrum of rho_in
    auto s = setup.final_populations();    // spectrum of rho_tau = rho_fin
    double flip = 0.5 * (1.0 - setup.lambda());

    double total = 0.0;
    for (int n = 0; n <= order; ++n) {
        // X = (ln rho_in)^n rho_in, diagonal.
        std::array<double, 2> x{};
        for (int k = 0; k < 2; ++k) {
            x[k] = q[k] == 0.0 ? 0.0 : q[k] * log_power(q[k], n);
        }
        // Lambda acts on diagonal operators as a symmetric 2x2 stochastic
        // matrix; written as a correction so equal entries pass through exactly.
        std::array<double, 2> lx{x[0] + flip * (x[1] - x[0]), x[1] + flip * (x[0] - x[1])};
        double trace = 0.0;
        for (int m = 0; m < 2; ++m) {
            if (s[m] == 0.0) {
                continue;
            }
            trace += log_power(s[m], order - n) * lx[m];
        }
        double sign = ((order - n) % 2 == 0) ? 1.0 : -1.0;
        total += sign * binomial(order, n) * trace;
    }
    return total;
}

double moment_oracle(int order, const TpmSetup& setup) {
    check_order(order);
    auto joint = joint_distribution(setup);
    auto p_in = setup.initial_populations();
    auto p_fin = setup.final_populations();
    double total = 0.0;
    for (int k = 0; k < 2; ++k) {
        for (int m = 0; m < 2; ++m) {
            if (joint[k][m] == 0.0) {
                continue;
            }
            double delta_sigma = std::log(p_in[k]) - std::log(p_fin[m]);
            double term = 1.0;
            for (int j = 0; j < order; ++j) {
                term *= delta_sigma;
            }
            total += joint[k][m] * term;
        }
    }
    return total;
}

EntropyMoments mean_and_variance(const TpmSetup& setup) {
    double mean = moment_closed_form(1, setup);
    double second = moment_closed_form(2, setup);
    return {mean, std::max(0.0, second - mean * mean)};
}

}  // namespace ptpm
