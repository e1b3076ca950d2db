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


#include "pauli_tpm/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pauli_tpm/error.hpp"

namespace ptpm {

QubitState::QubitState(double rx, double ry, double rz) : r_{rx, ry, rz} {
    for (double c : r_) {
        if (!std::isfinite(c)) {
            throw InvalidInput("Bloch components must be finite");
        }
    }
    if (norm() > 1.0 + kPopulationTol) {
        throw InvalidInput("Bloch vector outside the unit ball (|r| = " + std::to_string(norm()) + ")");
    }
}

double QubitState::norm() const { return std::sqrt(r_[0] * r_[0] + r_[1] * r_[1] + r_[2] * r_[2]); }

bool QubitState::is_pure(double tol) const { return std::abs(norm() - 1.0) <= tol; }

std::array<double, 2> QubitState::eigenvalues() const {
    double n = std::min(norm(), 1.0);
    return {clamp_population(0.5 * (1.0 + n)), clamp_population(0.5 * (1.0 - n))};
}

std::array<double, 2> QubitState::z_populations() const {
    return {clamp_population(0.5 * (1.0 + r_[2])), clamp_population(0.5 * (1.0 - r_[2]))};
}

double clamp_population(double x) {
    if (!(x >= -kPopulationTol && x <= 1.0 + kPopulationTol)) {
        throw InvalidInput("population " + std::to_string(x) + " outside [0, 1]");
    }
    return std::clamp(x, 0.0, 1.0);
}

double xlnx(double x) {
    x = clamp_population(x);
    if (x == 0.0) {
        return 0.0;
    }
    return x * std::log(x);
}

double von_neumann_entropy(const QubitState& state) {
    auto [a, b] = state.eigenvalues();
    return -xlnx(a) - xlnx(b);
}

double relative_entropy_diagonal(const QubitState& rho, const QubitState& sigma) {
    if (!rho.is_diagonal() || !sigma.is_diagonal()) {
        throw InvalidInput("relative_entropy_diagonal requires states diagonal in the sigma_z basis");
    }
    auto q = rho.z_populations();
    auto s = sigma.z_populations();
    double total = 0.0;
    for (int k = 0; k < 2; ++k) {
        if (q[k] == 0.0) {
            continue;
        }
        if (s[k] == 0.0) {
            throw DivergentEntropy("relative entropy diverges: supp(rho) not contained in supp(sigma)");
        }
        total += q[k] * (std::log(q[k]) - std::log(s[k]));
    }
    // Klein: never negative; clip round-off.
    return std::max(total, 0.0);
}

}  // namespace ptpm
