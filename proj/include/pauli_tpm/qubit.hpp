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

#include <array>

namespace ptpm {

/// Tolerance within which populations slightly outside [0, 1] are clamped
/// rather than rejected.
inline constexpr double kPopulationTol = 1e-12;

/// Qubit density operator in Bloch form, rho = (1 + r . sigma) / 2.
class QubitState {
  public:
    /// Maximally mixed state.
    QubitState() = default;

    /// Throws InvalidInput if |r| > 1 beyond kPopulationTol.
    QubitState(double rx, double ry, double rz);

    /// Diagonal state with <sigma_z> = zeta, i.e. populations (1 +- zeta)/2.
    static QubitState diagonal(double zeta) { return QubitState(0.0, 0.0, zeta); }

    double rx() const { return r_[0]; }
    double ry() const { return r_[1]; }
    double rz() const { return r_[2]; }
    const std::array<double, 3>& bloch() const { return r_; }

    double norm() const;
    bool is_pure(double tol = 1e-12) const;
    bool is_diagonal() const { return r_[0] == 0.0 && r_[1] == 0.0; }

    /// (1 + |r|)/2 and (1 - |r|)/2, clamped into [0, 1].
    std::array<double, 2> eigenvalues() const;

    /// sigma_z populations: <0|rho|0> = (1 + r_z)/2, <1|rho|1> = (1 - r_z)/2.
    std::array<double, 2> z_populations() const;

  private:
    std::array<double, 3> r_{0.0, 0.0, 0.0};
};

/// x ln x with 0 ln 0 = 0. Values within kPopulationTol of [0, 1] are clamped;
/// anything further out throws InvalidInput.
double xlnx(double x);

/// Clamp a population into [0, 1] when within kPopulationTol, else throw.
double clamp_population(double x);

/// Von Neumann entropy in nats.
double von_neumann_entropy(const QubitState& state);

/// S(rho || sigma) for two states diagonal in the sigma_z basis, in nats.
/// Throws InvalidInput for off-diagonal inputs and DivergentEntropy when
/// supp(rho) is not contained in supp(sigma).
double relative_entropy_diagonal(const QubitState& rho, const QubitState& sigma);

}  // namespace ptpm
