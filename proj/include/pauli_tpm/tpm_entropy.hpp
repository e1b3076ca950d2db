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
#include <optional>
#include <vector>

#include "pauli_tpm/qubit.hpp"

namespace ptpm {

/// Largest moment order accepted by the moment routines.
inline constexpr int kMaxMomentOrder = 12;

/// Two-point sigma_z measurement around a Pauli channel. Only the
/// sigma_z-sector eigenvalue lambda^(3) of the channel enters the statistics,
/// and only r_z of the initial state survives the first measurement.
class TpmSetup {
  public:
    /// Throws InvalidInput unless 0 < lambda_z <= 1.
    TpmSetup(QubitState initial, double lambda_z);

    static TpmSetup from_zeta(double zeta0, double lambda_z) { return {QubitState::diagonal(zeta0), lambda_z}; }

    const QubitState& initial_state() const { return initial_; }
    double zeta0() const { return initial_.rz(); }
    double lambda() const { return lambda_; }

    /// Populations after the first measurement: ((1+zeta0)/2, (1-zeta0)/2).
    std::array<double, 2> initial_populations() const;
    /// Populations of rho_fin = Lambda_t(rho_in): ((1+lambda zeta0)/2, (1-lambda zeta0)/2).
    std::array<double, 2> final_populations() const;

  private:
    QubitState initial_;
    double lambda_;
};

/// joint[k][m] = p(a_k^in, a_m^fin); index 0 is the sigma_z = +1 outcome.
using JointTable = std::array<std::array<double, 2>, 2>;

struct EntropyAtom {
    double value = 0.0;   ///< Delta sigma in nats
    double weight = 0.0;  ///< probability
};

/// Discrete law of the stochastic entropy production. Atoms with equal
/// Delta sigma are merged and zero-weight atoms dropped, so there are at most
/// four of them.
struct EntropyDistribution {
    std::vector<EntropyAtom> atoms;
    double zeta0 = 0.0;
    double lambda = 1.0;
    std::optional<double> t;

    double total_weight() const;
    double moment(int order) const;
    /// sum_w w exp(-Delta sigma). Informational only.
    double exp_average() const;
};

struct EntropyMoments {
    double mean = 0.0;
    double variance = 0.0;
};

JointTable joint_distribution(const TpmSetup& setup);

/// Atoms Delta sigma(m, k) = ln p(a_k^in) - ln p(a_m^fin) weighted by the joint
/// table. Initial outcomes of zero probability contribute nothing.
EntropyDistribution entropy_distribution(const TpmSetup& setup, std::optional<double> t = std::nullopt);

/// l-th moment from the binomial trace expansion
///   sum_n (-1)^(l-n) C(l,n) Tr[(ln rho_tau)^(l-n) Lambda((ln rho_in)^n rho_in)]
/// evaluated on diagonal operators, with rho_tau = rho_fin and 0 ln 0 = 0.
double moment_closed_form(int order, const TpmSetup& setup);

/// l-th moment by direct enumeration over the joint outcome table. Kept
/// independent of moment_closed_form so the two can check each other.
double moment_oracle(int order, const TpmSetup& setup);

EntropyMoments mean_and_variance(const TpmSetup& setup);

}  // namespace ptpm
