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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pauli_tpm/numerics.hpp"
#include "pauli_tpm/qubit.hpp"

namespace ptpm {

/// Below this value a rate (or pair sum of rates) counts as negative.
inline constexpr double kDivisibilityTol = 1e-9;
/// p_alpha >= -kCpTol counts as non-negative.
inline constexpr double kCpTol = 1e-10;
/// Pair sums p_i + p_j at or above 1/2 - kSingularTol make the map singular.
inline constexpr double kSingularTol = 1e-9;

/// Pauli-axis index 1, 2, 3 (sigma_x, sigma_y, sigma_z). The three unordered
/// pairs are enumerated in this order everywhere: (1,2), (1,3), (2,3).
inline constexpr std::array<std::array<int, 2>, 3> kPauliPairs{{{1, 2}, {1, 3}, {2, 3}}};

/// Lindblad coefficients gamma_1..gamma_3 of the Pauli-channel generator.
/// Each callable must be pure so the family can be shared across threads.
class RateFunctions {
  public:
    RateFunctions(ScalarFn gamma1, ScalarFn gamma2, ScalarFn gamma3);

    static RateFunctions constant(double g1, double g2, double g3);

    /// Piecewise-linear interpolation of sampled rates. `times` strictly
    /// increasing; evaluation outside [times.front(), times.back()] throws.
    static RateFunctions tabulated(std::vector<double> times, std::array<std::vector<double>, 3> values);

    /// gamma_alpha(t), alpha in {1, 2, 3}.
    double gamma(int alpha, double t) const;
    std::array<double, 3> gammas(double t) const;
    double pair_sum(int a, int b, double t) const { return gamma(a, t) + gamma(b, t); }

    /// gamma_a + gamma_b as a standalone callable.
    ScalarFn pair_sum_fn(int a, int b) const;

  private:
    std::array<ScalarFn, 3> gamma_;
};

/// Kraus weights (p_0, p_1, p_2, p_3) of a Pauli channel at one time.
/// Non-CP points (negative entries) are representable on purpose.
struct ProbabilityVector {
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

    double operator[](int alpha) const { return p[static_cast<std::size_t>(alpha)]; }
    double sum() const { return p[0] + p[1] + p[2] + p[3]; }
    double pair_sum(int a, int b) const { return (*this)[a] + (*this)[b]; }

    /// All pair sums p_i + p_j (i != j in 1..3) strictly below 1/2 - tol.
    bool is_invertible(double tol = kSingularTol) const;
};

/// Multipliers of the Bloch components: lambda^(i) = 1 - 2(p_j + p_k).
struct ChannelEigenvalues {
    std::array<double, 3> lambda{1.0, 1.0, 1.0};

    static ChannelEigenvalues from_probabilities(const ProbabilityVector& p);
    /// lambda^(3), the only eigenvalue entering sigma_z statistics.
    double z() const { return lambda[2]; }
};

struct CpCheck {
    bool ok = true;
    /// Indices alpha in 0..3 with p_alpha < -kCpTol.
    std::vector<int> violations;
};

enum class DivisibilityClass { CPDivisible, PDivisibleOnly, EssentiallyNonMarkovian };

std::string to_string(DivisibilityClass c);

/// Maximal interval on which a rate (second == 0) or a pair sum of rates is
/// negative. Endpoints that are interior to the grid are refined by bisection.
struct ViolationWindow {
    int first = 0;
    int second = 0;
    double begin = 0.0;
    double end = 0.0;
    bool open_at_begin = false;  ///< violation already present at grid.front()
    bool open_at_end = false;    ///< violation still present at grid.back()
};

struct DivisibilityReport {
    DivisibilityClass kind = DivisibilityClass::CPDivisible;
    std::vector<ViolationWindow> rate_windows;  ///< gamma_alpha < 0
    std::vector<ViolationWindow> pair_windows;  ///< gamma_a + gamma_b < 0
};

/// Sampled trajectory of Kraus weights, times strictly increasing.
struct ProbabilityTrajectory {
    std::vector<double> times;
    std::vector<ProbabilityVector> values;
};

/// Channel at time t. Pair integrals A_ij = int_0^t (gamma_i + gamma_j) by
/// adaptive quadrature, s_ij = (1 - exp(-2 A_ij))/2, then
/// p_1 = (s12 + s13 - s23)/2, p_2 = (s12 + s23 - s13)/2, p_3 = (s13 + s23 - s12)/2.
ProbabilityVector probabilities_from_rates(const RateFunctions& rates, double t,
                                           const QuadratureOptions& opts = {});

/// Same as probabilities_from_rates at every node of a non-decreasing grid
/// starting at 0, accumulating the pair integrals interval by interval.
std::vector<ProbabilityVector> probabilities_on_grid(const RateFunctions& rates, std::span<const double> grid,
                                                     const QuadratureOptions& opts = {});

/// Probabilities from the three pair integrals A_12, A_13, A_23.
ProbabilityVector probabilities_from_pair_integrals(const std::array<double, 3>& pair_integrals);

/// Recovers (gamma_1, gamma_2, gamma_3) at t from a sampled trajectory using
/// gamma_i + gamma_j = d/dt(p_i + p_j) / (1 - 2(p_i + p_j)). The derivative
/// comes from the Lagrange polynomial through the five samples nearest t
/// (fewer when the trajectory is shorter). Throws SingularChannel if any pair sum
/// reaches 1/2 - kSingularTol, InvalidInput if t is outside the samples.
std::array<double, 3> rates_from_probabilities(const ProbabilityTrajectory& trajectory, double t);

/// r_i -> lambda^(i) r_i.
QubitState apply(const ChannelEigenvalues& eigs, const QubitState& state);

CpCheck check_cp(const ProbabilityVector& p);

/// Rate-sign divisibility test on a strictly increasing grid:
/// CP-divisible iff gamma_alpha >= 0, P-divisible iff gamma_a + gamma_b >= 0.
DivisibilityReport classify_divisibility(const RateFunctions& rates, std::span<const double> grid,
                                         double tol = kDivisibilityTol);

}  // namespace ptpm
