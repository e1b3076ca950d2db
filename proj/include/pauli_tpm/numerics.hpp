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
#include <functional>
#include <span>
#include <vector>

namespace ptpm {

using ScalarFn = std::function<double(double)>;

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    /// Maximum number of subintervals the adaptive rule may create.
    std::size_t max_intervals = 1000;
};

/// Adaptive 21-point Gauss-Kronrod quadrature of f over [a, b] (GSL QAG).
/// Succeeds when the error estimate is at most max(abs_tol, rel_tol |I|).
/// Returns -integral(b, a) when b < a. Exceptions thrown by f propagate.
///
/// Throws NumericalFailure on non-convergence or a non-finite integrand.
double integrate(const ScalarFn& f, double a, double b, const QuadratureOptions& opts = {});

/// Running integrals of f from grid[0] to each grid node. The grid must be
/// non-decreasing; result[0] == 0.
std::vector<double> integrate_cumulative(const ScalarFn& f, std::span<const double> grid,
                                         const QuadratureOptions& opts = {});

struct BisectionOptions {
    double x_tol = 1e-12;
    int max_iter = 200;
};

/// Root of f in [lo, hi] by bisection. f(lo) and f(hi) must differ in sign
/// (or one of them vanish); otherwise InvalidInput.
double bisect(const ScalarFn& f, double lo, double hi, const BisectionOptions& opts = {});

/// n points uniformly spaced on [a, b], endpoints included (n >= 2).
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace ptpm
