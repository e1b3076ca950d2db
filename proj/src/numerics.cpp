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


#include "pauli_tpm/numerics.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <memory>
#include <string>

#include "pauli_tpm/error.hpp"

namespace ptpm {

namespace {

// GSL is C: nothing may unwind through it. The trampoline parks the first
// exception or non-finite value and feeds NaN back until QAG returns.
struct Integrand {
    const ScalarFn* f;
    std::exception_ptr error;
    double bad_x = std::numeric_limits<double>::quiet_NaN();
};

double trampoline(double x, void* params) {
    auto* in = static_cast<Integrand*>(params);
    if (in->error || !std::isnan(in->bad_x)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    try {
        double y = (*in->f)(x);
        if (!std::isfinite(y)) {
            in->bad_x = x;
        }
        return y;
    } catch (...) {
        in->error = std::current_exception();
        return std::numeric_limits<double>::quiet_NaN();
    }
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

void disable_gsl_abort() {
    static const bool done = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)done;
}

}  // namespace

double integrate(const ScalarFn& f, double a, double b, const QuadratureOptions& opts) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidInput("integration bounds must be finite");
    }
    if (a == b) {
        return 0.0;
    }
    if (b < a) {
        return -integrate(f, b, a, opts);
    }
    disable_gsl_abort();
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
        gsl_integration_workspace_alloc(opts.max_intervals));
    if (!ws) {
        throw NumericalFailure("cannot allocate quadrature workspace");
    }
    Integrand in{&f, nullptr};
    gsl_function fn{&trampoline, &in};
    double result = 0.0;
    double error = 0.0;
    int status = gsl_integration_qag(&fn, a, b, opts.abs_tol, opts.rel_tol, opts.max_intervals,
                                     GSL_INTEG_GAUSS21, ws.get(), &result, &error);
    if (in.error) {
        std::rethrow_exception(in.error);
    }
    if (!std::isnan(in.bad_x)) {
        throw NumericalFailure("integrand is not finite at x = " + std::to_string(in.bad_x));
    }
    // Round-off limited results are accepted when the estimate still meets the target.
    bool converged = status == GSL_SUCCESS ||
                     (status == GSL_EROUND && error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(result)));
    if (!converged) {
        throw NumericalFailure("quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                               "] did not converge: " + gsl_strerror(status));
    }
    return result;
}

std::vector<double> integrate_cumulative(const ScalarFn& f, std::span<const double> grid,
                                         const QuadratureOptions& opts) {
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (grid[k] < grid[k - 1]) {
            throw InvalidInput("integration grid must be non-decreasing");
        }
        out[k] = out[k - 1] + integrate(f, grid[k - 1], grid[k], opts);
    }
    return out;
}

double bisect(const ScalarFn& f, double lo, double hi, const BisectionOptions& opts) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) {
        return lo;
    }
    if (fhi == 0.0) {
        return hi;
    }
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw InvalidInput("bisection bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] does not contain a sign change");
    }
    std::uintmax_t iterations = static_cast<std::uintmax_t>(opts.max_iter);
    auto done = [&](double x0, double x1) { return std::abs(x1 - x0) <= opts.x_tol; };
    auto [a, b] = boost::math::tools::bisect(f, lo, hi, done, iterations);
    if (!done(a, b) && a != b && std::nextafter(a, b) != b) {
        throw NumericalFailure("bisection did not reach tolerance");
    }
    return 0.5 * (a + b);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n < 2) {
        throw InvalidInput("linspace needs at least two points");
    }
    std::vector<double> out(n);
    double step = (b - a) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = a + step * static_cast<double>(k);
    }
    out.back() = b;
    return out;
}

}  // namespace ptpm
