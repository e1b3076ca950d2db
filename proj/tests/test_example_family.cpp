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


#include <cmath>

#include "doctest.h"
#include "pauli_tpm/error.hpp"
#include "pauli_tpm/example_family.hpp"

using namespace ptpm;

TEST_SUITE("example_family") {
    TEST_CASE("rate sum values") {
        ExampleParams p{0.31, 0.23};
        CHECK(gamma_sum(p, 0.0) == doctest::Approx(0.23));
        CHECK(gamma_sum(p, 2.0) == doctest::Approx(-0.018560219655623853).epsilon(1e-12));
        CHECK(gamma_sum(p, 1000.0) == doctest::Approx(0.23));
    }

    TEST_CASE("closed-form phi matches quadrature of the rate sum") {
        for (ExampleParams p : {ExampleParams{0.31, 0.23}, ExampleParams{0.45, 0.21}, ExampleParams{1.7, 0.24}}) {
            for (double t = 0.0; t <= 20.0; t += 0.5) {
                double quad = integrate([&](double s) { return gamma_sum(p, s); }, 0.0, t);
                CHECK(std::abs(phi_closed(p, t) - quad) < 1e-9);
            }
        }
    }

    TEST_CASE("negativity window endpoints") {
        auto w = negativity_window({0.31, 0.23});
        REQUIRE(w);
        CHECK(w->begin == doctest::Approx(1.4324796644910297).epsilon(1e-12));
        CHECK(w->end == doctest::Approx(3.3084105615055563).epsilon(1e-12));
        CHECK(std::abs(gamma_sum({0.31, 0.23}, w->begin)) < 1e-14);
        CHECK(std::abs(gamma_sum({0.31, 0.23}, w->end)) < 1e-14);
        CHECK(negativity_window({0.45, 0.23})->end == doctest::Approx(2.2791272757038277).epsilon(1e-12));
        CHECK_FALSE(negativity_window({0.31, 0.25}));
        CHECK_FALSE(negativity_window({0.31, 0.3}));
        CHECK_THROWS_AS(negativity_window({-0.31, 0.2}), InvalidInput);
    }

    TEST_CASE("CP bound constants") {
        double z = solve_z_max();
        CHECK(z == doctest::Approx(1.2564312086261697).epsilon(1e-11));
        CHECK(std::abs(std::exp(z) - 1.0 - 2.0 * z) < 1e-10);
        CHECK(beta_bar() == doctest::Approx(0.20363218879453688).epsilon(1e-11));
    }

    TEST_CASE("phi stays nonnegative above the CP bound and dips below it otherwise") {
        auto min_phi = [](ExampleParams p) {
            double m = 0.0;
            for (double t = 0.0; t <= 30.0 / p.alpha; t += 0.01 / p.alpha) {
                m = std::min(m, phi_closed(p, t));
            }
            return m;
        };
        CHECK(min_phi({0.31, beta_bar() + 1e-4}) >= 0.0);
        CHECK(min_phi({0.31, beta_bar() - 1e-3}) < 0.0);
    }

    TEST_CASE("admissibility") {
        CHECK(check_admissible({0.38, 0.23}).ok());
        auto not_cp = check_admissible({0.31, 0.15});
        CHECK_FALSE(not_cp.completely_positive);
        CHECK(not_cp.has_window);
        CHECK(not_cp.reason().find("completely positive") != std::string::npos);
        auto no_window = check_admissible({0.31, 0.30});
        CHECK(no_window.completely_positive);
        CHECK_FALSE(no_window.has_window);
        CHECK(no_window.reason().find("P-divisible") != std::string::npos);
    }

    TEST_CASE("classification follows the endpoint values of phi") {
        auto r31 = classify_example({0.31, 0.23});
        CHECK(r31.phi_t1 == doctest::Approx(0.12208541353827475).epsilon(1e-10));
        CHECK(r31.regime == Regime::III);
        auto r38 = classify_example({0.38, 0.23});
        CHECK(r38.regime == Regime::II);
        REQUIRE(r38.t3);
        auto r45 = classify_example({0.45, 0.23});
        CHECK(r45.regime == Regime::I);
        CHECK_FALSE(r45.t3);
        CHECK_THROWS_AS(classify_example({0.31, 0.15}), InvalidInput);
        CHECK_THROWS_AS(classify_example({0.31, 0.30}), InvalidInput);
    }

    TEST_CASE("regime boundaries across alpha") {
        auto b = regime_boundaries(0.23, 0.25, 0.55);
        REQUIRE(b.phi_t1_crossing);
        REQUIRE(b.phi_t2_crossing);
        CHECK(*b.phi_t1_crossing == doctest::Approx(0.41577264072439776).epsilon(1e-9));
        CHECK(*b.phi_t2_crossing == doctest::Approx(0.33153944590702454).epsilon(1e-9));
        auto none = regime_boundaries(0.23, 0.5, 0.6);
        CHECK_FALSE(none.phi_t1_crossing);
        CHECK_FALSE(none.phi_t2_crossing);
        CHECK_THROWS_AS(regime_boundaries(0.3, 0.25, 0.55), InvalidInput);
    }

    TEST_CASE("rate split") {
        ExampleParams p{0.31, 0.23};
        auto rates = default_rate_split(p);
        CHECK(rates.gamma(1, 2.0) == doctest::Approx(0.5 * gamma_sum(p, 2.0)));
        CHECK(rates.gamma(3, 2.0) == kDefaultKappa);
        CHECK(default_horizon(p) == doctest::Approx(10.0 / 0.31));
        // p_3 = (1 - e^{-phi})^2 / 4 when kappa = 0, so the split stays CP.
        auto zero = default_rate_split(p, 0.0);
        auto probs = probabilities_from_rates(zero, 2.5);
        double x = std::exp(-phi_closed(p, 2.5));
        CHECK(probs[3] == doctest::Approx((1.0 - x) * (1.0 - x) / 4.0).epsilon(1e-9));
        CHECK_THROWS_WITH_AS(default_rate_split(p, -0.5), doctest::Contains("first at t ="), InvalidInput);
        CHECK_THROWS_AS(default_rate_split(p, std::nan("")), InvalidInput);
    }
}
