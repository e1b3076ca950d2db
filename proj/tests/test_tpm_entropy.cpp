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
#include <random>

#include "doctest.h"
#include "pauli_tpm/error.hpp"
#include "pauli_tpm/tpm_entropy.hpp"

using namespace ptpm;

TEST_SUITE("tpm_entropy") {
    TEST_CASE("setup validation") {
        CHECK_THROWS_AS(TpmSetup::from_zeta(1.0, 0.0), InvalidInput);
        CHECK_THROWS_AS(TpmSetup::from_zeta(1.0, 1.5), InvalidInput);
        CHECK_THROWS_AS(TpmSetup::from_zeta(1.2, 0.5), InvalidInput);
        CHECK_NOTHROW(TpmSetup::from_zeta(-1.0, 1.0));
    }

    TEST_CASE("populations before and after the channel") {
        auto s = TpmSetup::from_zeta(0.6, 0.5);
        CHECK(s.initial_populations()[0] == doctest::Approx(0.8));
        CHECK(s.final_populations()[0] == doctest::Approx(0.65));
        CHECK(s.final_populations()[1] == doctest::Approx(0.35));
    }

    TEST_CASE("joint table for the pure up state") {
        auto j = joint_distribution(TpmSetup::from_zeta(1.0, 0.5));
        CHECK(j[0][0] == doctest::Approx(0.75));
        CHECK(j[0][1] == doctest::Approx(0.25));
        CHECK(j[1][0] == 0.0);
        CHECK(j[1][1] == 0.0);
    }

    TEST_CASE("distribution atoms for the pure up state") {
        auto d = entropy_distribution(TpmSetup::from_zeta(1.0, 0.5), 2.0);
        REQUIRE(d.atoms.size() == 2);
        CHECK(d.atoms[0].value == doctest::Approx(-std::log(0.75)).epsilon(1e-14));
        CHECK(d.atoms[0].weight == doctest::Approx(0.75));
        CHECK(d.atoms[1].value == doctest::Approx(std::log(4.0)).epsilon(1e-14));
        CHECK(d.atoms[1].weight == doctest::Approx(0.25));
        CHECK(d.total_weight() == doctest::Approx(1.0));
        REQUIRE(d.t.has_value());
        CHECK(*d.t == 2.0);
    }

    TEST_CASE("identity channel gives a delta at zero") {
        auto d = entropy_distribution(TpmSetup::from_zeta(0.3, 1.0));
        REQUIRE(d.atoms.size() == 1);
        CHECK(d.atoms[0].value == doctest::Approx(0.0).scale(1.0));
        CHECK(d.atoms[0].weight == doctest::Approx(1.0));
        CHECK(d.exp_average() == doctest::Approx(1.0));
    }

    TEST_CASE("maximally mixed input is a fixed point") {
        auto s = TpmSetup::from_zeta(0.0, 0.3);
        for (int l = 1; l <= 4; ++l) {
            CHECK(moment_closed_form(l, s) == doctest::Approx(0.0).scale(1.0));
        }
    }

    TEST_CASE("moments at zeta0 = 1, lambda = 1/2") {
        auto s = TpmSetup::from_zeta(1.0, 0.5);
        CHECK(moment_closed_form(1, s) == doctest::Approx(0.56233514461880835).epsilon(1e-13));
        CHECK(moment_closed_form(2, s) == doctest::Approx(0.54252374502581522).epsilon(1e-13));
        CHECK(moment_closed_form(3, s) == doctest::Approx(0.68390594054149452).epsilon(1e-13));
        auto mv = mean_and_variance(s);
        CHECK(mv.mean == doctest::Approx(0.56233514461880835).epsilon(1e-13));
        CHECK(mv.variance == doctest::Approx(0.22630293015235912).epsilon(1e-12));
    }

    TEST_CASE("mean equals the entropy increase") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> zeta(-1.0, 1.0);
        std::uniform_real_distribution<double> lam(1e-3, 1.0);
        for (int i = 0; i < 200; ++i) {
            double z = zeta(rng);
            double l = lam(rng);
            auto s = TpmSetup::from_zeta(z, l);
            double expected = von_neumann_entropy(QubitState::diagonal(l * z)) -
                              von_neumann_entropy(QubitState::diagonal(z));
            CHECK(moment_closed_form(1, s) == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
        }
    }

    TEST_CASE("closed form matches direct enumeration") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> zeta(-1.0, 1.0);
        std::uniform_real_distribution<double> lam(1e-2, 1.0);
        for (int i = 0; i < 100; ++i) {
            auto s = TpmSetup::from_zeta(zeta(rng), lam(rng));
            auto d = entropy_distribution(s);
            for (int l = 1; l <= 6; ++l) {
                double oracle = moment_oracle(l, s);
                CHECK(std::abs(moment_closed_form(l, s) - oracle) <= 1e-11 * std::max(1.0, std::abs(oracle)));
                CHECK(std::abs(d.moment(l) - oracle) <= 1e-11 * std::max(1.0, std::abs(oracle)));
            }
        }
    }

    TEST_CASE("boundary states keep the 0 ln 0 convention") {
        for (double z : {1.0, -1.0}) {
            auto s = TpmSetup::from_zeta(z, 0.25);
            double m1 = moment_closed_form(1, s);
            CHECK(std::isfinite(m1));
            CHECK(m1 == doctest::Approx(moment_oracle(1, s)));
        }
    }

    TEST_CASE("moment order limits") {
        auto s = TpmSetup::from_zeta(0.5, 0.5);
        CHECK_THROWS_AS(moment_closed_form(0, s), InvalidInput);
        CHECK_THROWS_AS(moment_closed_form(kMaxMomentOrder + 1, s), InvalidInput);
        CHECK_NOTHROW(moment_closed_form(kMaxMomentOrder, s));
    }
}
