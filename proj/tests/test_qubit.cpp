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
#include "pauli_tpm/qubit.hpp"

using namespace ptpm;

TEST_SUITE("qubit_core") {
    TEST_CASE("Bloch vectors outside the ball are rejected") {
        CHECK_THROWS_AS(QubitState(1.0, 1.0, 0.0), InvalidInput);
        CHECK_NOTHROW(QubitState(0.6, 0.0, 0.8));
        CHECK_THROWS_AS(QubitState::diagonal(1.1), InvalidInput);
    }

    TEST_CASE("pure and mixed states") {
        CHECK(QubitState(0.6, 0.0, 0.8).is_pure());
        CHECK_FALSE(QubitState::diagonal(0.5).is_pure());
        CHECK(QubitState::diagonal(0.5).is_diagonal());
        CHECK_FALSE(QubitState(0.1, 0.0, 0.0).is_diagonal());
    }

    TEST_CASE("z populations and eigenvalues") {
        auto pop = QubitState::diagonal(0.5).z_populations();
        CHECK(pop[0] == doctest::Approx(0.75));
        CHECK(pop[1] == doctest::Approx(0.25));
        auto ev = QubitState(0.3, 0.0, 0.4).eigenvalues();
        CHECK(ev[0] == doctest::Approx(0.75));
        CHECK(ev[1] == doctest::Approx(0.25));
    }

    TEST_CASE("xlnx follows the 0 ln 0 convention") {
        CHECK(xlnx(0.0) == 0.0);
        CHECK(xlnx(1.0) == 0.0);
        CHECK(xlnx(0.5) == doctest::Approx(-0.34657359027997264).epsilon(1e-14));
    }

    TEST_CASE("von Neumann entropy") {
        CHECK(von_neumann_entropy(QubitState::diagonal(1.0)) == doctest::Approx(0.0));
        CHECK(von_neumann_entropy(QubitState{}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
        CHECK(von_neumann_entropy(QubitState::diagonal(0.5)) ==
              doctest::Approx(0.56233514461880835).epsilon(1e-13));
        // Depends only on the Bloch radius.
        CHECK(von_neumann_entropy(QubitState(0.3, 0.0, 0.4)) ==
              doctest::Approx(von_neumann_entropy(QubitState::diagonal(0.5))));
    }

    TEST_CASE("diagonal relative entropy") {
        CHECK(relative_entropy_diagonal(QubitState::diagonal(1.0), QubitState::diagonal(0.5)) ==
              doctest::Approx(0.28768207245178093).epsilon(1e-13));
        CHECK(relative_entropy_diagonal(QubitState::diagonal(0.2), QubitState::diagonal(0.2)) ==
              doctest::Approx(0.0));
        CHECK(relative_entropy_diagonal(QubitState::diagonal(0.5), QubitState{}) >= 0.0);
    }

    TEST_CASE("relative entropy error paths") {
        CHECK_THROWS_AS(relative_entropy_diagonal(QubitState::diagonal(0.5), QubitState::diagonal(1.0)),
                        DivergentEntropy);
        CHECK_THROWS_AS(relative_entropy_diagonal(QubitState(0.1, 0.0, 0.0), QubitState{}), InvalidInput);
    }

    TEST_CASE("clamp_population removes round-off only") {
        CHECK(clamp_population(-1e-15) == 0.0);
        CHECK(clamp_population(1.0 + 1e-15) == 1.0);
        CHECK(clamp_population(0.3) == 0.3);
        CHECK_THROWS_AS(clamp_population(-0.01), InvalidInput);
    }
}
