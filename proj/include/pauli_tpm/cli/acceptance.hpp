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

#include <ostream>
#include <string>
#include <vector>

namespace ptpm::cli {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::vector<std::string> details;
};

/// Runs the nine end-to-end acceptance criteria with their fixed tolerances.
std::vector<CriterionResult> run_acceptance();

/// One "[PASS]/[FAIL] n. title" line per criterion followed by indented
/// details. Returns true iff every criterion passed.
bool report_acceptance(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace ptpm::cli
