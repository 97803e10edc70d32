// Copyright 2026 The qreadout Authors
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

#ifndef QREADOUT_ACCEPTANCE_H
#define QREADOUT_ACCEPTANCE_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qreadout {

inline constexpr int kNumCriteria = 10;

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    /// What was measured, one `key=value` group per sub-case.
    std::string measured;
    /// The tolerance the measurement was held to.
    std::string required;
    double seconds = 0;
};

struct AcceptanceOptions {
    uint64_t seed = 1;
    /// 0 picks hardware concurrency.
    size_t threads = 0;
    /// Criteria to run; empty runs all of them.
    std::vector<int> only;
};

CriterionResult run_criterion(int id, const AcceptanceOptions &opt = {});

/// Runs the selected criteria in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions &opt = {}, const std::function<void(const CriterionResult &)> &on_result = {});

/// `[PASS] 3 RP exact speedup | measured ... | required ... | 1.2s`
std::string format_criterion(const CriterionResult &r);

}  // namespace qreadout

#endif
