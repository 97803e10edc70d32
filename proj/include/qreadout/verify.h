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

#ifndef QREADOUT_VERIFY_H
#define QREADOUT_VERIFY_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qreadout {

struct CheckResult {
    std::string name;
    bool passed = false;
    /// Worst observed error against the tolerance.
    double worst = 0;
    double tolerance = 0;
    std::string detail;
};

struct OracleSweepOptions {
    size_t n_min = 2;
    size_t n_max = 8;
    size_t seeds = 50;
    size_t rounds = 10'000;
    size_t checkpoint_every = 500;
    uint64_t seed = 20260101;
    double tolerance = 1e-9;
};

/// Drives the O(n) two-basis posterior and the exhaustive posterior with the
/// same random interleaved history and compares every configuration's
/// probability at each checkpoint.
CheckResult verify_oracle_equivalence(const OracleSweepOptions &opt = {});

struct PartitionSweepOptions {
    size_t sets = 1000;
    size_t n_max = 12;
    uint64_t seed = 20260102;
    double tolerance = 1e-12;
};

/// Relative error of the five-product normalization against term-by-term summation.
CheckResult verify_partition(const PartitionSweepOptions &opt = {});

/// Expected posterior after one round, under the posterior's own predictive
/// distribution, equals the current posterior. Enumerates every outcome
/// vector for single bits, full posteriors and the two-basis posterior.
CheckResult verify_martingale(double tolerance = 1e-12);

/// Every posterior representation sums to one after arbitrary updates.
CheckResult verify_normalization(double tolerance = 1e-12);

struct VerifyOptions {
    OracleSweepOptions oracle;
    PartitionSweepOptions partition;
    double property_tolerance = 1e-12;
};

std::vector<CheckResult> run_verification(const VerifyOptions &opt = {});

}  // namespace qreadout

#endif
