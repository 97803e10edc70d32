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

#ifndef QREADOUT_EXPERIMENT_H
#define QREADOUT_EXPERIMENT_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qreadout/measurement.h"
#include "qreadout/register_config.h"
#include "qreadout/schemes.h"

namespace qreadout {

struct ExperimentConfig {
    SchemeKind scheme = SchemeKind::NoControl;
    size_t n = 1;
    /// Give either epsilon or both gamma and dt.
    std::optional<double> epsilon;
    std::optional<double> gamma;
    std::optional<double> dt;
    /// GC only. check_interval below overrides thresholds.check_interval.
    GcThresholds thresholds;
    GcOptions gc;
    /// RP only.
    size_t perm_interval = 1;
    double target_infidelity = 1e-8;
    size_t max_steps = 2'000'000;
    size_t trials = 200;
    uint64_t seed = 0;
    /// ln(infidelity) is sampled every check_interval steps; GC also runs its
    /// acceptance and rejection tests on this grid.
    size_t check_interval = 100;
    /// Rate fits use only the final Check segment of trials whose final
    /// candidate is the true state.
    bool condition_correct = false;
    /// NoControl only: exact 2^n posterior instead of marginals.
    bool full_posterior = false;
    std::string out_path;
    std::string summary_path;
    /// Worker threads for ensembles; 0 picks hardware concurrency.
    size_t threads = 0;

    /// Throws ParameterError on anything unusable.
    void validate() const;
    MeasurementStrength strength() const;
    double eps() const {
        return strength().epsilon;
    }
    SchemeOptions scheme_options() const;
};

struct TrajectorySample {
    size_t step;
    double ln_delta;
    GcPhase phase;
    size_t restarts;

    bool operator==(const TrajectorySample &other) const = default;
};

struct TrajectoryRecord {
    size_t trial = 0;
    RegisterConfig true_state;
    /// Step 0, every check_interval-th step, and the step that reached the
    /// target (if it is not already on the grid).
    std::vector<TrajectorySample> samples;
    bool completed = false;
    /// Steps taken; the time to target when completed.
    size_t steps = 0;
    double final_ln_delta = 0;
    size_t check_entries = 0;
    size_t restarts = 0;
    /// Step at which the last Check phase began (GC), 0 otherwise.
    size_t final_check_start = 0;
    /// Guess plus rejected-Check time, i.e. everything before the last Check phase.
    size_t wasted_steps = 0;
    /// GC: the candidate held at the end equals the true state.
    bool final_candidate_correct = false;

    bool operator==(const TrajectoryRecord &other) const = default;
};

TrajectoryRecord run_trial(const ExperimentConfig &cfg, size_t trial_index);

/// All trials of `cfg`, in trial order, spread over worker threads.
std::vector<TrajectoryRecord> run_ensemble(const ExperimentConfig &cfg);

}  // namespace qreadout

#endif
