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

#ifndef QREADOUT_ESTIMATION_H
#define QREADOUT_ESTIMATION_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qreadout/experiment.h"

namespace qreadout {

inline constexpr size_t kMinRatePoints = 10;
inline constexpr size_t kBootstrapResamples = 1000;

struct RateEstimate {
    double slope = 0;
    double slope_per_time = 0;
    double std_error = 0;
    double window = 0.5;
    size_t points = 0;
};

/// Least-squares slope of ln(infidelity) against step over the trailing
/// `window` fraction of the samples taken before the target was reached.
/// With condition_correct, only the final Check segment is used and a trial
/// whose final candidate is wrong raises InsufficientData.
RateEstimate estimate_rate(
    const TrajectoryRecord &traj, double window = 0.5, bool condition_correct = false, double dt = 1.0);

/// Same fit on raw (step, ln delta) points, no window applied.
RateEstimate fit_slope(std::span<const TrajectorySample> samples);

struct Interval {
    double low = 0;
    double high = 0;
};

struct EnsembleRate {
    /// Mean of per-trial slopes.
    double slope = 0;
    double slope_per_time = 0;
    double std_error = 0;
    Interval ci;
    size_t used = 0;
    size_t skipped = 0;
    std::vector<double> per_trial;
};

EnsembleRate estimate_ensemble_rate(
    std::span<const TrajectoryRecord> trials,
    double window = 0.5,
    bool condition_correct = false,
    double dt = 1.0,
    uint64_t bootstrap_seed = 0);

/// Percentile bootstrap interval (95%) for the mean of `xs`.
Interval bootstrap_mean_ci(std::span<const double> xs, uint64_t seed, size_t resamples = kBootstrapResamples);

struct Summary {
    double mean = 0;
    double std_error = 0;
    Interval ci;
    size_t count = 0;
};

Summary summarize(std::span<const double> xs, uint64_t bootstrap_seed = 0);

struct SpeedupReport {
    EnsembleRate scheme_rate;
    EnsembleRate baseline_rate;
    /// scheme rate / baseline rate.
    double ratio = 0;
    Interval ratio_ci;
    /// mean baseline time-to-target / mean scheme time-to-target.
    double time_ratio = 0;
    Interval time_ratio_ci;
    Summary scheme_steps;
    Summary baseline_steps;
    /// GC only.
    std::optional<Summary> check_entries;
    std::optional<Summary> restarts;
    std::optional<Summary> wasted_steps;
    size_t scheme_incomplete = 0;
    size_t baseline_incomplete = 0;
};

/// Both configs must share n and epsilon. Throws InsufficientData when more
/// than 10% of either ensemble failed to reach its target.
SpeedupReport estimate_speedup(const ExperimentConfig &scheme_cfg, const ExperimentConfig &baseline_cfg);

/// Same, from ensembles that were already run.
SpeedupReport estimate_speedup(
    const ExperimentConfig &scheme_cfg,
    std::span<const TrajectoryRecord> scheme_trials,
    const ExperimentConfig &baseline_cfg,
    std::span<const TrajectoryRecord> baseline_trials);

}  // namespace qreadout

#endif
