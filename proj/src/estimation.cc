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

#include "qreadout/estimation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qreadout/errors.h"
#include "qreadout/random.h"

namespace qreadout {

RateEstimate fit_slope(std::span<const TrajectorySample> samples) {
    size_t m = samples.size();
    if (m < 2) {
        throw InsufficientData("rate fit needs at least two points");
    }
    double mx = 0, my = 0;
    for (const auto &s : samples) {
        mx += static_cast<double>(s.step);
        my += s.ln_delta;
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0;
    for (const auto &s : samples) {
        double dx = static_cast<double>(s.step) - mx;
        sxx += dx * dx;
        sxy += dx * (s.ln_delta - my);
    }
    if (sxx == 0) {
        throw InsufficientData("rate fit needs distinct steps");
    }
    RateEstimate r;
    r.slope = sxy / sxx;
    r.points = m;
    if (m > 2) {
        double ssr = 0;
        for (const auto &s : samples) {
            double e = s.ln_delta - (my + r.slope * (static_cast<double>(s.step) - mx));
            ssr += e * e;
        }
        r.std_error = std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
    }
    r.window = 1.0;
    r.slope_per_time = r.slope;
    return r;
}

RateEstimate estimate_rate(const TrajectoryRecord &traj, double window, bool condition_correct, double dt) {
    if (!(window > 0.0 && window <= 1.0)) {
        throw ParameterError("rate window must lie in (0, 1]");
    }
    if (!(dt > 0.0)) {
        throw ParameterError("dt must be positive");
    }
    std::span<const TrajectorySample> s = traj.samples;
    // The point that reached the target is conditioned on having crossed it.
    if (traj.completed && !s.empty()) {
        s = s.first(s.size() - 1);
    }
    if (condition_correct) {
        if (!traj.final_candidate_correct) {
            throw InsufficientData("trial " + std::to_string(traj.trial) + ": final candidate is not the true state");
        }
        auto first = std::find_if(s.begin(), s.end(), [&](const TrajectorySample &x) {
            return x.step >= traj.final_check_start && x.phase == GcPhase::Check;
        });
        s = s.subspan(static_cast<size_t>(first - s.begin()));
    }
    size_t keep = static_cast<size_t>(std::ceil(window * static_cast<double>(s.size())));
    if (keep < kMinRatePoints) {
        throw InsufficientData(
            "trial " + std::to_string(traj.trial) + ": only " + std::to_string(keep) + " points in the rate window");
    }
    RateEstimate r = fit_slope(s.last(keep));
    r.window = window;
    r.slope_per_time = r.slope / dt;
    return r;
}

Interval bootstrap_mean_ci(std::span<const double> xs, uint64_t seed, size_t resamples) {
    if (xs.empty()) {
        throw InsufficientData("bootstrap of an empty sample");
    }
    Rng rng(seed);
    std::vector<double> means(resamples);
    for (auto &m : means) {
        double total = 0;
        for (size_t i = 0; i < xs.size(); i++) {
            total += xs[rng.below(xs.size())];
        }
        m = total / static_cast<double>(xs.size());
    }
    std::sort(means.begin(), means.end());
    auto pick = [&](double q) {
        size_t k = static_cast<size_t>(std::floor(q * static_cast<double>(resamples - 1) + 0.5));
        return means[k];
    };
    return {pick(0.025), pick(0.975)};
}

Summary summarize(std::span<const double> xs, uint64_t bootstrap_seed) {
    Summary s;
    s.count = xs.size();
    if (xs.empty()) {
        return s;
    }
    s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double v = 0;
        for (double x : xs) {
            v += (x - s.mean) * (x - s.mean);
        }
        v /= static_cast<double>(xs.size() - 1);
        s.std_error = std::sqrt(v / static_cast<double>(xs.size()));
    }
    s.ci = bootstrap_mean_ci(xs, bootstrap_seed);
    return s;
}

EnsembleRate estimate_ensemble_rate(
    std::span<const TrajectoryRecord> trials, double window, bool condition_correct, double dt, uint64_t bootstrap_seed) {
    EnsembleRate e;
    for (const auto &t : trials) {
        try {
            e.per_trial.push_back(estimate_rate(t, window, condition_correct, dt).slope);
        } catch (const InsufficientData &) {
            e.skipped++;
        }
    }
    e.used = e.per_trial.size();
    if (e.used == 0) {
        throw InsufficientData("no trial had enough points for a rate fit");
    }
    Summary s = summarize(e.per_trial, bootstrap_seed);
    e.slope = s.mean;
    e.slope_per_time = s.mean / dt;
    e.std_error = s.std_error;
    e.ci = s.ci;
    return e;
}

namespace {

std::vector<double> completed_steps(std::span<const TrajectoryRecord> trials) {
    std::vector<double> out;
    for (const auto &t : trials) {
        if (t.completed) {
            out.push_back(static_cast<double>(t.steps));
        }
    }
    return out;
}

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Percentile interval for mean(num) / mean(den), resampling each side independently.
Interval bootstrap_ratio_ci(std::span<const double> num, std::span<const double> den, uint64_t seed) {
    Rng rng(seed);
    std::vector<double> ratios(kBootstrapResamples);
    for (auto &r : ratios) {
        double a = 0, b = 0;
        for (size_t i = 0; i < num.size(); i++) {
            a += num[rng.below(num.size())];
        }
        for (size_t i = 0; i < den.size(); i++) {
            b += den[rng.below(den.size())];
        }
        r = (a / static_cast<double>(num.size())) / (b / static_cast<double>(den.size()));
    }
    std::sort(ratios.begin(), ratios.end());
    auto pick = [&](double q) {
        return ratios[static_cast<size_t>(std::floor(q * static_cast<double>(kBootstrapResamples - 1) + 0.5))];
    };
    return {pick(0.025), pick(0.975)};
}

void check_incomplete(const char *which, std::span<const TrajectoryRecord> trials, size_t &count) {
    count = 0;
    for (const auto &t : trials) {
        count += t.completed ? 0 : 1;
    }
    if (10 * count > trials.size()) {
        throw InsufficientData(
            std::string(which) + ": " + std::to_string(count) + " of " + std::to_string(trials.size()) +
            " trials did not reach the target within max_steps (more than 10%); raise --max-steps");
    }
}

}  // namespace

SpeedupReport estimate_speedup(
    const ExperimentConfig &scheme_cfg,
    std::span<const TrajectoryRecord> scheme_trials,
    const ExperimentConfig &baseline_cfg,
    std::span<const TrajectoryRecord> baseline_trials) {
    if (scheme_cfg.n != baseline_cfg.n || scheme_cfg.eps() != baseline_cfg.eps()) {
        throw ParameterError("speedup comparison needs the same n and epsilon for scheme and baseline");
    }
    SpeedupReport r;
    check_incomplete("scheme", scheme_trials, r.scheme_incomplete);
    check_incomplete("baseline", baseline_trials, r.baseline_incomplete);

    double dt = scheme_cfg.strength().dt;
    uint64_t seed = scheme_cfg.seed ^ 0x5bd1e995u;
    r.scheme_rate = estimate_ensemble_rate(scheme_trials, 0.5, scheme_cfg.condition_correct, dt, seed);
    r.baseline_rate = estimate_ensemble_rate(baseline_trials, 0.5, baseline_cfg.condition_correct, dt, seed + 1);
    r.ratio = r.scheme_rate.slope / r.baseline_rate.slope;
    r.ratio_ci = bootstrap_ratio_ci(r.scheme_rate.per_trial, r.baseline_rate.per_trial, seed + 2);

    std::vector<double> ts = completed_steps(scheme_trials);
    std::vector<double> tb = completed_steps(baseline_trials);
    if (ts.empty() || tb.empty()) {
        throw InsufficientData("no completed trials to compare times to target");
    }
    r.scheme_steps = summarize(ts, seed + 3);
    r.baseline_steps = summarize(tb, seed + 4);
    r.time_ratio = mean_of(tb) / mean_of(ts);
    r.time_ratio_ci = bootstrap_ratio_ci(tb, ts, seed + 5);

    if (scheme_cfg.scheme == SchemeKind::GuessAndCheck) {
        std::vector<double> entries, restarts, wasted;
        for (const auto &t : scheme_trials) {
            entries.push_back(static_cast<double>(t.check_entries));
            restarts.push_back(static_cast<double>(t.restarts));
            wasted.push_back(static_cast<double>(t.wasted_steps));
        }
        r.check_entries = summarize(entries, seed + 6);
        r.restarts = summarize(restarts, seed + 7);
        r.wasted_steps = summarize(wasted, seed + 8);
    }
    return r;
}

SpeedupReport estimate_speedup(const ExperimentConfig &scheme_cfg, const ExperimentConfig &baseline_cfg) {
    std::vector<TrajectoryRecord> s = run_ensemble(scheme_cfg);
    std::vector<TrajectoryRecord> b = run_ensemble(baseline_cfg);
    return estimate_speedup(scheme_cfg, s, baseline_cfg, b);
}

}  // namespace qreadout
