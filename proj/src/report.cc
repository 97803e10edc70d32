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

#include "qreadout/report.h"

#include <cstdio>
#include <ostream>

#include "qreadout/errors.h"

namespace qreadout {

using nlohmann::ordered_json;

std::string_view phase_name(GcPhase phase) {
    return phase == GcPhase::Check ? "check" : "guess";
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_trajectory_csv(std::ostream &out, std::span<const TrajectoryRecord> trials) {
    out << "trial,step,ln_delta,phase,restarts\n";
    for (const auto &t : trials) {
        for (const auto &s : t.samples) {
            out << t.trial << ',' << s.step << ',' << format_double(s.ln_delta) << ',' << phase_name(s.phase) << ','
                << s.restarts << '\n';
        }
    }
}

namespace {

ordered_json base_fields(const ExperimentConfig &cfg) {
    ordered_json j;
    j["scheme"] = scheme_name(cfg.scheme);
    j["n"] = cfg.n;
    j["epsilon"] = cfg.eps();
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    return j;
}

ordered_json interval_json(const Interval &i) {
    return ordered_json::array({i.low, i.high});
}

ordered_json summary_json(const Summary &s) {
    return {{"mean", s.mean}, {"stderr", s.std_error}, {"ci", interval_json(s.ci)}, {"count", s.count}};
}

ordered_json rate_json(const EnsembleRate &r) {
    return {
        {"rate_per_step", r.slope},
        {"rate_per_time", r.slope_per_time},
        {"stderr", r.std_error},
        {"ci", interval_json(r.ci)},
        {"trials_used", r.used},
        {"trials_skipped", r.skipped}};
}

}  // namespace

ordered_json run_summary(const ExperimentConfig &cfg, std::span<const TrajectoryRecord> trials) {
    ordered_json j = base_fields(cfg);
    uint64_t seed = cfg.seed ^ 0x5bd1e995u;
    try {
        EnsembleRate r = estimate_ensemble_rate(trials, 0.5, cfg.condition_correct, cfg.strength().dt, seed);
        j["rate_per_step"] = r.slope;
        j["rate_stderr"] = r.std_error;
        j["speedup_rate"] = nullptr;
        j["speedup_time"] = nullptr;
        j["ci_low"] = r.ci.low;
        j["ci_high"] = r.ci.high;
    } catch (const InsufficientData &) {
        j["rate_per_step"] = nullptr;
        j["rate_stderr"] = nullptr;
        j["speedup_rate"] = nullptr;
        j["speedup_time"] = nullptr;
        j["ci_low"] = nullptr;
        j["ci_high"] = nullptr;
    }
    std::vector<double> entries, restarts, steps;
    size_t incomplete = 0;
    for (const auto &t : trials) {
        entries.push_back(static_cast<double>(t.check_entries));
        restarts.push_back(static_cast<double>(t.restarts));
        if (t.completed) {
            steps.push_back(static_cast<double>(t.steps));
        } else {
            incomplete++;
        }
    }
    bool gc = cfg.scheme == SchemeKind::GuessAndCheck;
    j["mean_check_entries"] = gc ? ordered_json(summarize(entries).mean) : ordered_json(nullptr);
    j["mean_restarts"] = gc ? ordered_json(summarize(restarts).mean) : ordered_json(nullptr);
    j["mean_steps_to_target"] = steps.empty() ? ordered_json(nullptr) : ordered_json(summarize(steps).mean);
    j["incomplete_trials"] = incomplete;
    return j;
}

ordered_json speedup_summary(
    const ExperimentConfig &scheme_cfg, const ExperimentConfig &baseline_cfg, const SpeedupReport &r) {
    ordered_json j = base_fields(scheme_cfg);
    j["rate_per_step"] = r.scheme_rate.slope;
    j["rate_stderr"] = r.scheme_rate.std_error;
    j["speedup_rate"] = r.ratio;
    j["speedup_time"] = r.time_ratio;
    j["ci_low"] = r.ratio_ci.low;
    j["ci_high"] = r.ratio_ci.high;
    j["mean_check_entries"] = r.check_entries ? ordered_json(r.check_entries->mean) : ordered_json(nullptr);
    j["mean_restarts"] = r.restarts ? ordered_json(r.restarts->mean) : ordered_json(nullptr);
    j["mean_steps_to_target"] = r.scheme_steps.mean;

    ordered_json d;
    d["baseline_scheme"] = scheme_name(baseline_cfg.scheme);
    d["target"] = scheme_cfg.target_infidelity;
    d["scheme_rate"] = rate_json(r.scheme_rate);
    d["baseline_rate"] = rate_json(r.baseline_rate);
    d["rate_ratio"] = {{"value", r.ratio}, {"ci", interval_json(r.ratio_ci)}};
    d["time_ratio"] = {{"value", r.time_ratio}, {"ci", interval_json(r.time_ratio_ci)}};
    d["scheme_steps_to_target"] = summary_json(r.scheme_steps);
    d["baseline_steps_to_target"] = summary_json(r.baseline_steps);
    if (r.check_entries) {
        d["check_entries"] = summary_json(*r.check_entries);
        d["restarts"] = summary_json(*r.restarts);
        d["wasted_steps"] = summary_json(*r.wasted_steps);
    }
    d["scheme_incomplete"] = r.scheme_incomplete;
    d["baseline_incomplete"] = r.baseline_incomplete;
    j["detail"] = std::move(d);
    return j;
}

void apply_config_json(const nlohmann::json &j, ExperimentConfig &cfg) {
    if (!j.is_object()) {
        throw ParameterError("config file must hold a JSON object");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string &k = it.key();
        const nlohmann::json &v = it.value();
        try {
            if (k == "scheme") {
                cfg.scheme = parse_scheme(v.get<std::string>());
            } else if (k == "n") {
                cfg.n = v.get<size_t>();
            } else if (k == "epsilon") {
                cfg.epsilon = v.get<double>();
            } else if (k == "gamma") {
                cfg.gamma = v.get<double>();
            } else if (k == "dt") {
                cfg.dt = v.get<double>();
            } else if (k == "p0") {
                cfg.thresholds.p0 = v.get<double>();
            } else if (k == "p0_prime") {
                cfg.thresholds.p0_prime = v.get<double>();
            } else if (k == "target") {
                cfg.target_infidelity = v.get<double>();
            } else if (k == "max_steps") {
                cfg.max_steps = v.get<size_t>();
            } else if (k == "trials") {
                cfg.trials = v.get<size_t>();
            } else if (k == "seed") {
                cfg.seed = v.get<uint64_t>();
            } else if (k == "check_interval") {
                cfg.check_interval = v.get<size_t>();
            } else if (k == "perm_interval") {
                cfg.perm_interval = v.get<size_t>();
            } else if (k == "condition_correct") {
                cfg.condition_correct = v.get<bool>();
            } else if (k == "out") {
                cfg.out_path = v.get<std::string>();
            } else if (k == "summary") {
                cfg.summary_path = v.get<std::string>();
            } else if (k == "threads") {
                cfg.threads = v.get<size_t>();
            } else {
                throw ParameterError("unknown config key '" + k + "'");
            }
        } catch (const nlohmann::json::exception &e) {
            throw ParameterError("config key '" + k + "': " + e.what());
        }
    }
}

}  // namespace qreadout
