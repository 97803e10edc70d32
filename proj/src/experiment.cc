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

#include "qreadout/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qreadout/errors.h"

namespace qreadout {

void ExperimentConfig::validate() const {
    bool has_eps = epsilon.has_value();
    bool has_cont = gamma.has_value() || dt.has_value();
    if (has_eps == has_cont) {
        throw ParameterError("give exactly one of --epsilon or (--gamma, --dt)");
    }
    if (has_cont && !(gamma && dt)) {
        throw ParameterError("--gamma and --dt must be given together");
    }
    double e = eps();
    if (!(e > 0.0 && e < 1.0)) {
        throw ParameterError("measurement strength epsilon must lie in (0, 1)");
    }
    if (n < 1 || n > max_register_size(scheme)) {
        throw ParameterError(
            "n must lie in [1, " + std::to_string(max_register_size(scheme)) + "] for scheme " +
            std::string(scheme_name(scheme)));
    }
    if (scheme == SchemeKind::NoControl && full_posterior && n > kMaxFullPosteriorBits) {
        throw ParameterError("full posterior tracking supports n <= 20");
    }
    if (trials < 1) {
        throw ParameterError("trials must be at least 1");
    }
    if (!(target_infidelity > 0.0 && target_infidelity < 1.0)) {
        throw ParameterError("target infidelity must lie in (0, 1)");
    }
    if (max_steps < 1) {
        throw ParameterError("max_steps must be at least 1");
    }
    if (check_interval < 1) {
        throw ParameterError("check_interval must be at least 1");
    }
    if (scheme == SchemeKind::GuessAndCheck) {
        scheme_options().thresholds.validate();
    }
}

MeasurementStrength ExperimentConfig::strength() const {
    if (epsilon) {
        return MeasurementStrength::from_epsilon(*epsilon);
    }
    if (gamma && dt) {
        return MeasurementStrength::from_continuum(*gamma, *dt);
    }
    throw ParameterError("no measurement strength configured");
}

SchemeOptions ExperimentConfig::scheme_options() const {
    SchemeOptions o;
    o.thresholds = thresholds;
    o.thresholds.check_interval = check_interval;
    o.gc = gc;
    o.perm_interval = perm_interval;
    o.full_posterior = full_posterior;
    return o;
}

TrajectoryRecord run_trial(const ExperimentConfig &cfg, size_t trial_index) {
    Rng rng = Rng::for_trial(cfg.seed, trial_index);
    TrajectoryRecord rec;
    rec.trial = trial_index;
    rec.true_state = RegisterConfig::random(cfg.n, rng);

    std::unique_ptr<ReadoutScheme> scheme = make_scheme(cfg.scheme, rec.true_state, cfg.eps(), cfg.scheme_options());
    double log_target = std::log(cfg.target_infidelity);
    auto sample = [&](size_t step, double l) {
        rec.samples.push_back({step, std::min(l, 0.0), scheme->phase(), scheme->restarts()});
    };

    double l = scheme->log_infidelity();
    sample(0, l);
    size_t entries = 0;
    size_t step = 0;
    while (step < cfg.max_steps) {
        scheme->step(rng);
        step++;
        if (scheme->check_entries() != entries) {
            entries = scheme->check_entries();
            rec.final_check_start = step;
        }
        l = scheme->log_infidelity();
        if (l <= log_target) {
            rec.completed = true;
            sample(step, l);
            break;
        }
        if (step % cfg.check_interval == 0) {
            sample(step, l);
        }
    }

    rec.steps = step;
    rec.final_ln_delta = std::min(l, 0.0);
    rec.check_entries = scheme->check_entries();
    rec.restarts = scheme->restarts();
    if (cfg.scheme == SchemeKind::GuessAndCheck) {
        if (scheme->phase() == GcPhase::Guess) {
            // Still guessing: everything so far was spent without a live candidate.
            rec.final_check_start = step;
        }
        rec.wasted_steps = rec.final_check_start;
        const RegisterConfig *c = scheme->candidate();
        rec.final_candidate_correct = c != nullptr && *c == rec.true_state;
    } else {
        rec.final_check_start = 0;
    }
    return rec;
}

std::vector<TrajectoryRecord> run_ensemble(const ExperimentConfig &cfg) {
    cfg.validate();
    std::vector<TrajectoryRecord> out(cfg.trials);
    size_t workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, cfg.trials);

    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        while (true) {
            size_t t = next.fetch_add(1);
            if (t >= cfg.trials) {
                return;
            }
            try {
                out[t] = run_trial(cfg, t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = cfg.trials;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (size_t i = 0; i < workers; i++) {
            pool.emplace_back(work);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

}  // namespace qreadout
