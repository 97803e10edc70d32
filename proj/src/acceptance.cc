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

#include "qreadout/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

#include "qreadout/alloc_probe.h"
#include "qreadout/estimation.h"
#include "qreadout/experiment.h"
#include "qreadout/verify.h"

namespace qreadout {

namespace {

constexpr double kEps = 0.05;
// Rate criteria that fix no depth run this deep, where the finite-time
// corrections to the slope are a few percent. Still clear of subnormals in
// the linear 2^n posteriors.
constexpr double kDeepTarget = 1e-200;

std::string fmt(const char *f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, x);
    return buf;
}

bool within(double value, double expected, double rel) {
    return std::abs(value - expected) <= rel * std::abs(expected);
}

ExperimentConfig base_config(const AcceptanceOptions &opt, SchemeKind scheme, size_t n, size_t trials, double target) {
    ExperimentConfig c;
    c.scheme = scheme;
    c.n = n;
    c.epsilon = kEps;
    c.trials = trials;
    c.target_infidelity = target;
    c.seed = opt.seed;
    c.threads = opt.threads;
    // A fine grid keeps enough points in the trailing window of short runs.
    c.check_interval = 10;
    c.max_steps = 2'000'000;
    return c;
}

void append(std::string &s, const std::string &part) {
    if (!s.empty()) {
        s += "; ";
    }
    s += part;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// Rate of one ensemble, per step.
EnsembleRate ensemble_rate(const ExperimentConfig &cfg) {
    auto trials = run_ensemble(cfg);
    return estimate_ensemble_rate(trials, 0.5, cfg.condition_correct, 1.0, cfg.seed);
}

void baseline_rate(const AcceptanceOptions &opt, CriterionResult &r) {
    Timer timer;
    bool ok = true;
    double expected = -2 * kEps * kEps;
    for (size_t n : {1, 2, 4}) {
        EnsembleRate e = ensemble_rate(base_config(opt, SchemeKind::NoControl, n, 200, 1e-8));
        bool good = within(e.slope, expected, 0.10);
        ok = ok && good;
        append(r.measured, "n=" + std::to_string(n) + " rate=" + fmt("%.4e", e.slope) + fmt(" (ratio %.3f)", e.slope / expected));
    }
    double t = timer.seconds();
    append(r.measured, fmt("runtime=%.1fs", t));
    // Ungraded: the same estimator run deeper, to separate finite-depth bias
    // from a wrong asymptote.
    std::string deep;
    for (size_t n : {1, 2, 4}) {
        EnsembleRate e = ensemble_rate(base_config(opt, SchemeKind::NoControl, n, 200, kDeepTarget));
        deep += (deep.empty() ? "" : " ") + fmt("%.3f", e.slope / expected);
    }
    append(r.measured, "ungraded ratios at 1e-200: " + deep);
    r.required = "rate = -5.0e-3 +-10% for each n, runtime <= 60s";
    r.passed = ok && t <= 60;
}

void gc_check_rate(const AcceptanceOptions &opt, CriterionResult &r) {
    Timer timer;
    bool ok = true;
    for (size_t n : {2, 4, 8}) {
        ExperimentConfig c = base_config(opt, SchemeKind::GuessAndCheck, n, 200, kDeepTarget);
        c.condition_correct = true;
        EnsembleRate e = ensemble_rate(c);
        double expected = -2 * kEps * kEps * static_cast<double>(n) / 2;
        bool good = within(e.slope, expected, 0.10);
        ok = ok && good;
        append(
            r.measured, "n=" + std::to_string(n) + " rate=" + fmt("%.4e", e.slope) + fmt(" (ratio %.3f", e.slope / expected) +
                            ", used " + std::to_string(e.used) + ")");
    }
    double t = timer.seconds();
    append(r.measured, fmt("runtime=%.1fs", t));
    r.required = "rate = -2 eps^2 n/2 +-10% for n in {2,4,8}, runtime <= 300s";
    r.passed = ok && t <= 300;
}

SpeedupReport compare(
    const AcceptanceOptions &opt, SchemeKind scheme, size_t n, size_t trials, double target, bool condition_correct = false,
    uint64_t seed_offset = 0) {
    ExperimentConfig s = base_config(opt, scheme, n, trials, target);
    s.condition_correct = condition_correct;
    s.seed += seed_offset;
    ExperimentConfig b = base_config(opt, SchemeKind::NoControl, n, trials, target);
    b.seed += seed_offset;
    return estimate_speedup(s, b);
}

void rp_speedup(const AcceptanceOptions &opt, CriterionResult &r) {
    Timer timer;
    bool ok = true;
    struct Case {
        size_t n;
        double expected;
    };
    for (Case c : {Case{2, 4.0 / 3.0}, Case{3, 12.0 / 7.0}}) {
        SpeedupReport rep = compare(opt, SchemeKind::RandomPermutation, c.n, 400, kDeepTarget);
        ok = ok && within(rep.ratio, c.expected, 0.10);
        append(
            r.measured, "n=" + std::to_string(c.n) + fmt(" ratio=%.4f", rep.ratio) + fmt(" (target %.4f)", c.expected));
    }
    double t = timer.seconds();
    append(r.measured, fmt("runtime=%.1fs", t));
    r.required = "rate ratio within 10% of 4/3 (n=2) and 12/7 (n=3), runtime <= 300s";
    r.passed = ok && t <= 300;
}

void gc_speedup(const AcceptanceOptions &opt, CriterionResult &r) {
    bool ok = true;
    for (size_t n : {4, 8}) {
        // The asymptotic GC regime is the final Check phase on the right
        // candidate; the whole-trajectory window is shown alongside.
        SpeedupReport rep = compare(opt, SchemeKind::GuessAndCheck, n, 200, 1e-10, true);
        SpeedupReport raw = compare(opt, SchemeKind::GuessAndCheck, n, 200, 1e-10, false);
        double expected = static_cast<double>(n) / 2;
        ok = ok && within(rep.ratio, expected, 0.15);
        append(
            r.measured, "n=" + std::to_string(n) + fmt(" ratio=%.3f", rep.ratio) + fmt(" (target %.1f", expected) +
                            fmt(", whole-trajectory window %.3f)", raw.ratio));
    }
    r.required = "conditioned rate ratio within 15% of n/2 for n in {4,8} at target 1e-10";
    r.passed = ok;
}

void lo_band(const AcceptanceOptions &opt, CriterionResult &r) {
    bool ok = true;
    for (size_t n : {2, 3}) {
        SpeedupReport rep = compare(opt, SchemeKind::LocallyOptimal, n, 200, kDeepTarget);
        double lo = 0.8 * static_cast<double>(n) / 4, hi = 1.2 * static_cast<double>(n);
        ok = ok && rep.ratio >= lo && rep.ratio <= hi;
        append(r.measured, "n=" + std::to_string(n) + fmt(" ratio=%.3f", rep.ratio) + fmt(" in [%.2f,", lo) + fmt(" %.2f]", hi));
    }
    r.required = "rate ratio in [0.8 n/4, 1.2 n] for n in {2,3}";
    r.passed = ok;
}

void oracle(const AcceptanceOptions &opt, CriterionResult &r) {
    Timer timer;
    OracleSweepOptions o;
    o.seed += opt.seed;
    PartitionSweepOptions p;
    p.seed += opt.seed;
    CheckResult a = verify_oracle_equivalence(o);
    CheckResult b = verify_partition(p);
    double t = timer.seconds();
    append(r.measured, fmt("max|dp|=%.3e", a.worst));
    append(r.measured, fmt("max rel dZ=%.3e", b.worst));
    append(r.measured, fmt("runtime=%.1fs", t));
    r.required = "max |dp| < 1e-9 (n=2..8, 50 seeds, 1e4 rounds); rel dZ < 1e-12 (1e3 sets, n<=12); runtime <= 120s";
    r.passed = a.passed && b.passed && t <= 120;
}

void check_entries(const AcceptanceOptions &opt, CriterionResult &r) {
    ExperimentConfig c = base_config(opt, SchemeKind::GuessAndCheck, 8, 1000, 1e-8);
    auto trials = run_ensemble(c);
    std::vector<double> entries;
    for (const auto &t : trials) {
        entries.push_back(static_cast<double>(t.check_entries));
    }
    Summary s = summarize(entries, opt.seed);
    append(r.measured, fmt("mean entries=%.3f", s.mean) + fmt(" +- %.3f", s.std_error));
    r.required = "mean Check-phase entries in [1.5, 2.5]";
    r.passed = s.mean >= 1.5 && s.mean <= 2.5;
}

void finite_target(const AcceptanceOptions &opt, CriterionResult &r) {
    const size_t n = 16;
    SpeedupReport shallow = compare(opt, SchemeKind::GuessAndCheck, n, 200, 1e-4);
    // Independent streams, so the wasted-time comparison is not trivially exact.
    SpeedupReport deep = compare(opt, SchemeKind::GuessAndCheck, n, 200, 1e-8, false, 1000);
    double s1 = shallow.time_ratio, s2 = deep.time_ratio;
    const Summary &w1 = *shallow.wasted_steps;
    const Summary &w2 = *deep.wasted_steps;
    double gap = std::abs(w1.mean - w2.mean);
    double allowed = 1.96 * std::hypot(w1.std_error, w2.std_error);
    bool shape = 1.0 < s1 && s1 < s2 && s2 < static_cast<double>(n) / 2;
    append(r.measured, fmt("S(1e-4)=%.3f", s1));
    append(r.measured, fmt("S(1e-8)=%.3f", s2));
    append(r.measured, fmt("wasted %.1f", w1.mean) + fmt(" vs %.1f", w2.mean) + fmt(" (|diff| %.2f", gap) + fmt(" <= %.2f)", allowed));
    r.required = "1 < S(1e-4) < S(1e-8) < 8; wasted-time means equal within 95% CI";
    r.passed = shape && gap <= allowed;
}

struct Throughput {
    double seconds_per_step;
    size_t state_bytes;
    size_t largest_request;
    bool completed;
};

// Steps GC schemes to the target directly, so only the scheme's own
// allocations are seen (not the harness's trajectory buffers).
Throughput gc_throughput(const AcceptanceOptions &opt, size_t n) {
    const size_t trials = 20;
    const double log_target = std::log(1e-8);
    ExperimentConfig c = base_config(opt, SchemeKind::GuessAndCheck, n, trials, 1e-8);
    Throughput out{INFINITY, 0, 0, true};
    // Best of three passes over the same trials; the first also warms the clock up.
    for (int pass = 0; pass < 3; pass++) {
        size_t steps = 0;
        double secs = 0;
        for (size_t t = 0; t < trials; t++) {
            Rng rng = Rng::for_trial(c.seed, t);
            RegisterConfig truth = RegisterConfig::random(n, rng);
            auto scheme = make_scheme(SchemeKind::GuessAndCheck, truth, kEps, c.scheme_options());
            alloc_probe::start();
            Timer timer;
            size_t k = 0;
            while (k < c.max_steps && scheme->log_infidelity() > log_target) {
                scheme->step(rng);
                k++;
            }
            secs += timer.seconds();
            alloc_probe::stop();
            out.largest_request = std::max(out.largest_request, alloc_probe::largest_request());
            out.completed = out.completed && k < c.max_steps;
            out.state_bytes = std::max(out.state_bytes, scheme->state_bytes());
            steps += k;
        }
        out.seconds_per_step = std::min(out.seconds_per_step, secs / static_cast<double>(std::max<size_t>(steps, 1)));
    }
    return out;
}

void memory_scaling(const AcceptanceOptions &opt, CriterionResult &r) {
    Throughput small = gc_throughput(opt, 256);
    Throughput large = gc_throughput(opt, 1024);
    double mem_ratio = static_cast<double>(large.state_bytes) / static_cast<double>(small.state_bytes);
    double time_ratio = large.seconds_per_step / small.seconds_per_step;
    // Anything proportional to 2^n would dwarf these bounds at n = 256.
    bool no_exponential = large.largest_request <= 64 * 1024 && small.largest_request <= 64 * 256;
    append(r.measured, "completed=" + std::string(small.completed && large.completed ? "yes" : "no"));
    append(r.measured, "state " + std::to_string(small.state_bytes) + "B -> " + std::to_string(large.state_bytes) + "B" + fmt(" (x%.2f)", mem_ratio));
    append(r.measured, "largest alloc " + std::to_string(small.largest_request) + "B -> " + std::to_string(large.largest_request) + "B");
    append(r.measured, fmt("time/step x%.2f", time_ratio));
    r.required = "state bytes x4 +-10% for n 256->1024, no allocation above 64n bytes, time per step ratio <= 5";
    r.passed = small.completed && large.completed && within(mem_ratio, 4.0, 0.10) && no_exponential && time_ratio <= 5.0;
}

void properties(const AcceptanceOptions &, CriterionResult &r) {
    CheckResult m = verify_martingale(1e-12);
    CheckResult z = verify_normalization(1e-12);
    append(r.measured, fmt("martingale worst=%.3e", m.worst));
    append(r.measured, fmt("normalization worst=%.3e", z.worst));
    r.required = "both below 1e-12";
    r.passed = m.passed && z.passed;
}

struct Entry {
    const char *title;
    void (*run)(const AcceptanceOptions &, CriterionResult &);
};

const Entry kEntries[kNumCriteria] = {
    {"NoControl baseline rate", baseline_rate},
    {"GC check-phase rate", gc_check_rate},
    {"RP exact speedup", rp_speedup},
    {"GC asymptotic speedup", gc_speedup},
    {"LO speedup band", lo_band},
    {"Two-basis oracle equivalence", oracle},
    {"GC Check-phase entries", check_entries},
    {"GC finite-target speedup", finite_target},
    {"GC memory and throughput scaling", memory_scaling},
    {"Martingale and normalization", properties},
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions &opt) {
    if (id < 1 || id > kNumCriteria) {
        throw std::out_of_range("no acceptance criterion " + std::to_string(id));
    }
    CriterionResult r;
    r.id = id;
    r.title = kEntries[id - 1].title;
    Timer timer;
    try {
        kEntries[id - 1].run(opt, r);
    } catch (const std::exception &e) {
        r.passed = false;
        append(r.measured, std::string("error: ") + e.what());
    }
    r.seconds = timer.seconds();
    return r;
}

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions &opt, const std::function<void(const CriterionResult &)> &on_result) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kNumCriteria; id++) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) {
            continue;
        }
        out.push_back(run_criterion(id, opt));
        if (on_result) {
            on_result(out.back());
        }
    }
    return out;
}

std::string format_criterion(const CriterionResult &r) {
    std::ostringstream s;
    s << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.title << " | " << r.measured << " | required "
      << r.required << " | " << fmt("%.1fs", r.seconds);
    return s.str();
}

}  // namespace qreadout
