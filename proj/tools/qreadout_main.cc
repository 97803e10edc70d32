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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qreadout/acceptance.h"
#include "qreadout/errors.h"
#include "qreadout/estimation.h"
#include "qreadout/experiment.h"
#include "qreadout/report.h"
#include "qreadout/verify.h"

using namespace qreadout;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct ConfigFlags {
    std::optional<std::string> config;
    std::optional<std::string> scheme;
    std::optional<size_t> n;
    std::optional<double> epsilon;
    std::optional<double> gamma;
    std::optional<double> dt;
    std::optional<double> p0;
    std::optional<double> p0_prime;
    std::optional<double> target;
    std::optional<size_t> max_steps;
    std::optional<size_t> trials;
    std::optional<uint64_t> seed;
    std::optional<size_t> check_interval;
    std::optional<size_t> perm_interval;
    bool condition_correct = false;
    std::optional<std::string> out;
    std::optional<std::string> summary;
    std::optional<size_t> threads;

    void attach(CLI::App *app) {
        app->add_option("--config", config, "JSON file with default settings; flags override it");
        app->add_option("--scheme", scheme, "none, rp, lo or gc");
        app->add_option("--n", n, "register size");
        auto *e = app->add_option("--epsilon", epsilon, "per-shot measurement strength");
        auto *g = app->add_option("--gamma", gamma, "measurement rate (with --dt)");
        auto *d = app->add_option("--dt", dt, "time step (with --gamma)");
        e->excludes(g)->excludes(d);
        app->add_option("--p0", p0, "GC candidate acceptance threshold");
        app->add_option("--p0-prime", p0_prime, "GC candidate rejection threshold");
        app->add_option("--target", target, "target infidelity");
        app->add_option("--max-steps", max_steps, "step budget per trial");
        app->add_option("--trials", trials, "number of trials");
        app->add_option("--seed", seed, "base seed");
        app->add_option("--check-interval", check_interval, "steps between samples and GC tests");
        app->add_option("--perm-interval", perm_interval, "RP steps between permutations (0 = never)");
        app->add_flag("--condition-correct", condition_correct, "fit the final Check segment of correct-candidate trials");
        app->add_option("--out", out, "trajectory CSV path");
        app->add_option("--summary", summary, "summary JSON path");
        app->add_option("--threads", threads, "worker threads (0 = all cores)");
    }

    ExperimentConfig build() const {
        ExperimentConfig c;
        if (config) {
            std::ifstream in(*config);
            if (!in) {
                throw ParameterError("cannot open config file " + *config);
            }
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception &ex) {
                throw ParameterError("config file " + *config + ": " + ex.what());
            }
            apply_config_json(j, c);
        }
        if (scheme) c.scheme = parse_scheme(*scheme);
        if (n) c.n = *n;
        if (epsilon) {
            c.epsilon = *epsilon;
            c.gamma.reset();
            c.dt.reset();
        }
        if (gamma || dt) {
            c.epsilon.reset();
            if (gamma) c.gamma = *gamma;
            if (dt) c.dt = *dt;
        }
        if (!c.epsilon && !c.gamma && !c.dt) {
            c.epsilon = 0.05;
        }
        if (p0) c.thresholds.p0 = *p0;
        if (p0_prime) c.thresholds.p0_prime = *p0_prime;
        if (target) c.target_infidelity = *target;
        if (max_steps) c.max_steps = *max_steps;
        if (trials) c.trials = *trials;
        if (seed) c.seed = *seed;
        if (check_interval) c.check_interval = *check_interval;
        if (perm_interval) c.perm_interval = *perm_interval;
        if (condition_correct) c.condition_correct = true;
        if (out) c.out_path = *out;
        if (summary) c.summary_path = *summary;
        if (threads) c.threads = *threads;
        c.validate();
        return c;
    }
};

void write_json(const nlohmann::ordered_json &j, const std::string &path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw ParameterError("cannot write " + path);
    }
    f << j.dump(2) << '\n';
}

int cmd_run(const ConfigFlags &flags) {
    ExperimentConfig cfg = flags.build();
    auto trials = run_ensemble(cfg);
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        if (!f) {
            throw ParameterError("cannot write " + cfg.out_path);
        }
        write_trajectory_csv(f, trials);
    } else {
        write_trajectory_csv(std::cout, trials);
        if (cfg.summary_path.empty()) {
            return kExitOk;
        }
    }
    write_json(run_summary(cfg, trials), cfg.summary_path);
    return kExitOk;
}

int cmd_compare(const ConfigFlags &flags, const std::string &baseline) {
    ExperimentConfig cfg = flags.build();
    ExperimentConfig base = cfg;
    base.scheme = parse_scheme(baseline);
    base.condition_correct = false;
    base.validate();
    auto s = run_ensemble(cfg);
    auto b = run_ensemble(base);
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        write_trajectory_csv(f, s);
    }
    SpeedupReport rep = estimate_speedup(cfg, s, base, b);
    write_json(speedup_summary(cfg, base, rep), cfg.summary_path);
    return kExitOk;
}

int cmd_verify(const VerifyOptions &opt) {
    bool ok = true;
    for (const CheckResult &r : run_verification(opt)) {
        std::printf("%s %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        ok = ok && r.passed;
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_table(const AcceptanceOptions &opt) {
    bool ok = true;
    run_acceptance(opt, [&](const CriterionResult &r) {
        std::printf("%s\n", format_criterion(r).c_str());
        std::fflush(stdout);
        ok = ok && r.passed;
    });
    return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qreadout: Monte Carlo study of controlled weak readout of a register"};
    app.require_subcommand(1);

    ConfigFlags run_flags;
    CLI::App *run = app.add_subcommand("run", "run one configuration; trajectories CSV and summary JSON");
    run_flags.attach(run);

    ConfigFlags cmp_flags;
    std::string baseline = "none";
    CLI::App *cmp = app.add_subcommand("compare", "scheme against a baseline; speedup JSON");
    cmp_flags.attach(cmp);
    cmp->add_option("--baseline", baseline, "baseline scheme")->capture_default_str();

    VerifyOptions vopt;
    CLI::App *ver = app.add_subcommand("verify", "oracle equivalence, partition and property sweeps");
    ver->add_option("--seeds", vopt.oracle.seeds, "histories per register size")->capture_default_str();
    ver->add_option("--rounds", vopt.oracle.rounds, "rounds per history")->capture_default_str();
    ver->add_option("--n-max", vopt.oracle.n_max, "largest register in the history sweep")->capture_default_str();
    ver->add_option("--sets", vopt.partition.sets, "random marginal sets for the partition sweep")->capture_default_str();

    AcceptanceOptions aopt;
    CLI::App *tab = app.add_subcommand("table", "reproduce the acceptance table");
    tab->add_option("--seed", aopt.seed, "base seed")->capture_default_str();
    tab->add_option("--threads", aopt.threads, "worker threads (0 = all cores)");
    tab->add_option("--only", aopt.only, "criterion numbers to run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*run) return cmd_run(run_flags);
        if (*cmp) return cmd_compare(cmp_flags, baseline);
        if (*ver) return cmd_verify(vopt);
        if (*tab) return cmd_table(aopt);
    } catch (const ParameterError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InsufficientData &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
    return kExitUsage;
}
