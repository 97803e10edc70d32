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

#include "qreadout/verify.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "qreadout/full_posterior.h"
#include "qreadout/marginals.h"
#include "qreadout/measurement.h"
#include "qreadout/oracle.h"
#include "qreadout/random.h"
#include "qreadout/schemes.h"
#include "qreadout/two_basis.h"

namespace qreadout {

namespace {

std::string describe(const char *what, double worst, double tol) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: worst %.3e (limit %.1e)", what, worst, tol);
    return buf;
}

CheckResult finish(std::string name, const char *what, double worst, double tol) {
    CheckResult r;
    r.name = std::move(name);
    r.worst = worst;
    r.tolerance = tol;
    r.passed = worst < tol;
    r.detail = describe(what, worst, tol);
    return r;
}

std::vector<Outcome> outcomes_from_bits(uint64_t bits, size_t n) {
    std::vector<Outcome> out(n);
    for (size_t k = 0; k < n; k++) {
        out[k] = ((bits >> k) & 1) ? Outcome::Minus : Outcome::Plus;
    }
    return out;
}

// Probability of the whole outcome vector given detector labels `label`.
double outcome_vector_probability(uint64_t label, std::span<const Outcome> outcomes, double eps) {
    double p = 1;
    for (size_t k = 0; k < outcomes.size(); k++) {
        double plus = outcome_probability(static_cast<BitValue>((label >> k) & 1), eps);
        p *= outcomes[k] == Outcome::Plus ? plus : 1.0 - plus;
    }
    return p;
}

// Log-odds spread wide enough to include nearly-certain bits.
MarginalSet random_marginals(size_t n, Rng &rng, double spread) {
    std::vector<double> p(n);
    for (auto &x : p) {
        double lo = (2 * rng.uniform() - 1) * spread;
        x = 1.0 / (1.0 + std::exp(-lo));
        x = std::clamp(x, 1e-300, 1.0 - 1e-16);
    }
    return MarginalSet::from_probabilities(p);
}

FullPosterior random_full(size_t n, Rng &rng) {
    std::vector<double> p(size_t{1} << n);
    double total = 0;
    for (auto &x : p) {
        x = rng.uniform() + 1e-3;
        total += x;
    }
    for (auto &x : p) {
        x /= total;
    }
    return FullPosterior::from_probabilities(n, std::move(p));
}

const double kEpsGrid[] = {0.001, 0.01, 0.05, 0.1, 0.3, 0.5, 0.9, 0.999};

}  // namespace

CheckResult verify_oracle_equivalence(const OracleSweepOptions &opt) {
    double worst = 0;
    for (size_t n = opt.n_min; n <= opt.n_max; n++) {
        for (size_t seed = 0; seed < opt.seeds; seed++) {
            Rng rng = Rng::for_trial(opt.seed + n, seed);
            RegisterConfig truth = RegisterConfig::random(n, rng);
            RegisterConfig candidate = rng.coin() ? truth : RegisterConfig::random(n, rng);
            double eps = 0.01 + 0.19 * rng.uniform();

            TwoBasisMarginals tb(MarginalSet::uniform(n), MarginalSet::uniform(n), candidate);
            BrutePosterior brute(n, candidate);
            RegisterConfig exchanged = exchanged_label(truth, candidate);
            std::vector<Outcome> outcomes(n);
            for (size_t round = 1; round <= opt.rounds; round++) {
                Basis basis = rng.coin() ? Basis::Original : Basis::Exchanged;
                sample_outcomes(basis == Basis::Original ? truth : exchanged, eps, rng, outcomes);
                tb.update(basis, outcomes, eps);
                brute.append(basis, outcomes, eps);
                if (round % opt.checkpoint_every == 0 || round == 1) {
                    std::vector<double> exact = brute.probabilities();
                    for (size_t s = 0; s < exact.size(); s++) {
                        double fast = gc_config_probability(tb, RegisterConfig::from_index(s, n));
                        worst = std::max(worst, std::abs(fast - exact[s]));
                    }
                }
            }
        }
    }
    return finish("oracle equivalence", "max |two-basis - exhaustive|", worst, opt.tolerance);
}

CheckResult verify_partition(const PartitionSweepOptions &opt) {
    Rng rng(opt.seed);
    double worst = 0;
    for (size_t i = 0; i < opt.sets; i++) {
        size_t n = 1 + rng.below(opt.n_max);
        double spread = i % 3 == 0 ? 30.0 : 4.0;
        MarginalSet b = random_marginals(n, rng, spread);
        MarginalSet t = random_marginals(n, rng, spread);
        TwoBasisMarginals tb(b, t, RegisterConfig::random(n, rng));
        double exact = brute_partition(tb);
        double fast = gc_partition(tb);
        worst = std::max(worst, std::abs(fast - exact) / exact);
    }
    return finish("partition function", "max relative error", worst, opt.tolerance);
}

CheckResult verify_martingale(double tolerance) {
    double worst = 0;

    // Single bit.
    const double ps[] = {1e-9, 1e-3, 0.01, 0.1, 0.25, 0.5, 0.6, 0.75, 0.9, 0.99, 0.999, 1 - 1e-9};
    for (double eps : kEpsGrid) {
        for (double p : ps) {
            double plus = (1.0 + eps * (2.0 * p - 1.0)) / 2.0;
            double e = plus * bayes_update(p, Outcome::Plus, eps) + (1.0 - plus) * bayes_update(p, Outcome::Minus, eps);
            worst = std::max(worst, std::abs(e - p));
        }
    }

    Rng rng(7);
    // Full posterior, with and without relabelling.
    for (size_t n = 1; n <= 4; n++) {
        for (int rep = 0; rep < 6; rep++) {
            FullPosterior post = random_full(n, rng);
            Permutation perm = rep == 0 ? Permutation::identity(post.size()) : random_permutation(post.size(), rng);
            double eps = kEpsGrid[rng.below(std::size(kEpsGrid) - 1)];
            std::vector<double> expected(post.size(), 0.0);
            for (uint64_t bits = 0; bits < (uint64_t{1} << n); bits++) {
                auto outcomes = outcomes_from_bits(bits, n);
                double pred = 0;
                for (size_t s = 0; s < post.size(); s++) {
                    pred += post[s] * outcome_vector_probability(perm(s), outcomes, eps);
                }
                FullPosterior next = full_update(post, perm, outcomes, eps);
                for (size_t s = 0; s < post.size(); s++) {
                    expected[s] += pred * next[s];
                }
            }
            for (size_t s = 0; s < post.size(); s++) {
                worst = std::max(worst, std::abs(expected[s] - post[s]));
            }
        }
    }

    // Two-basis posterior, rounds in either basis.
    for (size_t n = 1; n <= 4; n++) {
        for (int rep = 0; rep < 6; rep++) {
            TwoBasisMarginals tb(random_marginals(n, rng, 3.0), random_marginals(n, rng, 3.0), RegisterConfig::random(n, rng));
            double eps = kEpsGrid[rng.below(std::size(kEpsGrid) - 1)];
            size_t size = size_t{1} << n;
            std::vector<double> current(size);
            std::vector<uint64_t> label_b(size), label_t(size);
            for (size_t s = 0; s < size; s++) {
                RegisterConfig c = RegisterConfig::from_index(s, n);
                current[s] = gc_config_probability(tb, c);
                label_b[s] = s;
                label_t[s] = exchanged_label(c, tb.candidate()).index();
            }
            for (Basis basis : {Basis::Original, Basis::Exchanged}) {
                const auto &labels = basis == Basis::Original ? label_b : label_t;
                std::vector<double> expected(size, 0.0);
                for (uint64_t bits = 0; bits < size; bits++) {
                    auto outcomes = outcomes_from_bits(bits, n);
                    double pred = 0;
                    for (size_t s = 0; s < size; s++) {
                        pred += current[s] * outcome_vector_probability(labels[s], outcomes, eps);
                    }
                    TwoBasisMarginals next = tb;
                    next.update(basis, outcomes, eps);
                    for (size_t s = 0; s < size; s++) {
                        expected[s] += pred * gc_config_probability(next, RegisterConfig::from_index(s, n));
                    }
                }
                for (size_t s = 0; s < size; s++) {
                    worst = std::max(worst, std::abs(expected[s] - current[s]));
                }
            }
        }
    }
    return finish("martingale", "max |E[posterior after round] - posterior|", worst, tolerance);
}

CheckResult verify_normalization(double tolerance) {
    double worst = 0;
    Rng rng(11);
    for (size_t n = 1; n <= 10; n++) {
        for (int rep = 0; rep < 4; rep++) {
            double eps = kEpsGrid[rng.below(std::size(kEpsGrid) - 1)];
            RegisterConfig truth = RegisterConfig::random(n, rng);
            size_t size = size_t{1} << n;

            FullPosterior full = FullPosterior::uniform(n);
            MarginalSet m = MarginalSet::uniform(n);
            TwoBasisMarginals tb(MarginalSet::uniform(n), MarginalSet::uniform(n), RegisterConfig::random(n, rng));
            RegisterConfig exchanged = exchanged_label(truth, tb.candidate());
            std::vector<Outcome> outcomes(n);
            size_t rounds = 1 + rng.below(200);
            for (size_t r = 0; r < rounds; r++) {
                Permutation perm = random_permutation(size, rng);
                sample_outcomes(perm(truth.index()), eps, rng, outcomes);
                full.update(perm, outcomes, eps);
                sample_outcomes(truth, eps, rng, outcomes);
                m.update(outcomes, eps);
                Basis basis = rng.coin() ? Basis::Original : Basis::Exchanged;
                sample_outcomes(basis == Basis::Original ? truth : exchanged, eps, rng, outcomes);
                tb.update(basis, outcomes, eps);
            }
            long double total_full = 0, total_m = 0, total_tb = 0;
            for (size_t s = 0; s < size; s++) {
                RegisterConfig c = RegisterConfig::from_index(s, n);
                total_full += full[s];
                total_m += factored_config_probability(m, c);
                total_tb += gc_config_probability(tb, c);
            }
            for (long double t : {total_full, total_m, total_tb}) {
                worst = std::max(worst, static_cast<double>(std::fabs(t - 1.0L)));
            }
        }
    }
    return finish("normalization", "max |sum of probabilities - 1|", worst, tolerance);
}

std::vector<CheckResult> run_verification(const VerifyOptions &opt) {
    return {
        verify_oracle_equivalence(opt.oracle),
        verify_partition(opt.partition),
        verify_martingale(opt.property_tolerance),
        verify_normalization(opt.property_tolerance),
    };
}

}  // namespace qreadout
