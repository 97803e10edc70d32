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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qreadout/errors.h"
#include "qreadout/oracle.h"
#include "qreadout/schemes.h"
#include "qreadout/verify.h"

using namespace qreadout;

namespace {

RegisterConfig cfg(const char *s) {
    return RegisterConfig::from_string(s);
}

std::vector<HistoryEntry> random_history(size_t n, size_t rounds, const RegisterConfig &truth, const RegisterConfig &cand, Rng &rng) {
    std::vector<HistoryEntry> h;
    RegisterConfig ex = exchanged_label(truth, cand);
    for (size_t i = 0; i < rounds; i++) {
        HistoryEntry e{rng.coin() ? Basis::Original : Basis::Exchanged, std::vector<Outcome>(n), 0.02 + 0.2 * rng.uniform()};
        sample_outcomes(e.basis == Basis::Original ? truth : ex, e.eps, rng, e.outcomes);
        h.push_back(std::move(e));
    }
    return h;
}

TwoBasisMarginals replay(const std::vector<HistoryEntry> &h, size_t n, const RegisterConfig &cand) {
    TwoBasisMarginals tb(MarginalSet::uniform(n), MarginalSet::uniform(n), cand);
    for (const auto &e : h) {
        tb.update(e.basis, e.outcomes, e.eps);
    }
    return tb;
}

double max_gap(const TwoBasisMarginals &tb, const FullPosterior &exact) {
    double worst = 0;
    for (size_t s = 0; s < exact.size(); s++) {
        worst = std::max(worst, std::abs(gc_config_probability(tb, RegisterConfig::from_index(s, tb.size())) - exact[s]));
    }
    return worst;
}

}  // namespace

TEST_CASE("brute posterior basics") {
    auto empty = brute_posterior({}, cfg("000"), 3);
    for (size_t s = 0; s < 8; s++) {
        CHECK(empty[s] == doctest::Approx(0.125).epsilon(1e-15));
    }
    std::vector<HistoryEntry> one = {{Basis::Original, {Outcome::Plus}, 0.1}};
    auto p = brute_posterior(one, cfg("0"), 1);
    CHECK(p[0] == doctest::Approx(0.55).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(0.45).epsilon(1e-14));
    CHECK_THROWS_AS(brute_posterior({}, RegisterConfig::zeros(13), 13), ParameterError);
}

TEST_CASE("brute partition examples") {
    auto tb = TwoBasisMarginals::from_probabilities(std::vector<double>{0.9, 0.8}, std::vector<double>{0.7, 0.6}, cfg("00"));
    CHECK(brute_partition(tb) == doctest::Approx(0.3596).epsilon(1e-14));
    for (size_t n = 1; n <= 8; n++) {
        TwoBasisMarginals u(MarginalSet::uniform(n), MarginalSet::uniform(n), RegisterConfig::zeros(n));
        CHECK(brute_partition(u) == doctest::Approx(std::pow(2.0, -double(n))).epsilon(1e-14));
    }
}

TEST_CASE("worked example realized by an explicit history") {
    // Two rounds per basis reach any pair of log-odds: (+,+) at strength a
    // adds L(a) to both bits, (+,-) at strength b adds +-L(b).
    auto strength_for = [](double l) { return std::tanh(l / 2); };
    auto logit = [](double p) { return std::log(p / (1 - p)); };
    std::vector<HistoryEntry> h;
    auto add = [&](Basis basis, double p0, double p1) {
        double x = logit(p0), y = logit(p1);
        h.push_back({basis, {Outcome::Plus, Outcome::Plus}, strength_for((x + y) / 2)});
        h.push_back({basis, {Outcome::Plus, Outcome::Minus}, strength_for((x - y) / 2)});
    };
    add(Basis::Original, 0.9, 0.8);
    add(Basis::Exchanged, 0.7, 0.6);
    auto exact = brute_posterior(h, cfg("00"), 2);
    auto tb = replay(h, 2, cfg("00"));
    CHECK(tb.basis().p(0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(tb.tilde().p(1) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(max_gap(tb, exact) < 1e-9);
    CHECK(exact[0] == doctest::Approx(0.3024 / 0.3596).epsilon(1e-9));
}

TEST_CASE("two-basis posterior matches the exhaustive posterior") {
    Rng rng(31);
    double worst = 0;
    for (size_t n = 2; n <= 6; n++) {
        for (int rep = 0; rep < 10; rep++) {
            RegisterConfig truth = RegisterConfig::random(n, rng);
            RegisterConfig cand = rep % 2 ? truth : RegisterConfig::random(n, rng);
            auto h = random_history(n, 400, truth, cand, rng);
            BrutePosterior brute(n, cand);
            TwoBasisMarginals tb(MarginalSet::uniform(n), MarginalSet::uniform(n), cand);
            for (size_t i = 0; i < h.size(); i++) {
                brute.append(h[i]);
                tb.update(h[i].basis, h[i].outcomes, h[i].eps);
                if (i % 50 == 49) {
                    auto exact = brute.posterior();
                    worst = std::max(worst, max_gap(tb, exact));
                    // The candidate probability used by the rejection test.
                    CHECK(gc_candidate_probability(tb) == doctest::Approx(exact[cand.index()]).epsilon(1e-9));
                }
            }
        }
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("order of rounds does not matter") {
    Rng rng(77);
    for (size_t n : {2, 3, 5}) {
        RegisterConfig truth = RegisterConfig::random(n, rng);
        RegisterConfig cand = truth;
        auto alternating = random_history(n, 300, truth, cand, rng);
        std::vector<HistoryEntry> batched = alternating;
        std::stable_partition(batched.begin(), batched.end(), [](const HistoryEntry &e) { return e.basis == Basis::Original; });
        auto a = replay(alternating, n, cand);
        auto b = replay(batched, n, cand);
        for (uint64_t s = 0; s < (uint64_t{1} << n); s++) {
            RegisterConfig c = RegisterConfig::from_index(s, n);
            REQUIRE(gc_config_probability(a, c) == gc_config_probability(b, c));
        }
        // Same-basis entries commute in the exhaustive posterior too.
        auto ea = brute_posterior(alternating, cand, n);
        auto eb = brute_posterior(batched, cand, n);
        for (size_t s = 0; s < ea.size(); s++) {
            CHECK(ea[s] == doctest::Approx(eb[s]).epsilon(1e-12));
        }
    }
}

TEST_CASE("single-basis brute posterior marginalizes to the per-bit chains") {
    Rng rng(8);
    const size_t n = 5;
    RegisterConfig truth = RegisterConfig::random(n, rng);
    BrutePosterior brute(n, RegisterConfig::zeros(n));
    MarginalSet m = MarginalSet::uniform(n);
    std::vector<Outcome> out(n);
    for (int i = 0; i < 500; i++) {
        sample_outcomes(truth, 0.07, rng, out);
        brute.append(Basis::Original, out, 0.07);
        m.update(out, 0.07);
    }
    auto probs = brute.probabilities();
    for (size_t k = 0; k < n; k++) {
        double zero = 0;
        for (size_t s = 0; s < probs.size(); s++) {
            if (!((s >> k) & 1)) {
                zero += probs[s];
            }
        }
        CHECK(zero == doctest::Approx(m.p(k)).epsilon(1e-12));
    }
}

TEST_CASE("most probable configuration agrees with exhaustive argmax") {
    Rng rng(55);
    size_t generic = 0;
    for (int rep = 0; rep < 1000; rep++) {
        size_t n = 1 + rng.below(8);
        std::vector<double> p(n), pt(n);
        double spread = rep % 4 == 0 ? 12.0 : 3.0;
        for (size_t k = 0; k < n; k++) {
            p[k] = 1 / (1 + std::exp(-(2 * rng.uniform() - 1) * spread));
            pt[k] = 1 / (1 + std::exp(-(2 * rng.uniform() - 1) * spread));
        }
        auto tb = TwoBasisMarginals::from_probabilities(p, pt, RegisterConfig::random(n, rng));
        MostProbable fast = gc_most_probable(tb);
        BruteArgmax slow = brute_most_probable(tb);
        REQUIRE(fast.config == slow.config);
        REQUIRE(fast.probability == doctest::Approx(slow.probability).epsilon(1e-10));
        REQUIRE(std::exp(fast.log_infidelity) == doctest::Approx(1 - slow.probability).epsilon(1e-9));
        generic += fast.kind == MostProbable::Kind::Generic;
    }
    // The sweep must exercise the generic branch, not only candidate/opposite.
    CHECK(generic > 100);
}

TEST_CASE("most probable ties follow the stated rule") {
    for (size_t n = 1; n <= 5; n++) {
        Rng rng(n);
        TwoBasisMarginals u(MarginalSet::uniform(n), MarginalSet::uniform(n), RegisterConfig::random(n, rng));
        CHECK(gc_most_probable(u).config == u.candidate());
        CHECK(brute_most_probable(u).config == u.candidate());
    }
    std::vector<double> sure(6, 0.99);
    auto tb = TwoBasisMarginals::from_probabilities(sure, sure, RegisterConfig::zeros(6));
    MostProbable mp = gc_most_probable(tb);
    CHECK(mp.config == RegisterConfig::zeros(6));
    CHECK(mp.probability > 0.99);
}

TEST_CASE("verification sweeps at reduced scale") {
    OracleSweepOptions o;
    o.n_max = 5;
    o.seeds = 4;
    o.rounds = 2000;
    CHECK(verify_oracle_equivalence(o).passed);
    PartitionSweepOptions p;
    p.sets = 300;
    CHECK(verify_partition(p).passed);
    CHECK(verify_martingale().passed);
    CHECK(verify_normalization().passed);
}
