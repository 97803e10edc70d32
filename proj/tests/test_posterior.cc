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
#include <numeric>
#include <vector>

#include "doctest.h"
#include "qreadout/errors.h"
#include "qreadout/full_posterior.h"
#include "qreadout/marginals.h"
#include "qreadout/schemes.h"
#include "qreadout/two_basis.h"

using namespace qreadout;

namespace {

RegisterConfig cfg(const char *s) {
    return RegisterConfig::from_string(s);
}

// Weight of s, written out from the two-basis likelihood definition on
// linear marginals (p = probability of bit value 0).
double weight_by_hand(const std::vector<double> &p, const std::vector<double> &pt, const RegisterConfig &c, const RegisterConfig &s) {
    size_t n = s.size();
    size_t d = hamming(s, c);
    double w = 1;
    for (size_t k = 0; k < n; k++) {
        bool bit = s.is_set(k);
        bool tilde_bit = (d == 0 || d == n) ? bit : !bit;
        w *= bit ? 1 - p[k] : p[k];
        w *= tilde_bit ? 1 - pt[k] : pt[k];
    }
    return w;
}

const std::vector<double> kP = {0.9, 0.8};
const std::vector<double> kPt = {0.7, 0.6};

TwoBasisMarginals worked_example() {
    return TwoBasisMarginals::from_probabilities(kP, kPt, cfg("00"));
}

}  // namespace

TEST_CASE("uniform full posterior") {
    auto p1 = init_uniform_full(1);
    CHECK(p1[0] == 0.5);
    CHECK(p1[1] == 0.5);
    auto p2 = init_uniform_full(2);
    for (size_t s = 0; s < 4; s++) {
        CHECK(p2[s] == 0.25);
    }
    CHECK_THROWS_AS(init_uniform_full(21), ParameterError);
    CHECK(infidelity(p2) == doctest::Approx(0.75));
}

TEST_CASE("full update examples") {
    std::vector<Outcome> plus1 = {Outcome::Plus};
    auto p = full_update(init_uniform_full(1), Permutation::identity(2), plus1, 0.1);
    CHECK(p[0] == doctest::Approx(0.55).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(0.45).epsilon(1e-14));

    // Swap the labels of configurations 0 and 3, then compare against Bayes by hand.
    auto prior = FullPosterior::from_probabilities(2, {0.4, 0.3, 0.2, 0.1});
    Permutation swap = Permutation::from_map({3, 1, 2, 0});
    std::vector<Outcome> pp = {Outcome::Plus, Outcome::Plus};
    auto post = full_update(prior, swap, pp, 0.1);
    double a = 0.55, b = 0.45;
    // Likelihood of (+,+) for each detector label: label 0 -> a*a, 1,2 -> a*b, 3 -> b*b.
    std::vector<double> lik = {b * b, a * b, a * b, a * a};
    double z = 0;
    for (size_t s = 0; s < 4; s++) {
        z += prior[s] * lik[s];
    }
    for (size_t s = 0; s < 4; s++) {
        CHECK(post[s] == doctest::Approx(prior[s] * lik[s] / z).epsilon(1e-14));
    }
}

TEST_CASE("identity updates factorize into independent chains") {
    Rng rng(21);
    for (size_t n = 1; n <= 8; n++) {
        RegisterConfig truth = RegisterConfig::random(n, rng);
        FullPosterior full = init_uniform_full(n);
        MarginalSet m = MarginalSet::uniform(n);
        std::vector<double> chains(n, 0.5);
        std::vector<Outcome> out(n);
        for (int step = 0; step < 300; step++) {
            sample_outcomes(truth, 0.1, rng, out);
            full = full_update(std::move(full), Permutation::identity(full.size()), out, 0.1);
            m = marginal_update(std::move(m), out, 0.1);
            for (size_t k = 0; k < n; k++) {
                chains[k] = bayes_update(chains[k], out[k], 0.1);
            }
        }
        double worst = 0;
        for (size_t s = 0; s < full.size(); s++) {
            RegisterConfig c = RegisterConfig::from_index(s, n);
            double product = 1;
            for (size_t k = 0; k < n; k++) {
                product *= c.is_set(k) ? 1 - chains[k] : chains[k];
            }
            worst = std::max(worst, std::abs(full[s] - product));
            worst = std::max(worst, std::abs(factored_config_probability(m, c) - product));
        }
        CHECK(worst < 1e-12);
        for (size_t k = 0; k < n; k++) {
            CHECK(std::abs(m.p(k) - chains[k]) < 1e-12);
        }
    }
}

TEST_CASE("marginal update examples") {
    auto m = marginal_update(MarginalSet::uniform(3), std::vector<Outcome>(3, Outcome::Plus), 0.1);
    for (size_t k = 0; k < 3; k++) {
        CHECK(m.p(k) == doctest::Approx(0.55).epsilon(1e-14));
    }
    auto one = marginal_update(MarginalSet::from_probabilities(std::vector<double>{0.8}), std::vector<Outcome>{Outcome::Minus}, 0.1);
    CHECK(one.p(0) == doctest::Approx(bayes_update(0.8, Outcome::Minus, 0.1)).epsilon(1e-14));
    CHECK_THROWS_AS(marginal_update(MarginalSet::uniform(2), std::vector<Outcome>(3, Outcome::Plus), 0.1), ParameterError);
}

TEST_CASE("factored configuration probability") {
    auto u = MarginalSet::uniform(5);
    CHECK(factored_config_probability(u, cfg("01101")) == doctest::Approx(1.0 / 32));
    auto m = MarginalSet::from_probabilities(kP);
    CHECK(factored_config_probability(m, cfg("00")) == doctest::Approx(0.72).epsilon(1e-14));
    Rng rng(4);
    for (size_t n = 1; n <= 10; n++) {
        std::vector<double> p(n);
        for (auto &x : p) {
            x = rng.uniform();
        }
        auto ms = MarginalSet::from_probabilities(p);
        double total = 0;
        for (uint64_t s = 0; s < (uint64_t{1} << n); s++) {
            total += factored_config_probability(ms, RegisterConfig::from_index(s, n));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        // Most probable: each bit at its larger marginal.
        RegisterConfig best = factored_most_probable(ms);
        for (size_t k = 0; k < n; k++) {
            CHECK(best.is_set(k) == (p[k] < 0.5));
        }
    }
}

TEST_CASE("two-basis worked example") {
    auto tb = worked_example();
    CHECK(gc_unnormalized_weight(tb, cfg("00")) == doctest::Approx(0.3024).epsilon(1e-13));
    CHECK(gc_unnormalized_weight(tb, cfg("11")) == doctest::Approx(0.0024).epsilon(1e-13));
    // Bit 0 is listed first: "01" has bit 0 = 0 and bit 1 = 1.
    CHECK(gc_unnormalized_weight(tb, cfg("01")) == doctest::Approx(0.0324).epsilon(1e-13));
    CHECK(gc_unnormalized_weight(tb, cfg("10")) == doctest::Approx(0.0224).epsilon(1e-13));
    for (const char *s : {"00", "01", "10", "11"}) {
        CHECK(gc_unnormalized_weight(tb, cfg(s)) == doctest::Approx(weight_by_hand(kP, kPt, cfg("00"), cfg(s))).epsilon(1e-13));
    }
    CHECK(gc_partition(tb) == doctest::Approx(0.3596).epsilon(1e-13));
    CHECK(gc_partition(tb) == doctest::Approx(0.34 * 0.44 + 0.3024 + 0.0024 - 0.0864 - 0.0084).epsilon(1e-13));
    // The compact two-term normalization evaluates to 0.188 here and is not used.
    CHECK(std::abs(gc_partition(tb) - 0.188) > 0.1);

    double lambda0 = 0.3024 / 0.3596;
    CHECK(gc_config_probability(tb, cfg("00")) == doctest::Approx(lambda0).epsilon(1e-12));
    CHECK(gc_candidate_probability(tb) == doctest::Approx(lambda0).epsilon(1e-12));
    CHECK(lambda0 == doctest::Approx(0.84094).epsilon(1e-5));
    MostProbable mp = gc_most_probable(tb);
    CHECK(mp.config == cfg("00"));
    CHECK(mp.probability == doctest::Approx(lambda0).epsilon(1e-12));
    CHECK(gc_infidelity(tb) == doctest::Approx(1 - lambda0).epsilon(1e-12));
    CHECK(gc_infidelity(tb) == doctest::Approx(0.15906).epsilon(1e-4));
}

TEST_CASE("two-basis uniform and certain marginals") {
    for (size_t n = 1; n <= 6; n++) {
        auto tb = TwoBasisMarginals(MarginalSet::uniform(n), MarginalSet::uniform(n), RegisterConfig::zeros(n));
        CHECK(gc_partition(tb) == doctest::Approx(std::pow(2.0, -double(n))).epsilon(1e-13));
        CHECK(gc_candidate_probability(tb) == doctest::Approx(std::pow(2.0, -double(n))).epsilon(1e-13));
        MostProbable mp = gc_most_probable(tb);
        CHECK(mp.config == RegisterConfig::zeros(n));
        CHECK(mp.probability == doctest::Approx(std::pow(2.0, -double(n))).epsilon(1e-13));
        for (uint64_t s = 0; s < (uint64_t{1} << n); s++) {
            RegisterConfig c = RegisterConfig::from_index(s, n);
            CHECK(gc_unnormalized_weight(tb, c) == doctest::Approx(std::pow(4.0, -double(n))).epsilon(1e-13));
            CHECK(gc_config_probability(tb, c) == doctest::Approx(std::pow(2.0, -double(n))).epsilon(1e-13));
        }
    }
    std::vector<double> ones(4, 1.0);
    auto certain = TwoBasisMarginals::from_probabilities(ones, ones, RegisterConfig::zeros(4));
    CHECK(gc_candidate_probability(certain) == 1.0);
    CHECK(gc_infidelity(certain) == 0.0);
}

TEST_CASE("single-bit normalization identity") {
    Rng rng(17);
    for (int i = 0; i < 100; i++) {
        double p = rng.uniform(), pt = rng.uniform();
        auto tb = TwoBasisMarginals::from_probabilities(std::vector<double>{p}, std::vector<double>{pt}, cfg(rng.coin() ? "1" : "0"));
        double expected = p * (1 - pt) + (1 - p) * pt + (2 * p - 1) * (2 * pt - 1);
        CHECK(gc_partition(tb) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("two-basis probabilities sum to one") {
    Rng rng(5);
    for (size_t n = 1; n <= 10; n++) {
        for (int rep = 0; rep < 5; rep++) {
            std::vector<double> p(n), pt(n);
            for (size_t k = 0; k < n; k++) {
                p[k] = rng.uniform();
                pt[k] = rng.uniform();
            }
            auto tb = TwoBasisMarginals::from_probabilities(p, pt, RegisterConfig::random(n, rng));
            double total = 0, by_hand = 0;
            for (uint64_t s = 0; s < (uint64_t{1} << n); s++) {
                RegisterConfig c = RegisterConfig::from_index(s, n);
                total += gc_config_probability(tb, c);
                by_hand += weight_by_hand(p, pt, tb.candidate(), c);
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(gc_partition(tb) == doctest::Approx(by_hand).epsilon(1e-12));
        }
    }
}

TEST_CASE("two-basis survives registers far beyond linear-domain range") {
    const size_t n = 1024;
    Rng rng(2);
    RegisterConfig truth = RegisterConfig::random(n, rng);
    TwoBasisMarginals tb(MarginalSet::uniform(n), MarginalSet::uniform(n), truth);
    std::vector<Outcome> out(n);
    RegisterConfig ex = exchanged_label(truth, truth);
    for (int i = 0; i < 400; i++) {
        Basis b = i % 2 ? Basis::Exchanged : Basis::Original;
        sample_outcomes(b == Basis::Original ? truth : ex, 0.05, rng, out);
        tb.update(b, out, 0.05);
    }
    double lz = gc_log_partition(tb);
    CHECK(std::isfinite(lz));
    double l0 = gc_log_candidate_probability(tb);
    CHECK(l0 <= 0.0);
    CHECK(std::isfinite(gc_log_infidelity(tb)));
}

TEST_CASE("permutations") {
    Rng rng(9);
    auto post = FullPosterior::from_probabilities(3, {0.3, 0.05, 0.1, 0.2, 0.15, 0.05, 0.1, 0.05});
    CHECK(apply_permutation(post, Permutation::identity(8)).probs().size() == 8);
    for (size_t s = 0; s < 8; s++) {
        CHECK(apply_permutation(post, Permutation::identity(8))[s] == post[s]);
    }
    for (int rep = 0; rep < 50; rep++) {
        Permutation perm = random_permutation(8, rng);
        auto moved = apply_permutation(post, perm);
        auto back = apply_permutation(moved, perm.inverse());
        std::vector<double> a(post.probs().begin(), post.probs().end());
        std::vector<double> b(moved.probs().begin(), moved.probs().end());
        for (size_t s = 0; s < 8; s++) {
            REQUIRE(back[s] == post[s]);
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        REQUIRE(a == b);
    }
    CHECK_THROWS_AS(Permutation::from_map({0, 0, 1}), ParameterError);
}

TEST_CASE("expected log-infidelity rate") {
    CHECK(expected_log_infidelity_rate(init_uniform_full(1), 1.0) == doctest::Approx(-4.0).epsilon(1e-12));
    auto sharp = FullPosterior::from_probabilities(1, {1 - 1e-9, 1e-9});
    CHECK(expected_log_infidelity_rate(sharp, 1.0) == doctest::Approx(-16.0).epsilon(1e-6));
    CHECK_THROWS_AS(expected_log_infidelity_rate(FullPosterior::from_probabilities(1, {1.0, 0.0}), 1.0), NumericError);
    CHECK(infidelity(FullPosterior::from_probabilities(2, {0, 0, 1, 0})) == 0.0);
}

TEST_CASE("full posterior stays normalized over long runs") {
    Rng rng(12);
    FullPosterior post = init_uniform_full(4);
    RegisterConfig truth = RegisterConfig::random(4, rng);
    std::vector<Outcome> out(4);
    for (int i = 0; i < 100000; i++) {
        Permutation perm = random_permutation(16, rng);
        sample_outcomes(perm(truth.index()), 0.05, rng, out);
        post.update(perm, out, 0.05);
    }
    double total = std::accumulate(post.probs().begin(), post.probs().end(), 0.0);
    CHECK(std::abs(total - 1.0) < 1e-9);
    CHECK(post.most_probable() == truth.index());
}
