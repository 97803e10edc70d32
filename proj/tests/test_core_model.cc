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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "qreadout/errors.h"
#include "qreadout/measurement.h"
#include "qreadout/random.h"
#include "qreadout/register_config.h"

using namespace qreadout;

TEST_CASE("outcome probability") {
    CHECK(outcome_probability(BitValue::Zero, 0.2) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(outcome_probability(BitValue::One, 0.2) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(outcome_probability(BitValue::Zero, 0.0) == 0.5);
    CHECK(outcome_probability(BitValue::One, 1.0) == 0.0);
    CHECK_THROWS_AS(outcome_probability(BitValue::Zero, -0.1), ParameterError);
    CHECK_THROWS_AS(outcome_probability(BitValue::Zero, 1.5), ParameterError);
}

TEST_CASE("sampled outcome frequency") {
    Rng rng(123);
    size_t plus = 0;
    const size_t count = 1'000'000;
    for (size_t i = 0; i < count; i++) {
        plus += sample_outcome(BitValue::Zero, 0.2, rng) == Outcome::Plus;
    }
    CHECK(std::abs(static_cast<double>(plus) / count - 0.6) < 0.002);
}

TEST_CASE("near-perfect measurement is deterministic") {
    Rng rng(1);
    for (int i = 0; i < 10000; i++) {
        REQUIRE(sample_outcome(BitValue::Zero, 1.0 - 1e-15, rng) == Outcome::Plus);
        REQUIRE(sample_outcome(BitValue::One, 1.0 - 1e-15, rng) == Outcome::Minus);
    }
}

TEST_CASE("random streams are reproducible") {
    Rng a(99), b(99);
    std::vector<Outcome> x, y;
    for (int i = 0; i < 1000; i++) {
        x.push_back(sample_outcome(BitValue::One, 0.3, a));
        y.push_back(sample_outcome(BitValue::One, 0.3, b));
    }
    CHECK(x == y);

    Rng t0 = Rng::for_trial(5, 0), t0b = Rng::for_trial(5, 0), t1 = Rng::for_trial(5, 1);
    uint64_t first = t0.next_u64();
    CHECK(first == t0b.next_u64());
    CHECK(first != t1.next_u64());
}

TEST_CASE("bounded draws are uniform") {
    Rng rng(3);
    std::vector<size_t> hist(6, 0);
    for (int i = 0; i < 600000; i++) {
        uint64_t v = rng.below(6);
        REQUIRE(v < 6);
        hist[v]++;
    }
    for (size_t h : hist) {
        CHECK(std::abs(static_cast<double>(h) - 100000.0) < 1500.0);
    }
    for (int i = 0; i < 1000; i++) {
        double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

// Posterior from direct likelihood normalization over the two hypotheses.
static double bayes_by_hand(double p, Outcome d, double eps) {
    double l0 = d == Outcome::Plus ? (1 + eps) / 2 : (1 - eps) / 2;
    double l1 = d == Outcome::Plus ? (1 - eps) / 2 : (1 + eps) / 2;
    return l0 * p / (l0 * p + l1 * (1 - p));
}

TEST_CASE("bayes update") {
    CHECK(bayes_update(0.5, Outcome::Plus, 0.1) == doctest::Approx(0.55).epsilon(1e-14));
    CHECK(bayes_update(1.0, Outcome::Minus, 0.3) == 1.0);
    CHECK(bayes_update(0.0, Outcome::Plus, 0.3) == 0.0);
    CHECK(bayes_update(0.8, Outcome::Minus, 0.1) == doctest::Approx(0.72 / 0.94).epsilon(1e-14));
    for (double p = 0.0; p <= 1.0; p += 0.05) {
        for (double eps : {0.01, 0.1, 0.5, 0.9}) {
            for (Outcome d : {Outcome::Plus, Outcome::Minus}) {
                double got = bayes_update(p, d, eps);
                REQUIRE(got >= 0.0);
                REQUIRE(got <= 1.0);
                REQUIRE(std::abs(got - bayes_by_hand(p, d, eps)) < 1e-14);
            }
        }
    }
    CHECK_THROWS_AS(bayes_update(1.2, Outcome::Plus, 0.1), ParameterError);
    CHECK_THROWS_AS(bayes_update(0.5, Outcome::Plus, 1.0), ParameterError);
}

TEST_CASE("martingale on a grid") {
    double worst = 0;
    for (int i = 0; i <= 200; i++) {
        double p = i / 200.0;
        for (double eps : {1e-4, 0.01, 0.05, 0.1, 0.2, 0.5, 0.8, 0.99}) {
            double plus = (1 + eps * (2 * p - 1)) / 2;
            double e = plus * bayes_update(p, Outcome::Plus, eps) + (1 - plus) * bayes_update(p, Outcome::Minus, eps);
            worst = std::max(worst, std::abs(e - p));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("log-likelihood ratio matches the update in log-odds") {
    for (double eps : {0.01, 0.05, 0.3}) {
        double p = 0.37;
        double q = bayes_update(p, Outcome::Plus, eps);
        double lo = std::log(q / (1 - q)) - std::log(p / (1 - p));
        CHECK(lo == doctest::Approx(log_likelihood_ratio(eps)).epsilon(1e-12));
    }
}

TEST_CASE("consistency: posterior concentrates on the true bit") {
    size_t good = 0;
    for (uint64_t seed = 0; seed < 1000; seed++) {
        Rng rng(seed);
        double p = 0.5;
        for (int k = 0; k < 5000; k++) {
            p = bayes_update(p, sample_outcome(BitValue::Zero, 0.2, rng), 0.2);
        }
        good += p > 0.999;
    }
    CHECK(good >= 990);
}

TEST_CASE("per-step log-infidelity drift") {
    // Near certainty, E[ln(1 - p') - ln(1 - p)] = -2 eps^2 + O(eps^4).
    const double eps = 0.05;
    double p = 1 - 1e-6;
    double e = 0;
    for (Outcome d : {Outcome::Plus, Outcome::Minus}) {
        double prob = outcome_probability(BitValue::Zero, eps);
        if (d == Outcome::Minus) {
            prob = 1 - prob;
        }
        e += prob * (std::log1p(-bayes_update(p, d, eps)) - std::log1p(-p));
    }
    CHECK(e == doctest::Approx(-2 * eps * eps).epsilon(0.05));

    // The same drift, sampled.
    Rng rng(8);
    double total = 0;
    const int steps = 2000000;
    for (int i = 0; i < steps; i++) {
        double q = bayes_update(p, sample_outcome(BitValue::Zero, eps, rng), eps);
        total += std::log1p(-q) - std::log1p(-p);
    }
    CHECK(total / steps == doctest::Approx(-2 * eps * eps).epsilon(0.05));
}

TEST_CASE("continuum calibration") {
    CHECK(epsilon_from_continuum(1.0, 1.0 / 3200) == doctest::Approx(0.05).epsilon(1e-14));
    CHECK_THROWS_AS(epsilon_from_continuum(0.0, 0.01), ParameterError);
    CHECK_THROWS_AS(epsilon_from_continuum(1.0, 1.0 / 8), ParameterError);
    CHECK_THROWS_AS(epsilon_from_continuum(1.0, -1.0), ParameterError);
    MeasurementStrength s = MeasurementStrength::from_continuum(2.0, 1e-4);
    CHECK(s.epsilon * s.epsilon == doctest::Approx(8 * 2.0 * 1e-4).epsilon(1e-14));
    MeasurementStrength e = MeasurementStrength::from_epsilon(0.05);
    CHECK(e.epsilon * e.epsilon == doctest::Approx(8 * e.gamma * e.dt).epsilon(1e-14));
    // -2 eps^2 per step is -16 gamma per unit time.
    CHECK(e.per_time(-2 * 0.05 * 0.05) == doctest::Approx(-16 * e.gamma).epsilon(1e-12));
    CHECK_THROWS_AS(MeasurementStrength::from_epsilon(1.0), ParameterError);
}

TEST_CASE("register configurations") {
    RegisterConfig a = RegisterConfig::from_string("0110");
    RegisterConfig b = RegisterConfig::from_string("1010");
    CHECK(hamming(RegisterConfig::from_string("00"), RegisterConfig::from_string("00")) == 0);
    CHECK(hamming(RegisterConfig::from_string("00"), RegisterConfig::from_string("11")) == 2);
    CHECK(hamming(a, b) == 2);
    CHECK(hamming_index(a.index(), b.index()) == 2);
    CHECK_THROWS_AS(hamming(a, RegisterConfig::from_string("01")), ParameterError);
    CHECK(a.complement().str() == "1001");
    CHECK(a.str() == "0110");
    // Bit 0 is written first.
    CHECK(RegisterConfig::from_index(1, 3).str() == "100");
    for (uint64_t i = 0; i < 16; i++) {
        CHECK(RegisterConfig::from_index(i, 4).index() == i);
    }
    CHECK_THROWS_AS(RegisterConfig::from_string("01x"), ParameterError);
}
