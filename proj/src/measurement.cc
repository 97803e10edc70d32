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

#include "qreadout/measurement.h"

#include <cmath>
#include <string>

#include "qreadout/errors.h"

namespace qreadout {

void require_epsilon(double eps, const char *where) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw ParameterError(std::string(where) + ": epsilon must lie in (0, 1), got " + std::to_string(eps));
    }
}

MeasurementStrength MeasurementStrength::from_epsilon(double epsilon) {
    require_epsilon(epsilon, "MeasurementStrength");
    return {epsilon, 1.0, epsilon * epsilon / 8.0};
}

MeasurementStrength MeasurementStrength::from_continuum(double gamma, double dt) {
    return {epsilon_from_continuum(gamma, dt), gamma, dt};
}

double outcome_probability(BitValue bit, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw ParameterError("outcome_probability: epsilon must lie in [0, 1]");
    }
    return bit == BitValue::Zero ? (1.0 + eps) / 2.0 : (1.0 - eps) / 2.0;
}

Outcome sample_outcome(BitValue bit, double eps, Rng &rng) {
    double p_plus = outcome_probability(bit, eps);
    return rng.uniform() < p_plus ? Outcome::Plus : Outcome::Minus;
}

double bayes_update(double p, Outcome delta, double eps) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ParameterError("bayes_update: p must lie in [0, 1]");
    }
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw ParameterError("bayes_update: epsilon must lie in [0, 1)");
    }
    double e = eps * sign(delta);
    // Denominator is the predictive probability of delta (times 2), >= 1 - eps.
    double result = (1.0 + e) * p / (1.0 + e * (2.0 * p - 1.0));
    return std::fmin(1.0, std::fmax(0.0, result));
}

double log_likelihood_ratio(double eps) {
    return std::log1p(eps) - std::log1p(-eps);
}

double epsilon_from_continuum(double gamma, double dt) {
    if (!(gamma > 0.0) || !(dt > 0.0)) {
        throw ParameterError("epsilon_from_continuum: gamma and dt must be positive");
    }
    double eps_sq = 8.0 * gamma * dt;
    if (!(eps_sq < 1.0)) {
        throw ParameterError("epsilon_from_continuum: 8 gamma dt must be below 1 (weak measurement regime)");
    }
    return std::sqrt(eps_sq);
}

}  // namespace qreadout
