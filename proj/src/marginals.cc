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

#include "qreadout/marginals.h"

#include <cmath>

#include "qreadout/errors.h"
#include "qreadout/log_math.h"

namespace qreadout {

MarginalSet MarginalSet::uniform(size_t n) {
    MarginalSet result;
    result.log_odds_.assign(n, 0.0);
    return result;
}

MarginalSet MarginalSet::from_probabilities(std::span<const double> p) {
    MarginalSet result;
    result.log_odds_.reserve(p.size());
    for (double pk : p) {
        if (!(pk >= 0.0 && pk <= 1.0)) {
            throw ParameterError("MarginalSet: probabilities must lie in [0, 1]");
        }
        result.log_odds_.push_back(logit(pk));
    }
    return result;
}

double MarginalSet::p(size_t k) const {
    return std::exp(log_sigmoid(log_odds_[k]));
}

std::vector<double> MarginalSet::probabilities() const {
    std::vector<double> result(size());
    for (size_t k = 0; k < size(); k++) {
        result[k] = p(k);
    }
    return result;
}

void MarginalSet::update(std::span<const Outcome> outcomes, double eps) {
    if (outcomes.size() != log_odds_.size()) {
        throw ParameterError("marginal_update: expected one outcome per bit");
    }
    require_epsilon(eps, "marginal_update");
    double step = log_likelihood_ratio(eps);
    for (size_t k = 0; k < log_odds_.size(); k++) {
        log_odds_[k] += outcomes[k] == Outcome::Plus ? step : -step;
    }
}

MarginalSet marginal_update(MarginalSet m, std::span<const Outcome> outcomes, double eps) {
    m.update(outcomes, eps);
    return m;
}

double factored_config_log_probability(const MarginalSet &m, const RegisterConfig &s) {
    if (s.size() != m.size()) {
        throw ParameterError("factored_config_probability: length mismatch");
    }
    double total = 0;
    for (size_t k = 0; k < m.size(); k++) {
        double x = m.log_odds(k);
        total += log_sigmoid(s.is_set(k) ? -x : x);
    }
    return total;
}

double factored_config_probability(const MarginalSet &m, const RegisterConfig &s) {
    return std::exp(factored_config_log_probability(m, s));
}

RegisterConfig factored_most_probable(const MarginalSet &m) {
    RegisterConfig s = RegisterConfig::zeros(m.size());
    for (size_t k = 0; k < m.size(); k++) {
        s.set(k, m.log_odds(k) < 0);
    }
    return s;
}

double factored_log_max_probability(const MarginalSet &m) {
    double total = 0;
    for (double x : m.log_odds()) {
        total += log_sigmoid(std::abs(x));
    }
    return total;
}

double factored_log_infidelity(const MarginalSet &m) {
    return log1m_exp(factored_log_max_probability(m));
}

}  // namespace qreadout
