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

#ifndef QREADOUT_MARGINALS_H
#define QREADOUT_MARGINALS_H

#include <cstddef>
#include <span>
#include <vector>

#include "qreadout/measurement.h"
#include "qreadout/register_config.h"

namespace qreadout {

/// Independent per-bit posteriors p_k = P(bit k = 0 | detector k's record).
///
/// Each marginal is held as its log-odds ln(p / (1 - p)), which makes the
/// Bayes update an addition and keeps 1 - p resolvable long after p rounds
/// to 1 in linear form.
class MarginalSet {
   public:
    MarginalSet() = default;
    static MarginalSet uniform(size_t n);
    static MarginalSet from_probabilities(std::span<const double> p);

    size_t size() const {
        return log_odds_.size();
    }
    double p(size_t k) const;
    double log_odds(size_t k) const {
        return log_odds_[k];
    }
    std::span<const double> log_odds() const {
        return log_odds_;
    }
    std::vector<double> probabilities() const;

    void update(std::span<const Outcome> outcomes, double eps);

    size_t state_bytes() const {
        return log_odds_.capacity() * sizeof(double);
    }

    bool operator==(const MarginalSet &other) const = default;

   private:
    std::vector<double> log_odds_;
};

MarginalSet marginal_update(MarginalSet m, std::span<const Outcome> outcomes, double eps);

/// prod_k (p_k if s_k = 0 else 1 - p_k).
double factored_config_probability(const MarginalSet &m, const RegisterConfig &s);
double factored_config_log_probability(const MarginalSet &m, const RegisterConfig &s);

/// Per-bit argmax (ties resolve to bit 0): the most probable configuration
/// under the factorized posterior.
RegisterConfig factored_most_probable(const MarginalSet &m);
/// ln prod_k max(p_k, 1 - p_k).
double factored_log_max_probability(const MarginalSet &m);
/// ln(1 - prod_k max(p_k, 1 - p_k)).
double factored_log_infidelity(const MarginalSet &m);

}  // namespace qreadout

#endif
