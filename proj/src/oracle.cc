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

#include "qreadout/oracle.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qreadout/errors.h"

namespace qreadout {

static void require_oracle_size(size_t n) {
    if (n < 1 || n > kMaxOracleBits) {
        throw ParameterError("reference oracle: register size must be in [1, " + std::to_string(kMaxOracleBits) + "]");
    }
}

BrutePosterior::BrutePosterior(size_t n, RegisterConfig candidate) : n_(n) {
    require_oracle_size(n);
    if (candidate.size() != n) {
        throw ParameterError("BrutePosterior: candidate length mismatch");
    }
    size_t size = size_t{1} << n;
    exchanged_.resize(size);
    for (size_t s = 0; s < size; s++) {
        exchanged_[s] = static_cast<uint32_t>(exchanged_label(RegisterConfig::from_index(s, n), candidate).index());
    }
    log_weight_.assign(size, 0.0);
}

void BrutePosterior::append(Basis basis, std::span<const Outcome> outcomes, double eps) {
    if (outcomes.size() != n_) {
        throw ParameterError("BrutePosterior::append: expected one outcome per bit");
    }
    double log_plus0 = std::log((1.0 + eps) / 2.0);
    double log_plus1 = std::log((1.0 - eps) / 2.0);
    for (size_t s = 0; s < log_weight_.size(); s++) {
        uint32_t label = basis == Basis::Original ? static_cast<uint32_t>(s) : exchanged_[s];
        double total = 0;
        for (size_t k = 0; k < n_; k++) {
            bool bit = (label >> k) & 1;
            bool plus = outcomes[k] == Outcome::Plus;
            // P(+1 | 0) = P(-1 | 1) = (1 + eps) / 2.
            total += bit == !plus ? log_plus0 : log_plus1;
        }
        log_weight_[s] += total;
    }
}

void BrutePosterior::append(const HistoryEntry &entry) {
    append(entry.basis, entry.outcomes, entry.eps);
}

std::vector<double> BrutePosterior::probabilities() const {
    double top = *std::max_element(log_weight_.begin(), log_weight_.end());
    std::vector<double> probs(log_weight_.size());
    long double total = 0;
    for (size_t s = 0; s < probs.size(); s++) {
        probs[s] = std::exp(log_weight_[s] - top);
        total += probs[s];
    }
    for (auto &p : probs) {
        p = static_cast<double>(p / total);
    }
    return probs;
}

FullPosterior BrutePosterior::posterior() const {
    return FullPosterior::from_probabilities(n_, probabilities());
}

FullPosterior brute_posterior(std::span<const HistoryEntry> history, const RegisterConfig &candidate, size_t n) {
    BrutePosterior acc(n, candidate);
    for (const auto &entry : history) {
        acc.append(entry);
    }
    return acc.posterior();
}

long double brute_weight(const TwoBasisMarginals &tb, const RegisterConfig &s) {
    RegisterConfig relabeled = exchanged_label(s, tb.candidate());
    long double w = 1;
    // Each bit value's probability straight from the log-odds; 1 - p would
    // lose everything once p rounds to within an ulp of 1.
    auto prob = [](double log_odds, bool one) {
        long double x = one ? -log_odds : log_odds;
        return 1.0L / (1.0L + std::exp(-x));
    };
    for (size_t k = 0; k < s.size(); k++) {
        w *= prob(tb.basis().log_odds(k), s.is_set(k));
        w *= prob(tb.tilde().log_odds(k), relabeled.is_set(k));
    }
    return w;
}

double brute_partition(const TwoBasisMarginals &tb) {
    require_oracle_size(tb.size());
    long double total = 0;
    for (uint64_t s = 0; s < (uint64_t{1} << tb.size()); s++) {
        total += brute_weight(tb, RegisterConfig::from_index(s, tb.size()));
    }
    return static_cast<double>(total);
}

BruteArgmax brute_most_probable(const TwoBasisMarginals &tb) {
    require_oracle_size(tb.size());
    size_t n = tb.size();
    long double total = 0;
    RegisterConfig best = tb.candidate();
    long double best_w = brute_weight(tb, best);
    for (uint64_t s = 0; s < (uint64_t{1} << n); s++) {
        RegisterConfig cfg = RegisterConfig::from_index(s, n);
        long double w = brute_weight(tb, cfg);
        total += w;
        if (cfg == tb.candidate()) {
            continue;
        }
        bool best_is_candidate = best == tb.candidate();
        if (w > best_w || (w == best_w && !best_is_candidate && cfg < best)) {
            best = cfg;
            best_w = w;
        }
    }
    return {best, static_cast<double>(best_w / total)};
}

}  // namespace qreadout
