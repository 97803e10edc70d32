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

#include "qreadout/full_posterior.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qreadout/errors.h"
#include "qreadout/register_config.h"

namespace qreadout {

Permutation Permutation::identity(size_t size) {
    Permutation result;
    result.map_.resize(size);
    std::iota(result.map_.begin(), result.map_.end(), 0u);
    result.is_identity_ = true;
    return result;
}

Permutation Permutation::from_map(std::vector<uint32_t> map) {
    std::vector<uint8_t> seen(map.size(), 0);
    bool ident = true;
    for (size_t s = 0; s < map.size(); s++) {
        if (map[s] >= map.size() || seen[map[s]]) {
            throw ParameterError("Permutation::from_map: not a bijection");
        }
        seen[map[s]] = 1;
        ident &= map[s] == s;
    }
    Permutation result;
    result.map_ = std::move(map);
    result.is_identity_ = ident;
    return result;
}

Permutation Permutation::inverse() const {
    std::vector<uint32_t> inv(map_.size());
    for (size_t s = 0; s < map_.size(); s++) {
        inv[map_[s]] = static_cast<uint32_t>(s);
    }
    Permutation result;
    result.map_ = std::move(inv);
    result.is_identity_ = is_identity_;
    return result;
}

static void require_full_size(size_t n) {
    if (n < 1 || n > kMaxFullPosteriorBits) {
        throw ParameterError(
            "FullPosterior: register size must be in [1, " + std::to_string(kMaxFullPosteriorBits) + "], got " +
            std::to_string(n));
    }
}

FullPosterior FullPosterior::uniform(size_t n) {
    require_full_size(n);
    size_t size = size_t{1} << n;
    return FullPosterior(n, std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

FullPosterior FullPosterior::from_probabilities(size_t n, std::vector<double> probs) {
    require_full_size(n);
    if (probs.size() != (size_t{1} << n)) {
        throw ParameterError("FullPosterior::from_probabilities: expected 2^n entries");
    }
    double total = 0;
    for (double p : probs) {
        if (!(p >= 0.0)) {
            throw ParameterError("FullPosterior::from_probabilities: negative or NaN entry");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ParameterError("FullPosterior::from_probabilities: entries must sum to 1");
    }
    FullPosterior result(n, std::move(probs));
    result.renormalize();
    return result;
}

size_t FullPosterior::most_probable() const {
    return static_cast<size_t>(std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

void FullPosterior::renormalize() {
    double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw NumericError("FullPosterior: posterior mass vanished");
    }
    double inv = 1.0 / total;
    for (auto &p : probs_) {
        p *= inv;
    }
}

void FullPosterior::update(const Permutation &perm, std::span<const Outcome> outcomes, double eps) {
    require_epsilon(eps, "full_update");
    if (outcomes.size() != n_) {
        throw ParameterError("full_update: expected one outcome per bit");
    }
    if (perm.size() != probs_.size()) {
        throw ParameterError("full_update: permutation size does not match posterior");
    }
    // A label's likelihood depends only on how many bits disagree with the
    // bit values favoured by the outcomes.
    uint64_t favoured = 0;
    for (size_t k = 0; k < n_; k++) {
        if (outcomes[k] == Outcome::Minus) {
            favoured |= uint64_t{1} << k;
        }
    }
    double ratio = (1.0 - eps) / (1.0 + eps);
    std::vector<double> factor(n_ + 1);
    factor[0] = 1.0;
    for (size_t h = 1; h <= n_; h++) {
        factor[h] = factor[h - 1] * ratio;
    }
    if (perm.is_identity()) {
        for (size_t s = 0; s < probs_.size(); s++) {
            probs_[s] *= factor[hamming_index(s, favoured)];
        }
    } else {
        for (size_t s = 0; s < probs_.size(); s++) {
            probs_[s] *= factor[hamming_index(perm(s), favoured)];
        }
    }
    renormalize();
}

void FullPosterior::permute(const Permutation &perm) {
    if (perm.size() != probs_.size()) {
        throw ParameterError("apply_permutation: permutation size does not match posterior");
    }
    if (perm.is_identity()) {
        return;
    }
    std::vector<double> moved(probs_.size());
    for (size_t s = 0; s < probs_.size(); s++) {
        moved[perm(s)] = probs_[s];
    }
    probs_ = std::move(moved);
}

FullPosterior init_uniform_full(size_t n) {
    return FullPosterior::uniform(n);
}

FullPosterior full_update(FullPosterior post, const Permutation &perm, std::span<const Outcome> outcomes, double eps) {
    post.update(perm, outcomes, eps);
    return post;
}

FullPosterior apply_permutation(FullPosterior post, const Permutation &perm) {
    post.permute(perm);
    return post;
}

double infidelity(const FullPosterior &post) {
    return std::exp(log_infidelity(post));
}

double log_infidelity(const FullPosterior &post) {
    size_t best = post.most_probable();
    auto probs = post.probs();
    double rest = 0;
    double total = 0;
    for (size_t s = 0; s < probs.size(); s++) {
        total += probs[s];
        if (s != best) {
            rest += probs[s];
        }
    }
    return std::log(rest) - std::log(total);
}

std::vector<double> flipped_bit_marginals(const FullPosterior &post, const Permutation &perm) {
    size_t n = post.num_bits();
    auto probs = post.probs();
    uint64_t reference = perm(post.most_probable());
    std::vector<double> m(n, 0.0);
    for (size_t s = 0; s < probs.size(); s++) {
        uint64_t diff = perm(s) ^ reference;
        while (diff) {
            m[__builtin_ctzll(diff)] += probs[s];
            diff &= diff - 1;
        }
    }
    return m;
}

double expected_log_infidelity_rate(const FullPosterior &post, double gamma) {
    double delta = infidelity(post);
    if (!(delta > 0.0)) {
        throw NumericError("expected_log_infidelity_rate: undefined for a point mass (Delta = 0)");
    }
    auto m = flipped_bit_marginals(post, Permutation::identity(post.size()));
    double sum = 0;
    for (double mk : m) {
        sum += (2.0 * mk) * (2.0 * mk);
    }
    double lead = (1.0 - delta) / delta;
    return -4.0 * gamma * sum * lead * lead;
}

}  // namespace qreadout
