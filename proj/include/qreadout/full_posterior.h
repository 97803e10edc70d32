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

#ifndef QREADOUT_FULL_POSTERIOR_H
#define QREADOUT_FULL_POSTERIOR_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qreadout/measurement.h"

namespace qreadout {

/// Largest register the exponential representation will allocate for.
inline constexpr size_t kMaxFullPosteriorBits = 20;

/// A bijection on the 2^n pointer-basis labels.
class Permutation {
   public:
    Permutation() = default;
    static Permutation identity(size_t size);
    /// Throws ParameterError unless map is a bijection on [0, map.size()).
    static Permutation from_map(std::vector<uint32_t> map);

    size_t size() const {
        return map_.size();
    }
    uint32_t operator()(size_t s) const {
        return map_[s];
    }
    bool is_identity() const {
        return is_identity_;
    }
    const std::vector<uint32_t> &map() const {
        return map_;
    }
    Permutation inverse() const;

    bool operator==(const Permutation &other) const {
        return map_ == other.map_;
    }

   private:
    std::vector<uint32_t> map_;
    bool is_identity_ = true;
};

/// Probability vector over all 2^n register configurations, indexed by
/// RegisterConfig::index(). Kept normalized after every operation.
class FullPosterior {
   public:
    static FullPosterior uniform(size_t n);
    /// Validates non-negativity and normalization (within 1e-9), then renormalizes.
    static FullPosterior from_probabilities(size_t n, std::vector<double> probs);

    size_t num_bits() const {
        return n_;
    }
    size_t size() const {
        return probs_.size();
    }
    std::span<const double> probs() const {
        return probs_;
    }
    double operator[](size_t s) const {
        return probs_[s];
    }

    /// Index of the largest entry; ties go to the smallest index.
    size_t most_probable() const;

    /// Multiplies each entry by the likelihood of `outcomes` given the bits
    /// of its label perm(s), then renormalizes.
    void update(const Permutation &perm, std::span<const Outcome> outcomes, double eps);

    void permute(const Permutation &perm);

   private:
    FullPosterior(size_t n, std::vector<double> probs) : n_(n), probs_(std::move(probs)) {
    }
    void renormalize();

    size_t n_ = 0;
    std::vector<double> probs_;
};

FullPosterior init_uniform_full(size_t n);
FullPosterior full_update(FullPosterior post, const Permutation &perm, std::span<const Outcome> outcomes, double eps);
/// probs'[perm(s)] = probs[s].
FullPosterior apply_permutation(FullPosterior post, const Permutation &perm);

/// 1 - max_s P(s).
double infidelity(const FullPosterior &post);
/// ln(1 - max_s P(s)), computed from the non-maximal mass so it stays
/// accurate far below machine epsilon.
double log_infidelity(const FullPosterior &post);

/// Posterior probability that bit k of the label differs from the label of
/// the most probable configuration, i.e. the weight of bit k being 1 once the
/// most probable state is relabeled to all zeros.
std::vector<double> flipped_bit_marginals(const FullPosterior &post, const Permutation &perm);

/// Conditional drift E[d ln(Delta)]/dt from the current posterior:
/// -4 gamma sum_k (2 m_k)^2 (1 - Delta)^2 / Delta^2.
/// Throws NumericError when Delta = 0.
double expected_log_infidelity_rate(const FullPosterior &post, double gamma);

}  // namespace qreadout

#endif
