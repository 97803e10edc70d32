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

#ifndef QREADOUT_ORACLE_H
#define QREADOUT_ORACLE_H

#include <cstddef>
#include <span>
#include <vector>

#include "qreadout/full_posterior.h"
#include "qreadout/two_basis.h"

namespace qreadout {

/// Exhaustive ground truth. Everything here enumerates all 2^n
/// configurations and shares no arithmetic with the O(n) two-basis code.
inline constexpr size_t kMaxOracleBits = 12;

/// One measurement round: which basis, what every detector reported, and
/// the shot quality used.
struct HistoryEntry {
    Basis basis;
    std::vector<Outcome> outcomes;
    double eps;
};

/// Exact posterior over an interleaved two-basis outcome history, kept as
/// per-configuration log-likelihoods so long histories do not underflow.
class BrutePosterior {
   public:
    BrutePosterior(size_t n, RegisterConfig candidate);

    void append(const HistoryEntry &entry);
    void append(Basis basis, std::span<const Outcome> outcomes, double eps);

    size_t num_bits() const {
        return n_;
    }
    /// Normalized probabilities indexed by RegisterConfig::index().
    std::vector<double> probabilities() const;
    FullPosterior posterior() const;

   private:
    size_t n_;
    std::vector<uint32_t> exchanged_;
    std::vector<double> log_weight_;
};

/// Starts from the uniform prior and folds `history` in order.
FullPosterior brute_posterior(std::span<const HistoryEntry> history, const RegisterConfig &candidate, size_t n);

/// sum_s gc_unnormalized_weight(s), evaluated term by term from the linear
/// marginals in extended precision.
double brute_partition(const TwoBasisMarginals &tb);

/// Linear-domain weight of one configuration, straight from the definition.
long double brute_weight(const TwoBasisMarginals &tb, const RegisterConfig &s);

struct BruteArgmax {
    RegisterConfig config;
    double probability;
};

/// Argmax with the same tie-break as gc_most_probable.
BruteArgmax brute_most_probable(const TwoBasisMarginals &tb);

}  // namespace qreadout

#endif
