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

#ifndef QREADOUT_TWO_BASIS_H
#define QREADOUT_TWO_BASIS_H

#include <cstddef>
#include <span>

#include "qreadout/marginals.h"
#include "qreadout/register_config.h"

namespace qreadout {

/// Which ordered pointer basis a measurement round used: the original one, or
/// the one in which the candidate and its bitwise opposite are exchanged.
enum class Basis : uint8_t { Original, Exchanged };

/// Maps a configuration to the labels it is read under in the exchanged basis,
/// written so that the candidate keeps its name: the candidate and its
/// opposite are fixed and every other configuration is bit-complemented.
RegisterConfig exchanged_label(const RegisterConfig &s, const RegisterConfig &candidate);

/// The O(n) posterior state of the check phase.
///
/// `basis()` holds p_k = P(R_k = 0 | record of detector k in the original
/// basis). `tilde()` holds the same quantity for the exchanged basis, where
/// detector k reads bit k of exchanged_label(R, candidate). The joint
/// posterior of every configuration follows from these 2n numbers.
class TwoBasisMarginals {
   public:
    TwoBasisMarginals(MarginalSet basis, MarginalSet tilde, RegisterConfig candidate);
    static TwoBasisMarginals from_probabilities(
        std::span<const double> p, std::span<const double> p_tilde, RegisterConfig candidate);

    size_t size() const {
        return basis_.size();
    }
    const MarginalSet &basis() const {
        return basis_;
    }
    const MarginalSet &tilde() const {
        return tilde_;
    }
    const RegisterConfig &candidate() const {
        return candidate_;
    }

    void update(Basis which, std::span<const Outcome> outcomes, double eps);

    size_t state_bytes() const {
        return basis_.state_bytes() + tilde_.state_bytes() + candidate_.size();
    }

   private:
    MarginalSet basis_;
    MarginalSet tilde_;
    RegisterConfig candidate_;
};

/// prod_k P[R_k = s_k] P[R~_k = s~_k], with s~ = exchanged_label(s, candidate).
double gc_unnormalized_weight(const TwoBasisMarginals &tb, const RegisterConfig &s);
double gc_log_unnormalized_weight(const TwoBasisMarginals &tb, const RegisterConfig &s);

/// Normalization over all 2^n configurations in O(n):
///   Z = prod[p(1-p~) + (1-p)p~] + prod[p p~] + prod[(1-p)(1-p~)]
///       - prod[p(1-p~)] - prod[(1-p)p~]
/// with marginals taken relative to the candidate. Evaluated in log space;
/// throws NumericError when Z is not positive.
double gc_log_partition(const TwoBasisMarginals &tb);
double gc_partition(const TwoBasisMarginals &tb);

double gc_config_probability(const TwoBasisMarginals &tb, const RegisterConfig &s);
double gc_candidate_probability(const TwoBasisMarginals &tb);
double gc_log_candidate_probability(const TwoBasisMarginals &tb);

struct MostProbable {
    enum class Kind { Candidate, Opposite, Generic };
    RegisterConfig config;
    double probability;
    double log_probability;
    /// ln(1 - probability), computed from the remaining mass.
    double log_infidelity;
    Kind kind;
};

/// Argmax over all configurations in O(n). Ties go to the candidate, then to
/// the lexicographically smallest configuration.
MostProbable gc_most_probable(const TwoBasisMarginals &tb);

double gc_infidelity(const TwoBasisMarginals &tb);
double gc_log_infidelity(const TwoBasisMarginals &tb);

}  // namespace qreadout

#endif
