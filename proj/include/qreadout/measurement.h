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

#ifndef QREADOUT_MEASUREMENT_H
#define QREADOUT_MEASUREMENT_H

#include <cstdint>
#include <span>

#include "qreadout/random.h"

namespace qreadout {

/// Value of one register bit. Zero is the state favouring the +1 outcome.
enum class BitValue : uint8_t { Zero = 0, One = 1 };

/// Result of a single weak measurement shot.
enum class Outcome : int8_t { Minus = -1, Plus = +1 };

inline int sign(Outcome o) {
    return static_cast<int>(o);
}

/// Quality of the per-shot measurement together with its continuum reading.
///
/// The discrete channel is canonical; the continuum pair (gamma, dt) is tied
/// to it by epsilon^2 = 8 gamma dt, under which the uncontrolled single-bit
/// log-infidelity slope of -2 epsilon^2 per step reads -16 gamma per unit time.
struct MeasurementStrength {
    double epsilon;
    double gamma;
    double dt;

    /// Uses gamma = 1 as the unit of rate, so dt = epsilon^2 / 8.
    static MeasurementStrength from_epsilon(double epsilon);
    static MeasurementStrength from_continuum(double gamma, double dt);

    /// Converts a per-step rate into a per-unit-time rate.
    double per_time(double per_step) const {
        return per_step / dt;
    }
};

/// P(outcome = +1 | bit). eps must lie in [0, 1].
double outcome_probability(BitValue bit, double eps);

/// Draws one outcome, consuming exactly one uniform from rng.
Outcome sample_outcome(BitValue bit, double eps, Rng &rng);

/// Exact Bayes update of p = P(bit = 0) after observing delta.
double bayes_update(double p, Outcome delta, double eps);

/// Log-odds increment ln((1 + eps) / (1 - eps)) carried by one +1 outcome
/// in favour of bit 0 (negated for -1).
double log_likelihood_ratio(double eps);

/// epsilon = 2 sqrt(2 gamma dt). Requires 8 gamma dt < 1.
double epsilon_from_continuum(double gamma, double dt);

void require_epsilon(double eps, const char *where);

}  // namespace qreadout

#endif
