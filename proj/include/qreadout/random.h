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

#ifndef QREADOUT_RANDOM_H
#define QREADOUT_RANDOM_H

#include <cstdint>
#include <random>

namespace qreadout {

/// Seeded 64-bit random stream. Draws are defined bit-exactly (no
/// implementation-defined distributions) so trajectories replay identically.
class Rng {
   public:
    explicit Rng(uint64_t seed);

    /// Independent stream for one trial of an ensemble.
    static Rng for_trial(uint64_t seed, uint64_t trial_index);

    uint64_t next_u64() {
        return engine_();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). bound must be positive.
    uint64_t below(uint64_t bound);

    bool coin() {
        return (engine_() >> 63) != 0;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace qreadout

#endif
