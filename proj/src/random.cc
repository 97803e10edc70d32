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

#include "qreadout/random.h"

#include "qreadout/errors.h"

namespace qreadout {

Rng::Rng(uint64_t seed) : engine_(seed) {
}

Rng Rng::for_trial(uint64_t seed, uint64_t trial_index) {
    std::seed_seq seq{
        static_cast<uint32_t>(seed),
        static_cast<uint32_t>(seed >> 32),
        static_cast<uint32_t>(trial_index),
        static_cast<uint32_t>(trial_index >> 32),
        0x51ed270bu,
    };
    Rng result(0);
    result.engine_.seed(seq);
    return result;
}

uint64_t Rng::below(uint64_t bound) {
    if (bound == 0) {
        throw ParameterError("Rng::below requires a positive bound");
    }
    // Rejection sampling on the top of the range keeps the result unbiased.
    uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    while (true) {
        uint64_t x = engine_();
        if (x < limit) {
            return x % bound;
        }
    }
}

}  // namespace qreadout
