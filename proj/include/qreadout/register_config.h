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

#ifndef QREADOUT_REGISTER_CONFIG_H
#define QREADOUT_REGISTER_CONFIG_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qreadout/measurement.h"
#include "qreadout/random.h"

namespace qreadout {

/// One joint assignment of an n-bit register.
///
/// Bit k is read by detector k. The integer index form places bit k at
/// weight 2^k; the string form lists bit 0 first.
class RegisterConfig {
   public:
    RegisterConfig() = default;
    explicit RegisterConfig(std::vector<uint8_t> bits);

    static RegisterConfig zeros(size_t n);
    static RegisterConfig from_index(uint64_t index, size_t n);
    static RegisterConfig from_string(std::string_view text);
    /// One fair coin per bit, in ascending bit order.
    static RegisterConfig random(size_t n, Rng &rng);

    size_t size() const {
        return bits_.size();
    }
    BitValue bit(size_t k) const {
        return static_cast<BitValue>(bits_[k]);
    }
    bool is_set(size_t k) const {
        return bits_[k] != 0;
    }
    void set(size_t k, bool value) {
        bits_[k] = value ? 1 : 0;
    }

    /// Requires size() <= 63.
    uint64_t index() const;
    RegisterConfig complement() const;
    std::string str() const;

    bool operator==(const RegisterConfig &other) const = default;
    bool operator<(const RegisterConfig &other) const {
        return bits_ < other.bits_;
    }

   private:
    std::vector<uint8_t> bits_;
};

size_t hamming(const RegisterConfig &a, const RegisterConfig &b);

inline unsigned hamming_index(uint64_t a, uint64_t b) {
    return static_cast<unsigned>(__builtin_popcountll(a ^ b));
}

}  // namespace qreadout

#endif
