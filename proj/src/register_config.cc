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

#include "qreadout/register_config.h"

#include "qreadout/errors.h"

namespace qreadout {

RegisterConfig::RegisterConfig(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
    for (auto &b : bits_) {
        if (b > 1) {
            throw ParameterError("RegisterConfig: bits must be 0 or 1");
        }
    }
}

RegisterConfig RegisterConfig::zeros(size_t n) {
    return RegisterConfig(std::vector<uint8_t>(n, 0));
}

RegisterConfig RegisterConfig::from_index(uint64_t index, size_t n) {
    if (n > 63) {
        throw ParameterError("RegisterConfig::from_index: n must be at most 63");
    }
    if (n < 64 && (index >> n) != 0) {
        throw ParameterError("RegisterConfig::from_index: index out of range");
    }
    std::vector<uint8_t> bits(n);
    for (size_t k = 0; k < n; k++) {
        bits[k] = (index >> k) & 1;
    }
    return RegisterConfig(std::move(bits));
}

RegisterConfig RegisterConfig::from_string(std::string_view text) {
    std::vector<uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ParameterError("RegisterConfig::from_string: expected only '0' and '1'");
        }
        bits.push_back(c == '1');
    }
    return RegisterConfig(std::move(bits));
}

RegisterConfig RegisterConfig::random(size_t n, Rng &rng) {
    std::vector<uint8_t> bits(n);
    for (auto &b : bits) {
        b = rng.coin();
    }
    return RegisterConfig(std::move(bits));
}

uint64_t RegisterConfig::index() const {
    if (bits_.size() > 63) {
        throw ParameterError("RegisterConfig::index: register too large for an integer label");
    }
    uint64_t result = 0;
    for (size_t k = 0; k < bits_.size(); k++) {
        result |= static_cast<uint64_t>(bits_[k]) << k;
    }
    return result;
}

RegisterConfig RegisterConfig::complement() const {
    RegisterConfig result = *this;
    for (auto &b : result.bits_) {
        b ^= 1;
    }
    return result;
}

std::string RegisterConfig::str() const {
    std::string result;
    result.reserve(bits_.size());
    for (auto b : bits_) {
        result.push_back(b ? '1' : '0');
    }
    return result;
}

size_t hamming(const RegisterConfig &a, const RegisterConfig &b) {
    if (a.size() != b.size()) {
        throw ParameterError("hamming: configurations have different lengths");
    }
    size_t d = 0;
    for (size_t k = 0; k < a.size(); k++) {
        d += a.bit(k) != b.bit(k);
    }
    return d;
}

}  // namespace qreadout
