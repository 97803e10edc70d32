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

#ifndef QREADOUT_LOG_MATH_H
#define QREADOUT_LOG_MATH_H

#include <cmath>
#include <limits>

namespace qreadout {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// ln(1 / (1 + e^-x)), exact for |x| up to infinity.
inline double log_sigmoid(double x) {
    if (x >= 0) {
        return -std::log1p(std::exp(-x));
    }
    return x - std::log1p(std::exp(x));
}

/// ln(e^a + e^b).
inline double log_add(double a, double b) {
    if (a < b) {
        std::swap(a, b);
    }
    if (b == kNegInf) {
        return a;
    }
    return a + std::log1p(std::exp(b - a));
}

/// ln(1 - e^a) for a <= 0.
inline double log1m_exp(double a) {
    if (a > -0.6931471805599453) {
        return std::log(-std::expm1(a));
    }
    return std::log1p(-std::exp(a));
}

/// ln(p / (1 - p)), mapping 0 and 1 onto -inf and +inf.
inline double logit(double p) {
    return std::log(p) - std::log1p(-p);
}

}  // namespace qreadout

#endif
