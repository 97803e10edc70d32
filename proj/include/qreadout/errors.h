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

#ifndef QREADOUT_ERRORS_H
#define QREADOUT_ERRORS_H

#include <stdexcept>
#include <string>

namespace qreadout {

/// Raised when an argument lies outside its documented domain.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation produced an unusable value (zero mass, undefined rate).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an estimator is given too little data.
struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qreadout

#endif
