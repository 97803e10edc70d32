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

#ifndef QREADOUT_ALLOC_PROBE_H
#define QREADOUT_ALLOC_PROBE_H

#include <cstddef>

namespace qreadout::alloc_probe {

/// Heap accounting through a replaced global operator new. Counting is off
/// until start() and process-wide while on.
void start();
void stop();
/// Largest single request seen since start().
size_t largest_request();
/// Number of requests seen since start().
size_t requests();

}  // namespace qreadout::alloc_probe

#endif
