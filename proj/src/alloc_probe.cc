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

#include "qreadout/alloc_probe.h"

#include <atomic>
#include <cstdlib>
#include <new>

namespace {

std::atomic<bool> g_on{false};
std::atomic<size_t> g_largest{0};
std::atomic<size_t> g_requests{0};

void *counted_alloc(size_t size) {
    if (g_on.load(std::memory_order_relaxed)) {
        g_requests.fetch_add(1, std::memory_order_relaxed);
        size_t prev = g_largest.load(std::memory_order_relaxed);
        while (size > prev && !g_largest.compare_exchange_weak(prev, size, std::memory_order_relaxed)) {
        }
    }
    if (size == 0) {
        size = 1;
    }
    void *p = std::malloc(size);
    if (!p) {
        throw std::bad_alloc();
    }
    return p;
}

}  // namespace

void *operator new(size_t size) {
    return counted_alloc(size);
}
void *operator new[](size_t size) {
    return counted_alloc(size);
}
void operator delete(void *p) noexcept {
    std::free(p);
}
void operator delete[](void *p) noexcept {
    std::free(p);
}
void operator delete(void *p, size_t) noexcept {
    std::free(p);
}
void operator delete[](void *p, size_t) noexcept {
    std::free(p);
}

namespace qreadout::alloc_probe {

void start() {
    g_largest = 0;
    g_requests = 0;
    g_on = true;
}

void stop() {
    g_on = false;
}

size_t largest_request() {
    return g_largest.load();
}

size_t requests() {
    return g_requests.load();
}

}  // namespace qreadout::alloc_probe
