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

#ifndef QREADOUT_SCHEMES_H
#define QREADOUT_SCHEMES_H

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qreadout/full_posterior.h"
#include "qreadout/marginals.h"
#include "qreadout/random.h"
#include "qreadout/register_config.h"
#include "qreadout/two_basis.h"

namespace qreadout {

enum class SchemeKind { NoControl, RandomPermutation, LocallyOptimal, GuessAndCheck };

/// Flag spelling: none, rp, lo, gc.
std::string_view scheme_name(SchemeKind kind);
SchemeKind parse_scheme(std::string_view name);
/// Largest register each scheme accepts.
size_t max_register_size(SchemeKind kind);

inline constexpr size_t kMaxMarginalBits = 4096;

/// Draws one outcome per detector, in ascending detector order, for a
/// register whose detectors read `labels`.
void sample_outcomes(const RegisterConfig &labels, double eps, Rng &rng, std::span<Outcome> out);
void sample_outcomes(uint64_t label, double eps, Rng &rng, std::span<Outcome> out);

// ---------------------------------------------------------------------------
// No control.

FullPosterior no_control_step(FullPosterior post, const RegisterConfig &true_state, double eps, Rng &rng);
MarginalSet no_control_step(MarginalSet m, const RegisterConfig &true_state, double eps, Rng &rng);

// ---------------------------------------------------------------------------
// Random permutations of the pointer basis (open loop).

/// Uniform random permutation of [0, size) by Fisher-Yates.
Permutation random_permutation(size_t size, Rng &rng);

struct RpState {
    FullPosterior post;
    Permutation perm;
    size_t steps = 0;
    size_t permutations_drawn = 0;

    static RpState fresh(size_t n);
};

/// Every `perm_interval` steps (starting with the first) draws a fresh
/// uniform permutation; perm_interval = 0 never permutes. Outcomes are read
/// from the bits of perm(true_state).
RpState rp_step(RpState state, const RegisterConfig &true_state, double eps, Rng &rng, size_t perm_interval);

// ---------------------------------------------------------------------------
// Locally optimal Hamming feedback.

/// Keeps the most probable configuration fixed and sends the others, in
/// decreasing order of probability, onto the labels in decreasing order of
/// Hamming distance from it. Both orders break ties by ascending index.
Permutation lo_select_permutation(const FullPosterior &post);

/// sum_k tr[(sigma_z^k - 1) rho]^2 for the labelling `perm`, with the most
/// probable configuration's label taken as the all-zero reference.
double lo_objective(const FullPosterior &post, const Permutation &perm);

FullPosterior lo_step(FullPosterior post, const RegisterConfig &true_state, double eps, Rng &rng);

// ---------------------------------------------------------------------------
// Guess and Check.

struct GcThresholds {
    /// Candidate acceptance: probability of the best configuration.
    double p0 = 0.5;
    /// Candidate rejection. Must satisfy p0_prime < p0 / 10.
    double p0_prime = 0.001;
    /// Steps between evaluations of the acceptance and rejection tests.
    size_t check_interval = 100;

    void validate() const;
};

struct GcOptions {
    /// Measure both bases every step with epsilon / sqrt(2) each instead of
    /// alternating with full epsilon.
    bool simultaneous = false;
};

enum class GcPhase : uint8_t { Guess, Check };

enum class ControlAction : uint8_t {
    /// Candidate accepted; the exchange permutation is installed.
    EnterCheck,
    UseExchangedBasis,
    UseOriginalBasis,
    /// Candidate rejected; all information discarded.
    Restart,
};

struct StepActions {
    std::array<ControlAction, 2> items{};
    uint8_t count = 0;

    void push(ControlAction a) {
        items[count++] = a;
    }
    std::span<const ControlAction> view() const {
        return {items.data(), count};
    }
};

/// Receives every measurement round a scheme performs.
class RoundObserver {
   public:
    virtual ~RoundObserver() = default;
    virtual void on_round(Basis basis, std::span<const Outcome> outcomes, double eps) = 0;
};

struct GcState {
    GcPhase phase = GcPhase::Guess;
    /// Guess phase record (original basis only).
    MarginalSet guess;
    /// Check phase record; the original-basis half continues the guess record.
    std::optional<TwoBasisMarginals> check;
    size_t restarts = 0;
    size_t check_entries = 0;
    size_t steps_in_phase = 0;
    Basis basis_toggle = Basis::Original;

    static GcState fresh(size_t n);

    size_t num_bits() const;
    const RegisterConfig *candidate() const;
    double log_infidelity() const;
    size_t state_bytes() const;
    /// Equality of everything that determines future posteriors (ignores counters).
    bool same_posterior_state(const GcState &other) const;
};

struct GcStepResult {
    GcState state;
    StepActions actions;
};

GcStepResult gc_step(
    GcState state,
    const GcThresholds &thresholds,
    const RegisterConfig &true_state,
    double eps,
    Rng &rng,
    const GcOptions &options = {},
    RoundObserver *observer = nullptr);

// ---------------------------------------------------------------------------
// Uniform driver interface used by the experiment runner.

struct SchemeOptions {
    GcThresholds thresholds;
    GcOptions gc;
    size_t perm_interval = 1;
    /// NoControl only: track the 2^n vector instead of the marginals.
    bool full_posterior = false;
};

class ReadoutScheme {
   public:
    virtual ~ReadoutScheme() = default;
    virtual SchemeKind kind() const = 0;
    virtual void step(Rng &rng) = 0;
    virtual double log_infidelity() const = 0;
    virtual size_t state_bytes() const = 0;
    virtual GcPhase phase() const {
        return GcPhase::Guess;
    }
    virtual size_t restarts() const {
        return 0;
    }
    virtual size_t check_entries() const {
        return 0;
    }
    /// Number of control operations applied to the register so far.
    virtual size_t control_actions() const {
        return 0;
    }
    virtual const RegisterConfig *candidate() const {
        return nullptr;
    }
    virtual void set_observer(RoundObserver *observer) {
        (void)observer;
    }
};

std::unique_ptr<ReadoutScheme> make_scheme(
    SchemeKind kind, RegisterConfig true_state, double eps, const SchemeOptions &options = {});

}  // namespace qreadout

#endif
