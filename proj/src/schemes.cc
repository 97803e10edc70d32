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

#include "qreadout/schemes.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qreadout/errors.h"
#include "qreadout/log_math.h"

namespace qreadout {

std::string_view scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::NoControl:
            return "none";
        case SchemeKind::RandomPermutation:
            return "rp";
        case SchemeKind::LocallyOptimal:
            return "lo";
        case SchemeKind::GuessAndCheck:
            return "gc";
    }
    return "?";
}

SchemeKind parse_scheme(std::string_view name) {
    if (name == "none") {
        return SchemeKind::NoControl;
    }
    if (name == "rp") {
        return SchemeKind::RandomPermutation;
    }
    if (name == "lo") {
        return SchemeKind::LocallyOptimal;
    }
    if (name == "gc") {
        return SchemeKind::GuessAndCheck;
    }
    throw ParameterError("unknown scheme '" + std::string(name) + "' (expected none, rp, lo or gc)");
}

size_t max_register_size(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::RandomPermutation:
        case SchemeKind::LocallyOptimal:
            return kMaxFullPosteriorBits;
        default:
            return kMaxMarginalBits;
    }
}

void sample_outcomes(const RegisterConfig &labels, double eps, Rng &rng, std::span<Outcome> out) {
    for (size_t k = 0; k < labels.size(); k++) {
        out[k] = sample_outcome(labels.bit(k), eps, rng);
    }
}

void sample_outcomes(uint64_t label, double eps, Rng &rng, std::span<Outcome> out) {
    for (size_t k = 0; k < out.size(); k++) {
        out[k] = sample_outcome(static_cast<BitValue>((label >> k) & 1), eps, rng);
    }
}

FullPosterior no_control_step(FullPosterior post, const RegisterConfig &true_state, double eps, Rng &rng) {
    std::vector<Outcome> outcomes(true_state.size());
    sample_outcomes(true_state, eps, rng, outcomes);
    post.update(Permutation::identity(post.size()), outcomes, eps);
    return post;
}

MarginalSet no_control_step(MarginalSet m, const RegisterConfig &true_state, double eps, Rng &rng) {
    std::vector<Outcome> outcomes(true_state.size());
    sample_outcomes(true_state, eps, rng, outcomes);
    m.update(outcomes, eps);
    return m;
}

Permutation random_permutation(size_t size, Rng &rng) {
    std::vector<uint32_t> map(size);
    std::iota(map.begin(), map.end(), 0u);
    for (size_t i = size; i-- > 1;) {
        size_t j = rng.below(i + 1);
        std::swap(map[i], map[j]);
    }
    return Permutation::from_map(std::move(map));
}

RpState RpState::fresh(size_t n) {
    RpState s{FullPosterior::uniform(n), Permutation{}};
    s.perm = Permutation::identity(s.post.size());
    return s;
}

RpState rp_step(RpState state, const RegisterConfig &true_state, double eps, Rng &rng, size_t perm_interval) {
    if (perm_interval > 0 && state.steps % perm_interval == 0) {
        state.perm = random_permutation(state.post.size(), rng);
        state.permutations_drawn++;
    }
    std::vector<Outcome> outcomes(true_state.size());
    sample_outcomes(state.perm(true_state.index()), eps, rng, outcomes);
    state.post.update(state.perm, outcomes, eps);
    state.steps++;
    return state;
}

Permutation lo_select_permutation(const FullPosterior &post) {
    size_t size = post.size();
    uint64_t best = post.most_probable();
    auto probs = post.probs();

    std::vector<uint32_t> by_probability;
    std::vector<uint32_t> by_distance;
    by_probability.reserve(size - 1);
    by_distance.reserve(size - 1);
    for (uint32_t s = 0; s < size; s++) {
        if (s != best) {
            by_probability.push_back(s);
            by_distance.push_back(s);
        }
    }
    std::stable_sort(by_probability.begin(), by_probability.end(), [&](uint32_t a, uint32_t b) {
        return probs[a] > probs[b];
    });
    std::stable_sort(by_distance.begin(), by_distance.end(), [&](uint32_t a, uint32_t b) {
        return hamming_index(a, best) > hamming_index(b, best);
    });

    std::vector<uint32_t> map(size);
    map[best] = static_cast<uint32_t>(best);
    for (size_t i = 0; i < by_probability.size(); i++) {
        map[by_probability[i]] = by_distance[i];
    }
    return Permutation::from_map(std::move(map));
}

double lo_objective(const FullPosterior &post, const Permutation &perm) {
    double total = 0;
    for (double m : flipped_bit_marginals(post, perm)) {
        total += 4.0 * m * m;
    }
    return total;
}

FullPosterior lo_step(FullPosterior post, const RegisterConfig &true_state, double eps, Rng &rng) {
    Permutation perm = lo_select_permutation(post);
    std::vector<Outcome> outcomes(true_state.size());
    sample_outcomes(perm(true_state.index()), eps, rng, outcomes);
    post.update(perm, outcomes, eps);
    return post;
}

// ---------------------------------------------------------------------------

void GcThresholds::validate() const {
    if (!(p0 > 0.0 && p0 < 1.0)) {
        throw ParameterError("GcThresholds: p0 must lie in (0, 1)");
    }
    if (!(p0_prime > 0.0 && p0_prime < p0 / 10.0)) {
        throw ParameterError("GcThresholds: p0_prime must lie in (0, p0 / 10)");
    }
    if (check_interval == 0) {
        throw ParameterError("GcThresholds: check_interval must be positive");
    }
}

GcState GcState::fresh(size_t n) {
    GcState s;
    s.guess = MarginalSet::uniform(n);
    return s;
}

size_t GcState::num_bits() const {
    return check ? check->size() : guess.size();
}

const RegisterConfig *GcState::candidate() const {
    return check ? &check->candidate() : nullptr;
}

double GcState::log_infidelity() const {
    if (phase == GcPhase::Check) {
        return gc_log_infidelity(*check);
    }
    return factored_log_infidelity(guess);
}

size_t GcState::state_bytes() const {
    return guess.state_bytes() + (check ? check->state_bytes() : 0);
}

bool GcState::same_posterior_state(const GcState &other) const {
    if (phase != other.phase || steps_in_phase != other.steps_in_phase || basis_toggle != other.basis_toggle) {
        return false;
    }
    if (phase == GcPhase::Guess) {
        return guess == other.guess && !check && !other.check;
    }
    return check->basis() == other.check->basis() && check->tilde() == other.check->tilde() &&
           check->candidate() == other.check->candidate();
}

GcStepResult gc_step(
    GcState state,
    const GcThresholds &thresholds,
    const RegisterConfig &true_state,
    double eps,
    Rng &rng,
    const GcOptions &options,
    RoundObserver *observer) {
    StepActions actions;
    size_t n = true_state.size();
    std::vector<Outcome> outcomes(n);

    if (state.phase == GcPhase::Guess) {
        sample_outcomes(true_state, eps, rng, outcomes);
        state.guess.update(outcomes, eps);
        if (observer) {
            observer->on_round(Basis::Original, outcomes, eps);
        }
        state.steps_in_phase++;
        if (state.steps_in_phase % thresholds.check_interval == 0 &&
            factored_log_max_probability(state.guess) >= std::log(thresholds.p0)) {
            RegisterConfig candidate = factored_most_probable(state.guess);
            state.check.emplace(std::move(state.guess), MarginalSet::uniform(n), std::move(candidate));
            state.guess = MarginalSet();
            state.phase = GcPhase::Check;
            state.steps_in_phase = 0;
            state.basis_toggle = Basis::Exchanged;
            state.check_entries++;
            actions.push(ControlAction::EnterCheck);
        }
        return {std::move(state), actions};
    }

    TwoBasisMarginals &tb = *state.check;
    if (options.simultaneous) {
        double half = eps / std::sqrt(2.0);
        sample_outcomes(true_state, half, rng, outcomes);
        tb.update(Basis::Original, outcomes, half);
        if (observer) {
            observer->on_round(Basis::Original, outcomes, half);
        }
        sample_outcomes(exchanged_label(true_state, tb.candidate()), half, rng, outcomes);
        tb.update(Basis::Exchanged, outcomes, half);
        if (observer) {
            observer->on_round(Basis::Exchanged, outcomes, half);
        }
    } else {
        Basis basis = state.basis_toggle;
        if (basis == Basis::Original) {
            sample_outcomes(true_state, eps, rng, outcomes);
        } else {
            sample_outcomes(exchanged_label(true_state, tb.candidate()), eps, rng, outcomes);
        }
        tb.update(basis, outcomes, eps);
        if (observer) {
            observer->on_round(basis, outcomes, eps);
        }
    }
    state.steps_in_phase++;

    if (state.steps_in_phase % thresholds.check_interval == 0 &&
        gc_log_candidate_probability(tb) < std::log(thresholds.p0_prime)) {
        GcState restarted = GcState::fresh(n);
        restarted.restarts = state.restarts + 1;
        restarted.check_entries = state.check_entries;
        actions.push(ControlAction::Restart);
        return {std::move(restarted), actions};
    }
    if (!options.simultaneous) {
        state.basis_toggle = state.basis_toggle == Basis::Original ? Basis::Exchanged : Basis::Original;
        actions.push(
            state.basis_toggle == Basis::Original ? ControlAction::UseOriginalBasis
                                                  : ControlAction::UseExchangedBasis);
    }
    return {std::move(state), actions};
}

// ---------------------------------------------------------------------------

namespace {

class NoControlMarginal final : public ReadoutScheme {
   public:
    NoControlMarginal(RegisterConfig truth, double eps)
        : truth_(std::move(truth)), eps_(eps), marginals_(MarginalSet::uniform(truth_.size())), outcomes_(truth_.size()) {
    }
    SchemeKind kind() const override {
        return SchemeKind::NoControl;
    }
    void step(Rng &rng) override {
        sample_outcomes(truth_, eps_, rng, outcomes_);
        marginals_.update(outcomes_, eps_);
        if (observer_) {
            observer_->on_round(Basis::Original, outcomes_, eps_);
        }
    }
    double log_infidelity() const override {
        return factored_log_infidelity(marginals_);
    }
    size_t state_bytes() const override {
        return marginals_.state_bytes();
    }
    void set_observer(RoundObserver *observer) override {
        observer_ = observer;
    }

   private:
    RegisterConfig truth_;
    double eps_;
    MarginalSet marginals_;
    std::vector<Outcome> outcomes_;
    RoundObserver *observer_ = nullptr;
};

class FullPosteriorScheme : public ReadoutScheme {
   public:
    FullPosteriorScheme(RegisterConfig truth, double eps)
        : truth_(std::move(truth)), eps_(eps), post_(FullPosterior::uniform(truth_.size())) {
    }
    double log_infidelity() const override {
        return qreadout::log_infidelity(post_);
    }
    size_t state_bytes() const override {
        return post_.size() * sizeof(double);
    }

   protected:
    RegisterConfig truth_;
    double eps_;
    FullPosterior post_;
};

class NoControlFull final : public FullPosteriorScheme {
   public:
    using FullPosteriorScheme::FullPosteriorScheme;
    SchemeKind kind() const override {
        return SchemeKind::NoControl;
    }
    void step(Rng &rng) override {
        post_ = no_control_step(std::move(post_), truth_, eps_, rng);
    }
};

class RandomPermutationScheme final : public ReadoutScheme {
   public:
    RandomPermutationScheme(RegisterConfig truth, double eps, size_t perm_interval)
        : truth_(std::move(truth)), eps_(eps), perm_interval_(perm_interval), state_(RpState::fresh(truth_.size())) {
    }
    SchemeKind kind() const override {
        return SchemeKind::RandomPermutation;
    }
    void step(Rng &rng) override {
        state_ = rp_step(std::move(state_), truth_, eps_, rng, perm_interval_);
    }
    double log_infidelity() const override {
        return qreadout::log_infidelity(state_.post);
    }
    size_t state_bytes() const override {
        return state_.post.size() * (sizeof(double) + sizeof(uint32_t));
    }
    size_t control_actions() const override {
        return state_.permutations_drawn;
    }

   private:
    RegisterConfig truth_;
    double eps_;
    size_t perm_interval_;
    RpState state_;
};

class LocallyOptimalScheme final : public FullPosteriorScheme {
   public:
    using FullPosteriorScheme::FullPosteriorScheme;
    SchemeKind kind() const override {
        return SchemeKind::LocallyOptimal;
    }
    void step(Rng &rng) override {
        post_ = lo_step(std::move(post_), truth_, eps_, rng);
        steps_++;
    }
    size_t control_actions() const override {
        return steps_;
    }

   private:
    size_t steps_ = 0;
};

class GuessAndCheckScheme final : public ReadoutScheme {
   public:
    GuessAndCheckScheme(RegisterConfig truth, double eps, GcThresholds thresholds, GcOptions options)
        : truth_(std::move(truth)),
          eps_(eps),
          thresholds_(thresholds),
          options_(options),
          state_(GcState::fresh(truth_.size())) {
        thresholds_.validate();
    }
    SchemeKind kind() const override {
        return SchemeKind::GuessAndCheck;
    }
    void step(Rng &rng) override {
        GcStepResult r = gc_step(std::move(state_), thresholds_, truth_, eps_, rng, options_, observer_);
        state_ = std::move(r.state);
        actions_ += r.actions.count;
    }
    double log_infidelity() const override {
        return state_.log_infidelity();
    }
    size_t state_bytes() const override {
        return state_.state_bytes();
    }
    GcPhase phase() const override {
        return state_.phase;
    }
    size_t restarts() const override {
        return state_.restarts;
    }
    size_t check_entries() const override {
        return state_.check_entries;
    }
    size_t control_actions() const override {
        return actions_;
    }
    const RegisterConfig *candidate() const override {
        return state_.candidate();
    }
    void set_observer(RoundObserver *observer) override {
        observer_ = observer;
    }

   private:
    RegisterConfig truth_;
    double eps_;
    GcThresholds thresholds_;
    GcOptions options_;
    GcState state_;
    size_t actions_ = 0;
    RoundObserver *observer_ = nullptr;
};

}  // namespace

std::unique_ptr<ReadoutScheme> make_scheme(
    SchemeKind kind, RegisterConfig true_state, double eps, const SchemeOptions &options) {
    require_epsilon(eps, "make_scheme");
    size_t n = true_state.size();
    if (n < 1 || n > max_register_size(kind)) {
        throw ParameterError(
            "scheme '" + std::string(scheme_name(kind)) + "' supports 1 <= n <= " +
            std::to_string(max_register_size(kind)) + ", got n = " + std::to_string(n));
    }
    switch (kind) {
        case SchemeKind::NoControl:
            if (options.full_posterior) {
                return std::make_unique<NoControlFull>(std::move(true_state), eps);
            }
            return std::make_unique<NoControlMarginal>(std::move(true_state), eps);
        case SchemeKind::RandomPermutation:
            return std::make_unique<RandomPermutationScheme>(std::move(true_state), eps, options.perm_interval);
        case SchemeKind::LocallyOptimal:
            return std::make_unique<LocallyOptimalScheme>(std::move(true_state), eps);
        case SchemeKind::GuessAndCheck:
            return std::make_unique<GuessAndCheckScheme>(std::move(true_state), eps, options.thresholds, options.gc);
    }
    throw ParameterError("make_scheme: unknown scheme kind");
}

}  // namespace qreadout
