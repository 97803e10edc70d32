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

#include "qreadout/two_basis.h"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "qreadout/errors.h"
#include "qreadout/log_math.h"

namespace qreadout {

RegisterConfig exchanged_label(const RegisterConfig &s, const RegisterConfig &candidate) {
    if (s.size() != candidate.size()) {
        throw ParameterError("exchanged_label: length mismatch");
    }
    size_t d = hamming(s, candidate);
    if (d == 0 || d == s.size()) {
        return s;
    }
    return s.complement();
}

TwoBasisMarginals::TwoBasisMarginals(MarginalSet basis, MarginalSet tilde, RegisterConfig candidate)
    : basis_(std::move(basis)), tilde_(std::move(tilde)), candidate_(std::move(candidate)) {
    if (basis_.size() != tilde_.size() || basis_.size() != candidate_.size()) {
        throw ParameterError("TwoBasisMarginals: marginal sets and candidate must share one length");
    }
    if (basis_.size() == 0) {
        throw ParameterError("TwoBasisMarginals: register must have at least one bit");
    }
}

TwoBasisMarginals TwoBasisMarginals::from_probabilities(
    std::span<const double> p, std::span<const double> p_tilde, RegisterConfig candidate) {
    return TwoBasisMarginals(
        MarginalSet::from_probabilities(p), MarginalSet::from_probabilities(p_tilde), std::move(candidate));
}

void TwoBasisMarginals::update(Basis which, std::span<const Outcome> outcomes, double eps) {
    (which == Basis::Original ? basis_ : tilde_).update(outcomes, eps);
}

namespace {

// Per-bit log factors relative to the candidate. With q = P(bit agrees with
// the candidate) in the original basis and q~ likewise in the exchanged one:
//   agree    = q (1 - q~)   generic configuration matching the candidate here
//   disagree = (1 - q) q~   generic configuration differing here
//   cand     = q q~         the candidate
//   opp      = (1-q)(1-q~)  its opposite
struct BitFactors {
    double agree;
    double disagree;
    double cand;
    double opp;
    /// ln(agree / disagree), formed from the log-odds directly.
    double log_ratio;
};

BitFactors bit_factors(const TwoBasisMarginals &tb, size_t k) {
    bool flip = tb.candidate().is_set(k);
    double a = tb.basis().log_odds(k);
    double b = tb.tilde().log_odds(k);
    if (flip) {
        a = -a;
        b = -b;
    }
    double lq = log_sigmoid(a);
    double lnq = log_sigmoid(-a);
    double lqt = log_sigmoid(b);
    double lnqt = log_sigmoid(-b);
    return {lq + lnqt, lnq + lqt, lq + lqt, lnq + lnqt, a - b};
}

// Sums over bits of the log factors above. `log_agree_share` is
// sum_k ln(agree_k / (agree_k + disagree_k)), the log of the fraction of the
// generic product that the (excluded) all-agree pattern would claim.
struct Totals {
    double log_cand = 0;
    double log_opp = 0;
    double log_pair_sum = 0;
    double log_agree_share = 0;
    double log_disagree_share = 0;
    bool generic_vanishes = false;
};

Totals totals(const TwoBasisMarginals &tb) {
    Totals t;
    for (size_t k = 0; k < tb.size(); k++) {
        BitFactors f = bit_factors(tb, k);
        t.log_cand += f.cand;
        t.log_opp += f.opp;
        double pair = log_add(f.agree, f.disagree);
        if (pair == kNegInf) {
            t.generic_vanishes = true;
            continue;
        }
        t.log_pair_sum += pair;
        // ln(x / (x + y)) from the ratio alone; x - ln(e^x + e^y) cancels.
        t.log_agree_share += log_sigmoid(f.log_ratio);
        t.log_disagree_share += log_sigmoid(-f.log_ratio);
    }
    if (tb.size() < 2) {
        t.generic_vanishes = true;
    }
    return t;
}

// ln(1 - sum_i e^{x_i}). The largest term goes through expm1 so that the
// result stays accurate when one term is close to 1.
double log_one_minus_sum(std::initializer_list<double> terms) {
    double top = kNegInf;
    for (double x : terms) {
        top = std::max(top, x);
    }
    double rest = -std::expm1(top);
    bool skipped = false;
    for (double x : terms) {
        if (x == top && !skipped) {
            skipped = true;
            continue;
        }
        rest -= std::exp(x);
    }
    if (!(rest > 0.0)) {
        return kNegInf;
    }
    return std::log(rest);
}

// ln of the total weight of all generic configurations, minus the optional
// share of one of them.
double log_generic_mass(const Totals &t, double excluded_share = kNegInf) {
    if (t.generic_vanishes) {
        return kNegInf;
    }
    return t.log_pair_sum + log_one_minus_sum({t.log_agree_share, t.log_disagree_share, excluded_share});
}

double log_partition_from(const Totals &t) {
    double z = log_add(log_generic_mass(t), log_add(t.log_cand, t.log_opp));
    if (!(z > kNegInf) || std::isnan(z)) {
        throw NumericError("gc_partition: normalization is not positive");
    }
    return z;
}

}  // namespace

double gc_log_unnormalized_weight(const TwoBasisMarginals &tb, const RegisterConfig &s) {
    if (s.size() != tb.size()) {
        throw ParameterError("gc_unnormalized_weight: length mismatch");
    }
    size_t d = hamming(s, tb.candidate());
    double total = 0;
    for (size_t k = 0; k < tb.size(); k++) {
        BitFactors f = bit_factors(tb, k);
        if (d == 0) {
            total += f.cand;
        } else if (d == tb.size()) {
            total += f.opp;
        } else {
            total += s.bit(k) == tb.candidate().bit(k) ? f.agree : f.disagree;
        }
    }
    return total;
}

double gc_unnormalized_weight(const TwoBasisMarginals &tb, const RegisterConfig &s) {
    return std::exp(gc_log_unnormalized_weight(tb, s));
}

double gc_log_partition(const TwoBasisMarginals &tb) {
    return log_partition_from(totals(tb));
}

double gc_partition(const TwoBasisMarginals &tb) {
    return std::exp(gc_log_partition(tb));
}

double gc_config_probability(const TwoBasisMarginals &tb, const RegisterConfig &s) {
    return std::exp(gc_log_unnormalized_weight(tb, s) - gc_log_partition(tb));
}

double gc_log_candidate_probability(const TwoBasisMarginals &tb) {
    Totals t = totals(tb);
    return t.log_cand - log_partition_from(t);
}

double gc_candidate_probability(const TwoBasisMarginals &tb) {
    return std::exp(gc_log_candidate_probability(tb));
}

MostProbable gc_most_probable(const TwoBasisMarginals &tb) {
    const size_t n = tb.size();
    const RegisterConfig &c = tb.candidate();
    Totals t = totals(tb);
    double log_z = log_partition_from(t);

    MostProbable best{c, 0, t.log_cand, 0, MostProbable::Kind::Candidate};
    auto consider = [&](const RegisterConfig &s, double log_w, MostProbable::Kind kind) {
        if (log_w > best.log_probability || (log_w == best.log_probability &&
                                             best.kind != MostProbable::Kind::Candidate && s < best.config)) {
            best = {s, 0, log_w, 0, kind};
        }
    };
    consider(c.complement(), t.log_opp, MostProbable::Kind::Opposite);

    double log_generic_share = kNegInf;
    if (!t.generic_vanishes) {
        // Per-bit argmax of agree/disagree; an exact tie takes bit value 0.
        RegisterConfig g = RegisterConfig::zeros(n);
        double log_w = 0;
        double log_share = 0;
        double min_margin = INFINITY;
        size_t agreements = 0;
        for (size_t k = 0; k < n; k++) {
            BitFactors f = bit_factors(tb, k);
            bool agree = f.agree > f.disagree || (f.agree == f.disagree && !c.is_set(k));
            g.set(k, agree ? c.is_set(k) : !c.is_set(k));
            log_w += agree ? f.agree : f.disagree;
            log_share += log_sigmoid(agree ? f.log_ratio : -f.log_ratio);
            agreements += agree;
            min_margin = std::min(min_margin, std::abs(f.log_ratio));
        }
        if (agreements == 0 || agreements == n) {
            // The per-bit optimum is the candidate or its opposite, which are
            // not generic; the best generic configuration flips the cheapest bit.
            size_t chosen = n;
            for (size_t k = 0; k < n; k++) {
                BitFactors f = bit_factors(tb, k);
                if (std::abs(f.log_ratio) != min_margin) {
                    continue;
                }
                // The earliest 1 -> 0 flip wins; otherwise the latest 0 -> 1 flip.
                chosen = k;
                if (g.is_set(k)) {
                    break;
                }
            }
            g.set(chosen, !g.is_set(chosen));
            log_w -= min_margin;
            log_share += log_sigmoid(-min_margin) - log_sigmoid(min_margin);
        }
        if (log_w != kNegInf) {
            consider(g, log_w, MostProbable::Kind::Generic);
            log_generic_share = log_share;
        }
    }

    double log_rest;
    switch (best.kind) {
        case MostProbable::Kind::Candidate:
            log_rest = log_add(log_generic_mass(t), t.log_opp);
            break;
        case MostProbable::Kind::Opposite:
            log_rest = log_add(log_generic_mass(t), t.log_cand);
            break;
        default:
            log_rest = log_add(log_generic_mass(t, log_generic_share), log_add(t.log_cand, t.log_opp));
            break;
    }
    best.log_probability -= log_z;
    best.probability = std::exp(best.log_probability);
    best.log_infidelity = std::min(0.0, log_rest - log_z);
    return best;
}

double gc_log_infidelity(const TwoBasisMarginals &tb) {
    return gc_most_probable(tb).log_infidelity;
}

double gc_infidelity(const TwoBasisMarginals &tb) {
    return std::exp(gc_log_infidelity(tb));
}

}  // namespace qreadout
