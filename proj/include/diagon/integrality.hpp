#pragma once

#include <map>
#include <optional>
#include <vector>

#include "diagon/rational.hpp"
#include "diagon/useries.hpp"

namespace diagon {

struct LinDiffOp;

enum class IntegralityKind {
    GloballyBoundedWith,
    LikelyNotGloballyBounded,
    LogarithmicallyBounded,
    Inconclusive,
};

struct PrimeProfile {
    Int p;
    std::vector<std::pair<long, long>> valuations;  // (index n, v_p(den a_n)) for nonzero v
    long max_exponent_per_index = 0;                // max over n of ceil(v/n)
    long first_index = 0;
};

// All verdicts are relative to the inspected window [0, window].
struct IntegralityVerdict {
    IntegralityKind kind = IntegralityKind::Inconclusive;
    Int rescale = 1;                    // N for GloballyBoundedWith
    std::vector<Int> witness_primes;    // for LikelyNotGloballyBounded
    std::vector<long> witness_indices;  // first index where each witness appears
    std::vector<Int> opaque_cofactors;  // composite denominators trial division missed
    std::vector<PrimeProfile> profile;  // per-prime valuation evidence
    int window = 0;
    std::string describe() const;
};

struct IntegralityOptions {
    // likely-not threshold: more than ceil(window/8) distinct denominator primes
    long prime_count_divisor = 8;
    unsigned long trial_division_bound = 1000000;
    long log_slack = 1;  // slack c in v_p <= floor(log_p n) + c
};

// Semi-decision from the truncated window: N = prod p^{max_n ceil(v_p(den a_n)/n)}
// when the denominator prime set stays small, LikelyNotGloballyBounded when it
// keeps growing with the window.
IntegralityVerdict find_rescaling(const USeries& f, const IntegralityOptions& opt = {});

// For each given prime, whether v_p(den a_n) <= floor(log_p n) + slack holds
// for all computed n >= 1.
std::vector<std::pair<Int, bool>> log_bounded_check(const USeries& f, const std::vector<Int>& primes,
                                                    long slack = 1);

// Applies an order-one operator and reports the verdict of the image series.
std::pair<USeries, IntegralityVerdict> apply_then_check(const LinDiffOp& L, const USeries& f,
                                                        const IntegralityOptions& opt = {});

}  // namespace diagon
