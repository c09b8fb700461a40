// Expected-distortion model for the list decoder and the information-theoretic
// efficiency bound.
//
// The model tracks V_i(j), the expected number of level-i partial solutions of
// weight exactly j, under the same weight schedule the decoder runs: the cap
// grows by one whenever the expected list size falls under the list cap.  The
// reported expected distortion r_alg is the smallest weight whose expected
// count at the final step reaches one.

#pragma once

#include <vector>

#include "stgen/list_decoder.hpp"
#include "stgen/stgen_code.hpp"

namespace stgen {

// H(p) = -p log2 p - (1-p) log2 (1-p); domain [0,1], H(0) = H(1) = 0.
double binary_entropy(double p);

// The unique p in (0, 1/2] with H(p) = alpha, to absolute tolerance 1e-12.
double entropy_inverse(double alpha);

// alpha / H^-1(alpha), the embedding-efficiency cap at rate alpha.
double efficiency_bound(double alpha);

struct DistortionProfile {
    // counts[i-1][j] = V_i(j); row i has weight_schedule[i-1] + 1 entries.
    std::vector<std::vector<double>> counts;
    std::vector<double> expected_list_sizes; // sum_j V_i(j) per step
    std::vector<int> weight_schedule;        // w_i per step
    int r_alg = -1;                          // smallest j with V_v(j) >= 1; -1 if none

    double ball(int step, int j) const; // |B_step(j)| = sum_{s<=j} V_step(s)
};

DistortionProfile distortion_profile(const StGenParams &params, const DecoderConfig &cfg);

// Step-by-step numeric audit of the expected list sizes (round weight limit
// must be 2):
//  - the one-step ball recurrences reproduce the directly summed ball sizes;
//  - the shrink conditions predict whether each ball shrinks at constant cap;
//  - every constant-cap run reaches a strict list-size decrease, and how fast;
//  - the growth threshold for cap increments, and whether every increment grew
//    the expected list.
struct ListDynamicsReport {
    double recurrence_max_rel_err = 0.0;
    bool recurrence_consistent = false; // max relative error <= 1e-12

    int shrink_checks = 0;      // evaluated shrink-condition instances
    int shrink_mismatches = 0;  // observed direction disagreed with the condition
    int shrink_boundary = 0;    // too close to equality to call (skipped)

    int max_steps_to_decrease = -1; // slowest constant-cap run, steps until |L| drops
    bool every_run_decreased = false;

    double growth_threshold = 0.0;   // (2^n2 - k2 - n2 - 1) / C(k2+n2, 2)
    bool growth_always_expected = false; // threshold <= 0
    int growth_checks = 0;
    int growth_mismatches = 0;
    bool every_increment_grew = false;

    int steps = 0;
};

ListDynamicsReport list_dynamics_report(const StGenParams &params, const DecoderConfig &cfg);

} // namespace stgen
