// Beam-style list decoding over the staircase blocks.
//
// The decoder walks the blocks left to right keeping a bounded list of
// partial solutions (x_i, e_i) that satisfy x_i * G_i = e_i + b_i, where
// b_i is the restriction of the input word c_0 to the first K_i message
// coordinates and the first N_i parity coordinates.  Each extension adds
// k_i message bits and at most `round_weight` new error bits; the running
// weight cap grows by one whenever the list falls under `list_cap`.
//
// Every entry caches its full parity contribution x_i * P (the feedback
// into all later columns), updated incrementally as bits are appended, so
// a round costs O(list_cap * k / 64) word operations.

#pragma once

#include <stdexcept>
#include <vector>

#include "stgen/stgen_code.hpp"

namespace stgen {

struct DecoderConfig {
    int start_weight = 2; // w_1, cap on wt(e_1)
    int round_weight = 2; // w_b, cap on new error bits per block
    int list_cap = 256;   // L, entries kept per step
    int retry_limit = 3;  // weight escalations allowed on a dead-end step

    void validate() const {
        if (start_weight < 0 || round_weight < 1 || list_cap < 1 || retry_limit < 0)
            throw std::invalid_argument("DecoderConfig: need start_weight >= 0, "
                                        "round_weight >= 1, list_cap >= 1, retry_limit >= 0");
    }
};

struct ListEntry {
    BitVector x;          // chosen message prefix, K_i bits
    BitVector e;          // accumulated error, K_i + N_i bits (message part, then parity part)
    int weight = 0;       // wt(e)
    BitVector parity_acc; // x * P over all n-k staircase columns (feedback cache)
};

struct DecodeResult {
    BitVector x; // k bits
    BitVector e; // n bits, x*G = e + c_0
    int weight = 0;
    int final_weight_limit = 0;  // cap in effect at the last step
    std::vector<int> list_trace; // list size after each step's prune
};

class decode_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// All entries with wt(e_1) <= cfg.start_weight, pruned to cfg.list_cap
// lowest-weight entries (ties: lexicographically smallest x).
std::vector<ListEntry> step_init(const StGenCode &code, const BitVector &c0,
                                 const DecoderConfig &cfg);

// Extend every entry by block `block` (2 <= block <= v) under cumulative
// weight cap `weight_limit`; result pruned like step_init.  An empty result
// is returned to the caller, whose retry policy decides what to do.
std::vector<ListEntry> step_extend(const StGenCode &code, int block,
                                   const std::vector<ListEntry> &entries, const BitVector &c0,
                                   int weight_limit, const DecoderConfig &cfg);

inline int weight_schedule_update(int w, std::size_t list_size, const DecoderConfig &cfg) {
    return list_size < static_cast<std::size_t>(cfg.list_cap) ? w + 1 : w;
}

// Full decode: returns the minimal-weight final entry, with
// x * G xor e == c_0 re-verified before returning.
DecodeResult decode_close(const StGenCode &code, const BitVector &c0, const DecoderConfig &cfg);

} // namespace stgen
