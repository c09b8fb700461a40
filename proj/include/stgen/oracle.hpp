// Exhaustive ground truth on small codes: nearest codeword, covering radius,
// average distance.  Everything here enumerates the full space inside hard
// budgets -- these routines verify the fast paths and are never approximate.

#pragma once

#include "stgen/bitvec.hpp"

namespace stgen {

struct OracleBudget {
    int max_dimension = 20; // cap on 2^k codeword enumeration
    int max_length = 24;    // cap on 2^n word enumeration
};

struct NearestCodeword {
    BitVector message;  // x achieving the minimum, lexicographically smallest on ties
    BitVector codeword; // x * G
    std::size_t distance = 0;
};

// Minimum over all 2^k codewords of d(word, xG).
NearestCodeword nearest_codeword(const BitMatrix &g, const BitVector &word,
                                 OracleBudget budget = {});

// max over all 2^n words of the distance to the code.
std::size_t covering_radius(const BitMatrix &g, OracleBudget budget = {});

// 2^-n * sum over all words of the distance to the code (exact).
double average_distance(const BitMatrix &g, OracleBudget budget = {});

} // namespace stgen
