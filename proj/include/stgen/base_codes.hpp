// Small (n,k) codes of covering radius 1 used for the repeated staircase
// blocks.  Each entry carries the B from the systematic generator [I_k | B];
// the declared radius of every catalog entry is verified exhaustively in the
// test suite.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stgen/bitvec.hpp"

namespace stgen {

struct BaseCode {
    std::string id;   // "(n,k)R" form, e.g. "(2,1)1"
    int n = 0;
    int k = 0;
    int radius = 0;
    BitMatrix b;      // k x (n-k)

    BitMatrix generator() const { return BitMatrix::identity(k).concat_cols(b); }
};

const std::vector<BaseCode> &base_catalog();

// Throws std::invalid_argument for ids not in the catalog.
const BaseCode &find_base_code(std::string_view id);

} // namespace stgen
