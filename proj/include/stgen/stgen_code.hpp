// Staircase-generator codes.
//
// The generator matrix is [I_k | P] where P is block upper-triangular:
// column group i (width n_i) holds the random block B'_i in its first
// K_{i-1} rows, the diagonal block B_i in the next k_i rows, and zeros
// below.  Block 1 has free dimensions (k_1, n_1); blocks 2..v repeat the
// dimensions of a fixed base code of covering radius 1.
//
// B_1 and every B'_i are drawn from a seeded deterministic bit stream.
// The serialized descriptor stores all drawn blocks explicitly, so two
// parties sharing a descriptor agree on H bit-for-bit regardless of the
// generator behind the seed.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stgen/base_codes.hpp"
#include "stgen/bitvec.hpp"

namespace stgen {

struct StGenParams {
    int k1 = 0, n1 = 0;   // first block
    int k2 = 0, n2 = 0;   // repeated blocks (must match `base`)
    int blocks = 0;       // v, total number of diagonal blocks
    BaseCode base;        // code for blocks >= 2 (ignored when blocks == 1)
    std::uint64_t seed = 0;

    int dimension() const { return k1 + (blocks - 1) * k2; } // k
    int length() const { return dimension() + n1 + (blocks - 1) * n2; } // n

    // Throws std::invalid_argument when the block dimensions are inconsistent.
    void validate() const;
};

class StGenCode {
public:
    // Draw B_1 and the B'_i from the params seed.
    static StGenCode build(StGenParams params);
    // Assemble from explicit blocks; bprimes[i] is B'_{i+2} (K_{i+1} x n_{i+2}).
    static StGenCode assemble(StGenParams params, BitMatrix b1, std::vector<BitMatrix> bprimes);

    const StGenParams &params() const { return params_; }
    int n() const { return params_.length(); }
    int k() const { return params_.dimension(); }
    int blocks() const { return params_.blocks; }

    int block_k(int i) const { return i == 1 ? params_.k1 : params_.k2; }
    int block_n(int i) const { return i == 1 ? params_.n1 : params_.n2; }
    // Cumulative dimensions; K(0) = N(0) = 0, K(v) = k, N(v) = n - k.
    int K(int i) const { return kcum_.at(i); }
    int N(int i) const { return ncum_.at(i); }

    const BitMatrix &b1() const { return b1_; }
    const BitMatrix &block_b(int i) const; // B_i, 1 <= i <= v
    const BitMatrix &bprime(int i) const;  // B'_i, 2 <= i <= v

    // The assembled k x (n-k) staircase P.
    const BitMatrix &staircase() const { return p_; }

    BitMatrix generator_matrix() const;    // [I_k | P]
    BitMatrix parity_check_matrix() const; // [P^T | I_{n-k}]

    // x * G via the staircase rows; never forms the dense generator.
    BitVector encode(const BitVector &x) const;

    // y * H^T for an n-bit word: first-k-bits * P xor last-(n-k)-bits.
    BitVector syndrome(const BitVector &word) const;

    // G_i = [I_{K_i} | P[0..K_i) x [0..N_i)], the level-i prefix code.
    BitMatrix g_prefix(int i) const;

    std::string to_descriptor_json() const;
    static StGenCode from_descriptor_json(std::string_view text);

private:
    StGenCode() = default;
    void assemble_staircase();

    StGenParams params_;
    BitMatrix b1_;
    std::vector<BitMatrix> bprimes_; // index i-2 holds B'_i
    BitMatrix p_;
    std::vector<int> kcum_, ncum_;
};

// Table of practical parameter sets: six (n_1,k_1,n_2,k_2,base) rows with
// published code sizes near n = 1000 and n = 1500.
struct PresetRow {
    int n1, k1, n2, k2;
    const char *base_id;
    int target_n_1000; // published n of the ~1000-bit code
    int target_n_1500; // published n of the ~1500-bit code
};
std::span<const PresetRow> preset_rows();

// Parameters for preset row 1..6 with the block count chosen so that the code
// length is as close as possible to target_n (ties resolved toward the
// shorter code).  Not every published (n,k) is reachable with integer block
// counts; the nearest achievable length is used.
StGenParams preset_params(int row, int target_n, std::uint64_t seed);

} // namespace stgen
