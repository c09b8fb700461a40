// Matrix embedding on one n-bit cover block.
//
// A message of n-k bits is carried as the syndrome of the stego word:
// embed solves for a low-weight change pattern whose syndrome moves the
// cover onto the message, extract just multiplies by H^T.

#pragma once

#include "stgen/list_decoder.hpp"
#include "stgen/stgen_code.hpp"

namespace stgen {

struct StegoContext {
    StGenCode code;
    DecoderConfig decoder;

    StegoContext(StGenCode c, DecoderConfig d = {}) : code(std::move(c)), decoder(d) {
        decoder.validate();
        if (code.n() == code.k())
            throw std::invalid_argument("StegoContext: code carries no message bits (n == k)");
    }

    int cover_bits() const { return code.n(); }
    int message_bits() const { return code.n() - code.k(); }
};

struct EmbedResult {
    BitVector stego; // n bits, syndrome equals the message
    int changes = 0; // d(cover, stego)
};

// cover must be n bits, message n-k bits.
EmbedResult emb(const StegoContext &ctx, const BitVector &cover, const BitVector &message);

// stego must be n bits; returns the n-k message bits.
BitVector ext(const StegoContext &ctx, const BitVector &stego);

struct RateEfficiency {
    double alpha = 0.0; // (n-k)/n
    double e_a = 0.0;   // (n-k)/measured average distortion
};

// measured_ra must be positive.
RateEfficiency rate_and_efficiency(const StegoContext &ctx, double measured_ra);

} // namespace stgen
