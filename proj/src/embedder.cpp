#include "stgen/embedder.hpp"

namespace stgen {

EmbedResult emb(const StegoContext &ctx, const BitVector &cover, const BitVector &message) {
    const StGenCode &code = ctx.code;
    if (static_cast<int>(cover.size()) != code.n())
        throw std::invalid_argument("emb: cover length " + std::to_string(cover.size()) +
                                    " != n = " + std::to_string(code.n()));
    if (static_cast<int>(message.size()) != ctx.message_bits())
        throw std::invalid_argument("emb: message length " + std::to_string(message.size()) +
                                    " != n-k = " + std::to_string(ctx.message_bits()));

    const BitVector z = code.syndrome(cover) ^ message;

    // Coset representative with syndrome z: zeros on the message coordinates,
    // z on the parity coordinates.
    BitVector c0(code.n());
    for (int b = 0; b < ctx.message_bits(); b += 64) {
        const int chunk = std::min(64, ctx.message_bits() - b);
        c0.set_slice_bits(code.k() + b, chunk, z.slice_bits(b, chunk));
    }
    if (code.syndrome(c0) != z)
        throw std::logic_error("emb: coset representative has the wrong syndrome");

    const DecodeResult dec = decode_close(code, c0, ctx.decoder);

    EmbedResult out;
    out.stego = cover ^ dec.e;
    out.changes = dec.weight;
    return out;
}

BitVector ext(const StegoContext &ctx, const BitVector &stego) {
    if (static_cast<int>(stego.size()) != ctx.code.n())
        throw std::invalid_argument("ext: stego length " + std::to_string(stego.size()) +
                                    " != n = " + std::to_string(ctx.code.n()));
    return ctx.code.syndrome(stego);
}

RateEfficiency rate_and_efficiency(const StegoContext &ctx, double measured_ra) {
    if (!(measured_ra > 0.0))
        throw std::invalid_argument("rate_and_efficiency: average distortion must be positive");
    const double mk = ctx.message_bits();
    return {mk / ctx.code.n(), mk / measured_ra};
}

} // namespace stgen
