#include "stgen/framing.hpp"

namespace stgen {

namespace {

constexpr std::size_t kPrefixBits = 32;

inline bool stream_bit(std::span<const std::uint8_t> bytes, std::size_t i) {
    return (bytes[i >> 3] >> (7 - (i & 7))) & 1u;
}

inline void set_stream_bit(std::span<std::uint8_t> bytes, std::size_t i, bool v) {
    const std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - (i & 7)));
    if (v)
        bytes[i >> 3] |= mask;
    else
        bytes[i >> 3] &= static_cast<std::uint8_t>(~mask);
}

BitVector read_block(std::span<const std::uint8_t> bytes, std::size_t begin, std::size_t count) {
    BitVector v(count);
    for (std::size_t i = 0; i < count; ++i)
        v.set(i, stream_bit(bytes, begin + i));
    return v;
}

void write_block(std::span<std::uint8_t> bytes, std::size_t begin, const BitVector &v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        set_stream_bit(bytes, begin + i, v.get(i));
}

} // namespace

std::size_t cover_capacity_bytes(const StegoContext &ctx, std::size_t cover_bytes) {
    const std::size_t blocks = cover_bytes * 8 / ctx.cover_bits();
    const std::size_t payload_bits = blocks * ctx.message_bits();
    if (payload_bits <= kPrefixBits)
        return 0;
    return (payload_bits - kPrefixBits) / 8;
}

std::vector<std::uint8_t> embed_message(const StegoContext &ctx,
                                        std::span<const std::uint8_t> cover,
                                        std::span<const std::uint8_t> message,
                                        EmbedStats *stats) {
    const std::size_t n = ctx.cover_bits();
    const std::size_t mk = ctx.message_bits();
    const std::size_t blocks = cover.size() * 8 / n;
    const std::size_t capacity = cover_capacity_bytes(ctx, cover.size());
    if (message.size() > capacity)
        throw capacity_error("message of " + std::to_string(message.size()) +
                                 " bytes exceeds cover capacity of " + std::to_string(capacity) +
                                 " bytes (" + std::to_string(blocks) + " blocks)",
                             capacity);

    const std::size_t msg_bits = message.size() * 8;
    const std::size_t payload_bits = kPrefixBits + msg_bits;
    if (payload_bits > blocks * mk)
        throw capacity_error("cover of " + std::to_string(blocks) +
                                 " blocks cannot hold the framing prefix",
                             capacity);
    const std::size_t used = (payload_bits + mk - 1) / mk;

    // Payload stream: 32-bit big-endian bit count, then the message bytes.
    std::vector<std::uint8_t> payload;
    payload.reserve(4 + message.size());
    payload.push_back(static_cast<std::uint8_t>(msg_bits >> 24));
    payload.push_back(static_cast<std::uint8_t>(msg_bits >> 16));
    payload.push_back(static_cast<std::uint8_t>(msg_bits >> 8));
    payload.push_back(static_cast<std::uint8_t>(msg_bits));
    payload.insert(payload.end(), message.begin(), message.end());

    std::vector<std::uint8_t> out(cover.begin(), cover.end());
    EmbedStats st;
    st.blocks_total = blocks;
    st.blocks_used = used;
    for (std::size_t b = 0; b < used; ++b) {
        const BitVector y = read_block(cover, b * n, n);
        BitVector chunk(mk);
        for (std::size_t i = 0; i < mk; ++i) {
            const std::size_t pos = b * mk + i;
            if (pos < payload_bits)
                chunk.set(i, stream_bit(payload, pos));
        }
        const EmbedResult res = emb(ctx, y, chunk);
        write_block(out, b * n, res.stego);
        st.total_changes += res.changes;
    }
    if (used > 0)
        st.mean_changes_per_used_block = static_cast<double>(st.total_changes) / used;
    if (stats)
        *stats = st;
    return out;
}

std::vector<std::uint8_t> extract_message(const StegoContext &ctx,
                                          std::span<const std::uint8_t> stego) {
    const std::size_t n = ctx.cover_bits();
    const std::size_t mk = ctx.message_bits();
    const std::size_t blocks = stego.size() * 8 / n;
    if (blocks == 0)
        throw integrity_error("stego data shorter than one code block");

    std::size_t next_block = 0;
    std::vector<std::uint8_t> payload;
    std::size_t payload_bits = 0;
    auto ensure_bits = [&](std::size_t want) {
        while (payload_bits < want) {
            if (next_block >= blocks)
                throw integrity_error("framing truncated: payload claims more bits than the "
                                      "stego data holds");
            const BitVector m = ext(ctx, read_block(stego, next_block * n, n));
            ++next_block;
            for (std::size_t i = 0; i < mk; ++i) {
                if (payload_bits % 8 == 0)
                    payload.push_back(0);
                set_stream_bit(payload, payload_bits, m.get(i));
                ++payload_bits;
            }
        }
    };

    ensure_bits(kPrefixBits);
    std::uint32_t msg_bits = 0;
    for (std::size_t i = 0; i < 4; ++i)
        msg_bits = (msg_bits << 8) | payload[i];
    if (msg_bits % 8 != 0)
        throw integrity_error("framing corrupt: message bit count is not a whole number of bytes");
    if (msg_bits > blocks * mk - kPrefixBits)
        throw integrity_error("framing corrupt: message bit count exceeds stego capacity");

    ensure_bits(kPrefixBits + msg_bits);
    std::vector<std::uint8_t> message(msg_bits / 8, 0);
    for (std::size_t i = 0; i < msg_bits; ++i)
        set_stream_bit(message, i, stream_bit(payload, kPrefixBits + i));
    return message;
}

} // namespace stgen
