// Byte-stream framing for covers larger than one code block.
//
// A cover file is processed as consecutive n-bit blocks (bits taken MSB-first
// within each byte); each block carries n-k payload bits.  The payload is a
// 32-bit big-endian message bit count followed by the message bytes, again
// MSB-first.  Only the blocks needed for the payload are embedded; later
// blocks and the trailing partial block pass through untouched.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stgen/embedder.hpp"

namespace stgen {

class capacity_error : public std::runtime_error {
public:
    capacity_error(const std::string &msg, std::size_t max_bytes)
        : std::runtime_error(msg), max_message_bytes(max_bytes) {}
    std::size_t max_message_bytes;
};

class integrity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EmbedStats {
    std::size_t blocks_total = 0;
    std::size_t blocks_used = 0;
    std::size_t total_changes = 0;
    double mean_changes_per_used_block = 0.0;
};

// Largest message (whole bytes) that fits in this cover.
std::size_t cover_capacity_bytes(const StegoContext &ctx, std::size_t cover_bytes);

// Returns the stego bytes (same size as the cover).  Throws capacity_error if
// the message does not fit.
std::vector<std::uint8_t> embed_message(const StegoContext &ctx,
                                        std::span<const std::uint8_t> cover,
                                        std::span<const std::uint8_t> message,
                                        EmbedStats *stats = nullptr);

// Recovers the message bytes; throws integrity_error on malformed framing.
std::vector<std::uint8_t> extract_message(const StegoContext &ctx,
                                          std::span<const std::uint8_t> stego);

} // namespace stgen
