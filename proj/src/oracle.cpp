#include "stgen/oracle.hpp"

#include <bit>
#include <cstdint>
#include <numeric>

namespace stgen {

namespace {

void check_dimension(const BitMatrix &g, const OracleBudget &budget) {
    if (static_cast<int>(g.rows()) > budget.max_dimension)
        throw std::invalid_argument("oracle: k = " + std::to_string(g.rows()) +
                                    " exceeds enumeration budget max_dimension = " +
                                    std::to_string(budget.max_dimension));
}

// Distances from every word of F_2^n to the code, by breadth-first search
// from all codewords over single-bit flips.
std::vector<std::uint8_t> distance_table(const BitMatrix &g, const OracleBudget &budget) {
    check_dimension(g, budget);
    const std::size_t n = g.cols(), k = g.rows();
    if (static_cast<int>(n) > budget.max_length)
        throw std::invalid_argument("oracle: n = " + std::to_string(n) +
                                    " exceeds enumeration budget max_length = " +
                                    std::to_string(budget.max_length));
    if (n > 63)
        throw std::invalid_argument("oracle: word enumeration limited to n <= 63");

    std::vector<std::uint64_t> rows(k);
    for (std::size_t r = 0; r < k; ++r)
        rows[r] = g.row_words(r).empty() ? 0 : g.row_words(r)[0];

    const std::size_t space = std::size_t{1} << n;
    std::vector<std::uint8_t> dist(space, 0xff);
    std::vector<std::uint32_t> frontier, next;

    // Gray-code walk over messages; one row xor per codeword.
    std::uint64_t cw = 0;
    dist[0] = 0;
    frontier.push_back(0);
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << k); ++t) {
        cw ^= rows[std::countr_zero(t)];
        if (dist[cw] != 0) {
            dist[cw] = 0;
            frontier.push_back(static_cast<std::uint32_t>(cw));
        }
    }

    for (std::uint8_t d = 0; !frontier.empty(); ++d) {
        next.clear();
        for (std::uint32_t w : frontier) {
            for (std::size_t b = 0; b < n; ++b) {
                const std::uint32_t u = w ^ (std::uint32_t{1} << b);
                if (dist[u] == 0xff) {
                    dist[u] = static_cast<std::uint8_t>(d + 1);
                    next.push_back(u);
                }
            }
        }
        frontier.swap(next);
    }
    return dist;
}

// Bit-reversed value of the low `width` bits; numeric order of the result is
// the coordinate-0-first lexicographic order of the message.
std::uint32_t lex_key(std::uint32_t x, std::size_t width) {
    std::uint32_t r = 0;
    for (std::size_t b = 0; b < width; ++b)
        if (x & (std::uint32_t{1} << b))
            r |= std::uint32_t{1} << (width - 1 - b);
    return r;
}

} // namespace

NearestCodeword nearest_codeword(const BitMatrix &g, const BitVector &word, OracleBudget budget) {
    check_dimension(g, budget);
    if (word.size() != g.cols())
        throw std::invalid_argument("nearest_codeword: word length != code length");
    const std::size_t k = g.rows();

    BitVector cw(g.cols());
    std::size_t best_dist = hamming_distance(cw, word);
    std::uint32_t best_x = 0;
    BitVector best_cw = cw;

    auto acc = cw.words();
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << k); ++t) {
        const int flip = std::countr_zero(t);
        auto row = g.row_words(static_cast<std::size_t>(flip));
        for (std::size_t i = 0; i < row.size(); ++i)
            acc[i] ^= row[i];
        const std::uint32_t x = static_cast<std::uint32_t>(t ^ (t >> 1));
        const std::size_t d = hamming_distance(cw, word);
        if (d < best_dist ||
            (d == best_dist && lex_key(x, k) < lex_key(best_x, k))) {
            best_dist = d;
            best_x = x;
            best_cw = cw;
        }
    }

    NearestCodeword out;
    out.message = BitVector(k);
    for (std::size_t b = 0; b < k; ++b)
        out.message.set(b, (best_x >> b) & 1u);
    out.codeword = std::move(best_cw);
    out.distance = best_dist;
    return out;
}

std::size_t covering_radius(const BitMatrix &g, OracleBudget budget) {
    const auto dist = distance_table(g, budget);
    std::uint8_t r = 0;
    for (auto d : dist)
        r = std::max(r, d);
    return r;
}

double average_distance(const BitMatrix &g, OracleBudget budget) {
    const auto dist = distance_table(g, budget);
    std::uint64_t total = 0;
    for (auto d : dist)
        total += d;
    // dist.size() is a power of two, so the quotient is exact in a double.
    return static_cast<double>(total) / static_cast<double>(dist.size());
}

} // namespace stgen
