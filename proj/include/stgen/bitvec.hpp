// Dense bit-packed vectors and matrices over GF(2).
//
// Bit i of a vector lives at word i/64, position i%64.  Bits past the
// declared length are kept zero, so whole-word comparison and popcount
// are valid.  Dimension mismatches throw; nothing is silently truncated.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stgen {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t length)
        : len_(length), words_((length + 63) / 64, 0) {}

    // Parse "1011"-style text, first character = coordinate 0.
    static BitVector from_bits(std::string_view bits);
    static BitVector random(std::size_t length, std::mt19937_64 &rng);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool value) {
        check_index(i);
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    std::size_t weight() const;

    // Up to 64 bits starting at `begin`, coordinate `begin` in bit 0.
    std::uint64_t slice_bits(std::size_t begin, std::size_t count) const;
    void set_slice_bits(std::size_t begin, std::size_t count, std::uint64_t bits);
    BitVector slice(std::size_t begin, std::size_t count) const;
    // [this | other]
    BitVector concat(const BitVector &other) const;

    BitVector &operator^=(const BitVector &other);
    friend BitVector operator^(BitVector a, const BitVector &b) {
        a ^= b;
        return a;
    }
    friend bool operator==(const BitVector &a, const BitVector &b) {
        return a.len_ == b.len_ && a.words_ == b.words_;
    }

    // Coordinate-0-first lexicographic order (0 sorts before 1).
    static bool lex_less(const BitVector &a, const BitVector &b);

    std::string to_string() const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

private:
    void check_index(std::size_t i) const {
        if (i >= len_)
            throw std::out_of_range("BitVector: index " + std::to_string(i) +
                                    " out of range (length " + std::to_string(len_) + ")");
    }

    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

std::size_t hamming_distance(const BitVector &a, const BitVector &b);

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    // Rows as "101"-style strings, all of equal length.
    static BitMatrix from_rows(const std::vector<std::string> &rows);
    static BitMatrix random(std::size_t rows, std::size_t cols, std::mt19937_64 &rng);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        check_rc(r, c);
        return (words_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool value) {
        check_rc(r, c);
        const std::uint64_t mask = std::uint64_t{1} << (c & 63);
        if (value)
            words_[r * wpr_ + (c >> 6)] |= mask;
        else
            words_[r * wpr_ + (c >> 6)] &= ~mask;
    }

    BitVector row(std::size_t r) const;
    std::span<const std::uint64_t> row_words(std::size_t r) const {
        if (r >= rows_)
            throw std::out_of_range("BitMatrix: row out of range");
        return {words_.data() + r * wpr_, wpr_};
    }

    // Copy `src` into this matrix with its top-left corner at (r0, c0).
    void paste(std::size_t r0, std::size_t c0, const BitMatrix &src);
    BitMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
    BitMatrix transposed() const;
    // [this | right]
    BitMatrix concat_cols(const BitMatrix &right) const;

    bool is_zero() const;

    friend bool operator==(const BitMatrix &a, const BitMatrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.words_ == b.words_;
    }

private:
    void check_rc(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_)
            throw std::out_of_range("BitMatrix: index (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") out of range (" +
                                    std::to_string(rows_) + "x" + std::to_string(cols_) + ")");
    }

    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> words_;
};

// x * M over GF(2); x.size() must equal M.rows().
BitVector operator*(const BitVector &x, const BitMatrix &m);

// a * b^T; a.cols() must equal b.cols().  Used for checks like G * H^T = 0.
BitMatrix multiply_transposed(const BitMatrix &a, const BitMatrix &b);

} // namespace stgen
