#include "stgen/bitvec.hpp"

#include <bit>
#include <limits>

namespace stgen {

namespace {

void check_same_length(std::size_t a, std::size_t b, const char *what) {
    if (a != b)
        throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
}

} // namespace

BitVector BitVector::from_bits(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("BitVector::from_bits: expected '0' or '1'");
    }
    return v;
}

BitVector BitVector::random(std::size_t length, std::mt19937_64 &rng) {
    BitVector v(length);
    for (auto &w : v.words_)
        w = rng();
    if (length % 64)
        v.words_.back() &= (std::uint64_t{1} << (length % 64)) - 1;
    return v;
}

std::size_t BitVector::weight() const {
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::uint64_t BitVector::slice_bits(std::size_t begin, std::size_t count) const {
    if (count > 64)
        throw std::invalid_argument("BitVector::slice_bits: count > 64");
    if (begin + count > len_)
        throw std::out_of_range("BitVector::slice_bits: range out of bounds");
    if (count == 0)
        return 0;
    const std::size_t w = begin >> 6, off = begin & 63;
    std::uint64_t bits = words_[w] >> off;
    if (off + count > 64)
        bits |= words_[w + 1] << (64 - off);
    if (count < 64)
        bits &= (std::uint64_t{1} << count) - 1;
    return bits;
}

void BitVector::set_slice_bits(std::size_t begin, std::size_t count, std::uint64_t bits) {
    if (count > 64)
        throw std::invalid_argument("BitVector::set_slice_bits: count > 64");
    if (begin + count > len_)
        throw std::out_of_range("BitVector::set_slice_bits: range out of bounds");
    if (count == 0)
        return;
    if (count < 64)
        bits &= (std::uint64_t{1} << count) - 1;
    const std::size_t w = begin >> 6, off = begin & 63;
    const std::uint64_t lo_mask = (count < 64 ? (std::uint64_t{1} << count) - 1 : ~std::uint64_t{0}) << off;
    words_[w] = (words_[w] & ~lo_mask) | (bits << off);
    if (off + count > 64) {
        const std::size_t hi_bits = off + count - 64;
        const std::uint64_t hi_mask = (std::uint64_t{1} << hi_bits) - 1;
        words_[w + 1] = (words_[w + 1] & ~hi_mask) | (bits >> (64 - off));
    }
}

BitVector BitVector::slice(std::size_t begin, std::size_t count) const {
    if (begin + count > len_)
        throw std::out_of_range("BitVector::slice: range out of bounds");
    BitVector out(count);
    std::size_t done = 0;
    while (done < count) {
        const std::size_t chunk = std::min<std::size_t>(64, count - done);
        out.set_slice_bits(done, chunk, slice_bits(begin + done, chunk));
        done += chunk;
    }
    return out;
}

BitVector BitVector::concat(const BitVector &other) const {
    BitVector out(len_ + other.len_);
    std::size_t done = 0;
    while (done < len_) {
        const std::size_t chunk = std::min<std::size_t>(64, len_ - done);
        out.set_slice_bits(done, chunk, slice_bits(done, chunk));
        done += chunk;
    }
    done = 0;
    while (done < other.len_) {
        const std::size_t chunk = std::min<std::size_t>(64, other.len_ - done);
        out.set_slice_bits(len_ + done, chunk, other.slice_bits(done, chunk));
        done += chunk;
    }
    return out;
}

BitVector &BitVector::operator^=(const BitVector &other) {
    check_same_length(len_, other.len_, "BitVector xor");
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= other.words_[i];
    return *this;
}

bool BitVector::lex_less(const BitVector &a, const BitVector &b) {
    const std::size_t words = std::min(a.words_.size(), b.words_.size());
    for (std::size_t i = 0; i < words; ++i) {
        const std::uint64_t diff = a.words_[i] ^ b.words_[i];
        if (diff) {
            // First differing coordinate decides; its holder of a 0 is smaller.
            const int bit = std::countr_zero(diff);
            return ((a.words_[i] >> bit) & 1u) == 0;
        }
    }
    return a.len_ < b.len_;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i))
            s[i] = '1';
    return s;
}

std::size_t hamming_distance(const BitVector &a, const BitVector &b) {
    check_same_length(a.size(), b.size(), "hamming_distance");
    std::size_t n = 0;
    auto aw = a.words(), bw = b.words();
    for (std::size_t i = 0; i < aw.size(); ++i)
        n += static_cast<std::size_t>(std::popcount(aw[i] ^ bw[i]));
    return n;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64) {
    if (wpr_ != 0 && rows_ > std::numeric_limits<std::size_t>::max() / wpr_)
        throw std::length_error("BitMatrix: dimensions overflow the addressable size");
    words_.assign(rows_ * wpr_, 0);
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string> &rows) {
    if (rows.empty())
        return {};
    BitMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_)
            throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < m.cols_; ++c) {
            if (rows[r][c] == '1')
                m.set(r, c, true);
            else if (rows[r][c] != '0')
                throw std::invalid_argument("BitMatrix::from_rows: expected '0' or '1'");
        }
    }
    return m;
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        BitVector v = BitVector::random(cols, rng);
        auto src = v.words();
        for (std::size_t i = 0; i < m.wpr_; ++i)
            m.words_[r * m.wpr_ + i] = src[i];
    }
    return m;
}

BitVector BitMatrix::row(std::size_t r) const {
    if (r >= rows_)
        throw std::out_of_range("BitMatrix: row out of range");
    BitVector v(cols_);
    auto dst = v.words();
    for (std::size_t i = 0; i < wpr_; ++i)
        dst[i] = words_[r * wpr_ + i];
    return v;
}

void BitMatrix::paste(std::size_t r0, std::size_t c0, const BitMatrix &src) {
    if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_)
        throw std::out_of_range("BitMatrix::paste: block does not fit");
    for (std::size_t r = 0; r < src.rows_; ++r)
        for (std::size_t c = 0; c < src.cols_; ++c)
            set(r0 + r, c0 + c, src.get(r, c));
}

BitMatrix BitMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t rows,
                               std::size_t cols) const {
    if (r0 + rows > rows_ || c0 + cols > cols_)
        throw std::out_of_range("BitMatrix::submatrix: range out of bounds");
    BitMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out.set(r, c, get(r0 + r, c0 + c));
    return out;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c))
                out.set(c, r, true);
    return out;
}

BitMatrix BitMatrix::concat_cols(const BitMatrix &right) const {
    if (rows_ != right.rows_)
        throw std::invalid_argument("BitMatrix::concat_cols: row count mismatch");
    BitMatrix out(rows_, cols_ + right.cols_);
    out.paste(0, 0, *this);
    out.paste(0, cols_, right);
    return out;
}

bool BitMatrix::is_zero() const {
    for (auto w : words_)
        if (w)
            return false;
    return true;
}

BitVector operator*(const BitVector &x, const BitMatrix &m) {
    if (x.size() != m.rows())
        throw std::invalid_argument("vec*mat: vector length " + std::to_string(x.size()) +
                                    " != matrix rows " + std::to_string(m.rows()));
    BitVector out(m.cols());
    auto acc = out.words();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (!x.get(r))
            continue;
        auto row = m.row_words(r);
        for (std::size_t i = 0; i < row.size(); ++i)
            acc[i] ^= row[i];
    }
    return out;
}

BitMatrix multiply_transposed(const BitMatrix &a, const BitMatrix &b) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("multiply_transposed: inner dimension mismatch");
    BitMatrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ar = a.row_words(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            auto br = b.row_words(j);
            std::uint64_t acc = 0;
            for (std::size_t w = 0; w < ar.size(); ++w)
                acc ^= ar[w] & br[w];
            if (std::popcount(acc) & 1)
                out.set(i, j, true);
        }
    }
    return out;
}

} // namespace stgen
