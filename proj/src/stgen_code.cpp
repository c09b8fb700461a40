#include "stgen/stgen_code.hpp"

#include <cstdlib>

#include <json.hpp>

namespace stgen {

namespace {

// Deterministic bit source; low bit of each PRNG word first.
class BitStream {
public:
    explicit BitStream(std::uint64_t seed) : gen_(seed) {}
    bool next() {
        if (left_ == 0) {
            buf_ = gen_();
            left_ = 64;
        }
        const bool b = buf_ & 1u;
        buf_ >>= 1;
        --left_;
        return b;
    }
    BitMatrix draw_matrix(std::size_t rows, std::size_t cols) {
        BitMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                m.set(r, c, next());
        return m;
    }

private:
    std::mt19937_64 gen_;
    std::uint64_t buf_ = 0;
    int left_ = 0;
};

// Row bits -> hex, bit 0 in the most significant position of the first nibble.
std::string row_to_hex(const BitMatrix &m, std::size_t r) {
    static const char digits[] = "0123456789abcdef";
    const std::size_t nibbles = (m.cols() + 3) / 4;
    std::string out(nibbles, '0');
    for (std::size_t i = 0; i < nibbles; ++i) {
        int val = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t c = 4 * i + b;
            if (c < m.cols() && m.get(r, c))
                val |= 8 >> b;
        }
        out[i] = digits[val];
    }
    return out;
}

void hex_to_row(BitMatrix &m, std::size_t r, const std::string &hex) {
    const std::size_t nibbles = (m.cols() + 3) / 4;
    if (hex.size() != nibbles)
        throw std::invalid_argument("descriptor: row \"" + hex + "\" has wrong length for " +
                                    std::to_string(m.cols()) + " columns");
    for (std::size_t i = 0; i < nibbles; ++i) {
        const char ch = hex[i];
        int val;
        if (ch >= '0' && ch <= '9')
            val = ch - '0';
        else if (ch >= 'a' && ch <= 'f')
            val = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F')
            val = ch - 'A' + 10;
        else
            throw std::invalid_argument("descriptor: bad hex digit in row");
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t c = 4 * i + b;
            const bool bit = (val >> (3 - b)) & 1;
            if (c < m.cols())
                m.set(r, c, bit);
            else if (bit)
                throw std::invalid_argument("descriptor: nonzero padding bits in row");
        }
    }
}

} // namespace

void StGenParams::validate() const {
    if (blocks < 1)
        throw std::invalid_argument("StGenParams: need at least one block");
    if (k1 < 1 || n1 < 1)
        throw std::invalid_argument("StGenParams: first-block dimensions must be >= 1");
    if (blocks > 1) {
        if (k2 < 1 || n2 < 1)
            throw std::invalid_argument("StGenParams: repeated-block dimensions must be >= 1");
        if (base.k != k2 || base.n - base.k != n2)
            throw std::invalid_argument(
                "StGenParams: base code " + base.id + " does not match (k2,n2)=(" +
                std::to_string(k2) + "," + std::to_string(n2) + ")");
        if (static_cast<int>(base.b.rows()) != k2 || static_cast<int>(base.b.cols()) != n2)
            throw std::invalid_argument("StGenParams: base B has wrong shape");
    }
}

StGenCode StGenCode::build(StGenParams params) {
    params.validate();
    BitStream bits(params.seed);
    BitMatrix b1 = bits.draw_matrix(params.k1, params.n1);
    std::vector<BitMatrix> bprimes;
    bprimes.reserve(params.blocks > 1 ? params.blocks - 1 : 0);
    int kcum = params.k1;
    for (int i = 2; i <= params.blocks; ++i) {
        bprimes.push_back(bits.draw_matrix(kcum, params.n2));
        kcum += params.k2;
    }
    return assemble(std::move(params), std::move(b1), std::move(bprimes));
}

StGenCode StGenCode::assemble(StGenParams params, BitMatrix b1, std::vector<BitMatrix> bprimes) {
    params.validate();
    if (static_cast<int>(b1.rows()) != params.k1 || static_cast<int>(b1.cols()) != params.n1)
        throw std::invalid_argument("StGenCode: B_1 has wrong shape");
    if (static_cast<int>(bprimes.size()) != params.blocks - 1)
        throw std::invalid_argument("StGenCode: expected " + std::to_string(params.blocks - 1) +
                                    " random blocks, got " + std::to_string(bprimes.size()));
    int kcum = params.k1;
    for (int i = 2; i <= params.blocks; ++i) {
        const BitMatrix &bp = bprimes[i - 2];
        if (static_cast<int>(bp.rows()) != kcum || static_cast<int>(bp.cols()) != params.n2)
            throw std::invalid_argument("StGenCode: B'_" + std::to_string(i) + " has wrong shape");
        kcum += params.k2;
    }
    StGenCode code;
    code.params_ = std::move(params);
    code.b1_ = std::move(b1);
    code.bprimes_ = std::move(bprimes);
    code.assemble_staircase();
    return code;
}

void StGenCode::assemble_staircase() {
    const int v = params_.blocks;
    kcum_.assign(v + 1, 0);
    ncum_.assign(v + 1, 0);
    for (int i = 1; i <= v; ++i) {
        kcum_[i] = kcum_[i - 1] + block_k(i);
        ncum_[i] = ncum_[i - 1] + block_n(i);
    }
    p_ = BitMatrix(kcum_[v], ncum_[v]);
    for (int i = 1; i <= v; ++i) {
        p_.paste(kcum_[i - 1], ncum_[i - 1], block_b(i));
        if (i >= 2)
            p_.paste(0, ncum_[i - 1], bprimes_[i - 2]);
    }
}

const BitMatrix &StGenCode::block_b(int i) const {
    if (i < 1 || i > params_.blocks)
        throw std::out_of_range("StGenCode: block index out of range");
    return i == 1 ? b1_ : params_.base.b;
}

const BitMatrix &StGenCode::bprime(int i) const {
    if (i < 2 || i > params_.blocks)
        throw std::out_of_range("StGenCode: B' index out of range");
    return bprimes_[i - 2];
}

BitMatrix StGenCode::generator_matrix() const {
    return BitMatrix::identity(k()).concat_cols(p_);
}

BitMatrix StGenCode::parity_check_matrix() const {
    return p_.transposed().concat_cols(BitMatrix::identity(n() - k()));
}

BitVector StGenCode::encode(const BitVector &x) const {
    if (static_cast<int>(x.size()) != k())
        throw std::invalid_argument("StGenCode::encode: message length " +
                                    std::to_string(x.size()) + " != k = " + std::to_string(k()));
    BitVector out(n());
    auto ow = out.words();
    auto xw = x.words();
    for (std::size_t i = 0; i < xw.size(); ++i)
        ow[i] = xw[i];
    // Parity part sits at bit offset k; accumulate staircase rows into a
    // word-aligned buffer first.
    BitVector parity(n() - k());
    auto pw = parity.words();
    for (int r = 0; r < k(); ++r) {
        if (!x.get(r))
            continue;
        auto row = p_.row_words(r);
        for (std::size_t i = 0; i < row.size(); ++i)
            pw[i] ^= row[i];
    }
    for (int c = 0; c < n() - k(); c += 64) {
        const int chunk = std::min(64, n() - k() - c);
        out.set_slice_bits(k() + c, chunk, parity.slice_bits(c, chunk));
    }
    return out;
}

BitVector StGenCode::syndrome(const BitVector &word) const {
    if (static_cast<int>(word.size()) != n())
        throw std::invalid_argument("StGenCode::syndrome: word length " +
                                    std::to_string(word.size()) + " != n = " + std::to_string(n()));
    BitVector s(n() - k());
    auto sw = s.words();
    for (int r = 0; r < k(); ++r) {
        if (!word.get(r))
            continue;
        auto row = p_.row_words(r);
        for (std::size_t i = 0; i < row.size(); ++i)
            sw[i] ^= row[i];
    }
    for (int c = 0; c < n() - k(); c += 64) {
        const int chunk = std::min(64, n() - k() - c);
        s.set_slice_bits(c, chunk, s.slice_bits(c, chunk) ^ word.slice_bits(k() + c, chunk));
    }
    return s;
}

BitMatrix StGenCode::g_prefix(int i) const {
    if (i < 1 || i > params_.blocks)
        throw std::out_of_range("StGenCode::g_prefix: block index out of range");
    const int ki = K(i), ni = N(i);
    return BitMatrix::identity(ki).concat_cols(p_.submatrix(0, 0, ki, ni));
}

std::string StGenCode::to_descriptor_json() const {
    nlohmann::ordered_json j;
    j["format"] = "stgen-code";
    j["version"] = 1;
    j["k1"] = params_.k1;
    j["n1"] = params_.n1;
    j["k2"] = params_.k2;
    j["n2"] = params_.n2;
    j["v"] = params_.blocks;
    j["base"] = params_.blocks > 1 ? params_.base.id : "";
    j["seed"] = std::to_string(params_.seed);
    nlohmann::ordered_json b1 = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < b1_.rows(); ++r)
        b1.push_back(row_to_hex(b1_, r));
    j["b1"] = std::move(b1);
    nlohmann::ordered_json bp = nlohmann::ordered_json::array();
    for (const auto &m : bprimes_) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t r = 0; r < m.rows(); ++r)
            rows.push_back(row_to_hex(m, r));
        bp.push_back(std::move(rows));
    }
    j["bprime"] = std::move(bp);
    return j.dump(1) + "\n";
}

StGenCode StGenCode::from_descriptor_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("descriptor: not valid JSON: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "stgen-code")
            throw std::invalid_argument("descriptor: unexpected format field");
        if (j.at("version").get<int>() != 1)
            throw std::invalid_argument("descriptor: unsupported version");
        StGenParams p;
        p.k1 = j.at("k1").get<int>();
        p.n1 = j.at("n1").get<int>();
        p.k2 = j.at("k2").get<int>();
        p.n2 = j.at("n2").get<int>();
        p.blocks = j.at("v").get<int>();
        // Range-check before any matrix is sized from these fields.
        if (p.k1 < 1 || p.k1 > 4096 || p.n1 < 1 || p.n1 > 4096 || p.blocks < 1 ||
            p.blocks > 1000000 || p.k2 < 0 || p.k2 > 4096 || p.n2 < 0 || p.n2 > 4096)
            throw std::invalid_argument("descriptor: block dimensions out of range");
        const std::string base_id = j.at("base").get<std::string>();
        if (p.blocks > 1)
            p.base = find_base_code(base_id);
        const std::string seed_text = j.at("seed").get<std::string>();
        char *end = nullptr;
        p.seed = std::strtoull(seed_text.c_str(), &end, 10);
        if (end == seed_text.c_str() || *end != '\0')
            throw std::invalid_argument("descriptor: bad seed value");

        BitMatrix b1(p.k1, p.n1);
        const auto &b1rows = j.at("b1");
        if (static_cast<int>(b1rows.size()) != p.k1)
            throw std::invalid_argument("descriptor: b1 row count mismatch");
        for (int r = 0; r < p.k1; ++r)
            hex_to_row(b1, r, b1rows.at(r).get<std::string>());

        std::vector<BitMatrix> bprimes;
        const auto &bp = j.at("bprime");
        if (static_cast<int>(bp.size()) != p.blocks - 1)
            throw std::invalid_argument("descriptor: bprime block count mismatch");
        int kcum = p.k1;
        for (int i = 2; i <= p.blocks; ++i) {
            const auto &rows = bp.at(i - 2);
            BitMatrix m(kcum, p.n2);
            if (static_cast<int>(rows.size()) != kcum)
                throw std::invalid_argument("descriptor: B'_" + std::to_string(i) +
                                            " row count mismatch");
            for (int r = 0; r < kcum; ++r)
                hex_to_row(m, r, rows.at(r).get<std::string>());
            bprimes.push_back(std::move(m));
            kcum += p.k2;
        }
        return assemble(std::move(p), std::move(b1), std::move(bprimes));
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("descriptor: missing or mistyped field: ") +
                                    e.what());
    }
}

std::span<const PresetRow> preset_rows() {
    static const PresetRow rows[] = {
        {2, 14, 2, 1, "(3,1)1", 1000, 1501},
        {1, 14, 1, 1, "(2,1)1", 1001, 1501},
        {2, 14, 2, 3, "(5,3)1", 999, 1499},
        {1, 14, 1, 2, "(3,2)1", 1002, 1500},
        {1, 14, 1, 3, "(4,3)1", 1003, 1503},
        {1, 14, 1, 4, "(5,4)1", 1000, 1500},
    };
    return rows;
}

StGenParams preset_params(int row, int target_n, std::uint64_t seed) {
    if (row < 1 || row > static_cast<int>(preset_rows().size()))
        throw std::invalid_argument("preset row must be 1..6");
    if (target_n < 1)
        throw std::invalid_argument("target length must be positive");
    const PresetRow &r = preset_rows()[row - 1];
    StGenParams p;
    p.k1 = r.k1;
    p.n1 = r.n1;
    p.k2 = r.k2;
    p.n2 = r.n2;
    p.base = find_base_code(r.base_id);
    p.seed = seed;
    // n(v) = k1 + n1 + (v-1)(k2 + n2); nearest v, ties toward the smaller one.
    const int per = r.k2 + r.n2;
    const int base_len = r.k1 + r.n1;
    int v = (target_n - base_len) / per + 1;
    if (v < 1)
        v = 1;
    auto len = [&](int blocks) { return base_len + (blocks - 1) * per; };
    if (std::abs(len(v + 1) - target_n) < std::abs(len(v) - target_n))
        ++v;
    p.blocks = v;
    return p;
}

} // namespace stgen
