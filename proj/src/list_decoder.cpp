#include "stgen/list_decoder.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <numeric>

namespace stgen {

namespace {

inline std::uint64_t get_bits(std::span<const std::uint64_t> words, std::size_t begin,
                              std::size_t count) {
    if (count == 0)
        return 0;
    const std::size_t w = begin >> 6, off = begin & 63;
    std::uint64_t bits = words[w] >> off;
    if (off + count > 64)
        bits |= words[w + 1] << (64 - off);
    if (count < 64)
        bits &= (std::uint64_t{1} << count) - 1;
    return bits;
}

inline void put_bits(std::span<std::uint64_t> words, std::size_t begin, std::size_t count,
                     std::uint64_t bits) {
    if (count == 0)
        return;
    bits &= count < 64 ? (std::uint64_t{1} << count) - 1 : ~std::uint64_t{0};
    const std::size_t w = begin >> 6, off = begin & 63;
    const std::uint64_t mask = (count < 64 ? (std::uint64_t{1} << count) - 1 : ~std::uint64_t{0})
                               << off;
    words[w] = (words[w] & ~mask) | (bits << off);
    if (off + count > 64) {
        const std::size_t hi = off + count - 64;
        const std::uint64_t hi_mask = (std::uint64_t{1} << hi) - 1;
        words[w + 1] = (words[w + 1] & ~hi_mask) | (bits >> (64 - off));
    }
}

// Numeric order of the result equals coordinate-0-first lex order of x.
inline std::uint32_t lex_key(std::uint32_t x, int width) {
    std::uint32_t r = 0;
    for (int b = 0; b < width; ++b)
        if (x & (std::uint32_t{1} << b))
            r |= std::uint32_t{1} << (width - 1 - b);
    return r;
}

struct ExtCandidate {
    std::int32_t d;       // wt of the new error bits
    std::uint32_t xnew;   // new message bits
};

// Working list for one level, kept in coordinate-lex order of the message
// prefix x.  The prefixes themselves are not stored; each entry points at its
// parent in the previous level (LevelArena) and only the parity contribution
// x * P travels with the entry.
struct Pool {
    int sw = 0;
    int count = 0;
    std::vector<std::uint64_t> syn; // count x sw words, x * P over all n-k columns
    std::vector<std::int32_t> wt;   // cumulative wt(e)

    void configure(int cap, int swords) {
        sw = swords;
        count = 0;
        syn.assign(static_cast<std::size_t>(cap) * sw, 0);
        wt.assign(cap, 0);
    }
    std::uint64_t *synrow(int i) { return syn.data() + static_cast<std::size_t>(i) * sw; }
    const std::uint64_t *synrow(int i) const {
        return syn.data() + static_cast<std::size_t>(i) * sw;
    }
};

// Per-level survivor records for reconstructing x by walking parents.
struct LevelArena {
    std::vector<std::int32_t> parent; // index into the previous level (-1 ends the chain)
    std::vector<std::uint32_t> xnew;  // k_i new message bits
};

struct Candidate {
    std::int32_t weight;
    std::int32_t parent;
    std::uint32_t xnew;
};

struct Scratch {
    std::vector<Candidate> cands;
    std::vector<std::int32_t> hist;
};

struct DecodeContext {
    const StGenCode *code = nullptr;
    int k = 0, nk = 0, v = 0;
    int sw = 0;
    std::vector<std::uint64_t> c0_id;  // first k bits of c0
    std::vector<std::uint64_t> c0_par; // last n-k bits of c0
    // Extension candidates per adjusted target of the repeated block, in lex
    // order of the new bits, filtered to the round weight limit.
    std::vector<std::vector<ExtCandidate>> ext;
    // First staircase word holding a nonzero column for each row.
    std::vector<int> row_start;

    DecodeContext(const StGenCode &c, const BitVector &word, const DecoderConfig &cfg)
        : code(&c) {
        k = c.k();
        nk = c.n() - k;
        v = c.blocks();
        sw = (nk + 63) / 64;
        c0_id.assign((k + 63) / 64, 0);
        c0_par.assign(std::max(sw, 1), 0);
        for (int b = 0; b < k; b += 64) {
            const int chunk = std::min(64, k - b);
            put_bits(c0_id, b, chunk, word.slice_bits(b, chunk));
        }
        for (int b = 0; b < nk; b += 64) {
            const int chunk = std::min(64, nk - b);
            put_bits(c0_par, b, chunk, word.slice_bits(k + b, chunk));
        }
        row_start.resize(k);
        for (int i = 1; i <= v; ++i)
            for (int r = c.K(i - 1); r < c.K(i); ++r)
                row_start[r] = c.N(i - 1) / 64;
        if (v > 1)
            build_ext_table(cfg);
    }

    void build_ext_table(const DecoderConfig &cfg) {
        const int k2 = code->params().k2, n2 = code->params().n2;
        if (k2 + n2 > 16)
            throw std::invalid_argument("decoder: repeated block k2+n2 > 16 not supported");
        const BitMatrix &b = code->params().base.b;
        std::vector<std::uint32_t> row_mask(k2, 0);
        for (int r = 0; r < k2; ++r)
            for (int c = 0; c < n2; ++c)
                if (b.get(r, c))
                    row_mask[r] |= std::uint32_t{1} << c;
        std::vector<std::uint32_t> xb(std::size_t{1} << k2, 0);
        for (std::uint32_t xn = 1; xn < xb.size(); ++xn)
            xb[xn] = xb[xn & (xn - 1)] ^ row_mask[std::countr_zero(xn)];

        // Lex order over xnew, so candidate emission order is canonical.
        std::vector<std::uint32_t> by_lex(xb.size());
        std::iota(by_lex.begin(), by_lex.end(), 0);
        std::sort(by_lex.begin(), by_lex.end(), [&](std::uint32_t a, std::uint32_t b2) {
            return lex_key(a, k2) < lex_key(b2, k2);
        });

        ext.assign(std::size_t{1} << (k2 + n2), {});
        for (std::uint32_t t = 0; t < ext.size(); ++t) {
            const std::uint32_t tid = t & ((std::uint32_t{1} << k2) - 1);
            const std::uint32_t tp = t >> k2;
            auto &list = ext[t];
            for (std::uint32_t xn : by_lex) {
                const int d = std::popcount(xn ^ tid) + std::popcount(xb[xn] ^ tp);
                if (d <= cfg.round_weight)
                    list.push_back({d, xn});
            }
        }
    }

    void add_staircase_row(std::uint64_t *syn, int r) const {
        auto row = code->staircase().row_words(r);
        for (int w = row_start[r]; w < sw; ++w)
            syn[w] ^= row[w];
    }
};

// Fill `pool` and `arena` with the level-1 list under weight cap w1.
int step_init_core(const DecodeContext &ctx, int w1, int cap, Pool &pool, LevelArena &arena) {
    const StGenCode &code = *ctx.code;
    const int k1 = code.params().k1, n1 = code.params().n1;
    if (k1 > 20 || n1 > 32)
        throw std::invalid_argument("decoder: first block enumeration needs k1 <= 20, n1 <= 32");

    std::vector<std::uint32_t> row_mask(k1, 0);
    for (int r = 0; r < k1; ++r)
        for (int c = 0; c < n1; ++c)
            if (code.b1().get(r, c))
                row_mask[r] |= std::uint32_t{1} << c;

    const std::uint32_t c0_id1 = static_cast<std::uint32_t>(get_bits(ctx.c0_id, 0, k1));
    const std::uint32_t c0_par1 = static_cast<std::uint32_t>(get_bits(ctx.c0_par, 0, n1));

    struct InitCand {
        std::int32_t weight;
        std::uint32_t x;
        std::uint32_t lexkey;
    };
    std::vector<InitCand> cands;

    // Gray-code walk keeps the running x * B_1 product one xor per candidate.
    std::uint32_t par = 0;
    auto consider = [&](std::uint32_t x) {
        const int wt = std::popcount(x ^ c0_id1) + std::popcount(par ^ c0_par1);
        if (wt <= w1)
            cands.push_back({wt, x, lex_key(x, k1)});
    };
    consider(0);
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << k1); ++t) {
        par ^= row_mask[std::countr_zero(t)];
        consider(static_cast<std::uint32_t>(t ^ (t >> 1)));
    }

    if (static_cast<int>(cands.size()) > cap) {
        std::sort(cands.begin(), cands.end(), [](const InitCand &a, const InitCand &b) {
            return a.weight != b.weight ? a.weight < b.weight : a.lexkey < b.lexkey;
        });
        cands.resize(cap);
    }
    // The pool is kept in lex order of x.
    std::sort(cands.begin(), cands.end(),
              [](const InitCand &a, const InitCand &b) { return a.lexkey < b.lexkey; });

    pool.count = static_cast<int>(cands.size());
    arena.parent.assign(pool.count, -1);
    arena.xnew.resize(pool.count);
    for (int i = 0; i < pool.count; ++i) {
        std::uint64_t *syn = pool.synrow(i);
        std::memset(syn, 0, sizeof(std::uint64_t) * pool.sw);
        for (int r = 0; r < k1; ++r)
            if ((cands[i].x >> r) & 1u)
                ctx.add_staircase_row(syn, r);
        pool.wt[i] = cands[i].weight;
        arena.xnew[i] = cands[i].x;
    }
    return pool.count;
}

// Extend `in` by block `i` under cumulative cap w_i into `out`/`arena`.
// Both pools are in lex order of x: parents are visited in lex order and the
// per-target extension lists are in lex order of the new bits, so a
// candidate's position doubles as its lex rank.
int step_extend_core(const DecodeContext &ctx, int i, const Pool &in, int w_i, int cap, Pool &out,
                     LevelArena &arena, Scratch &scratch) {
    const StGenCode &code = *ctx.code;
    const int k2 = code.params().k2, n2 = code.params().n2;
    const int kp = code.K(i - 1), np = code.N(i - 1);

    const std::uint32_t c0_tid = static_cast<std::uint32_t>(get_bits(ctx.c0_id, kp, k2));
    const std::uint32_t c0_tp = static_cast<std::uint32_t>(get_bits(ctx.c0_par, np, n2));

    auto &cands = scratch.cands;
    cands.clear();
    for (int pi = 0; pi < in.count; ++pi) {
        const int headroom = w_i - in.wt[pi];
        if (headroom < 0)
            continue;
        const std::uint32_t fb = static_cast<std::uint32_t>(
            get_bits({in.synrow(pi), static_cast<std::size_t>(in.sw)}, np, n2));
        const std::uint32_t target = c0_tid | ((c0_tp ^ fb) << k2);
        for (const ExtCandidate &ec : ctx.ext[target])
            if (ec.d <= headroom)
                cands.push_back({in.wt[pi] + ec.d, pi, ec.xnew});
    }

    // Canonical selection: lowest weight first, ties by lex order of the full
    // x, which here is simply the candidate's position.  Weights live in the
    // tiny range [0, w_i], so a counting cut finds the survivors in one pass
    // and keeps them in lex order.
    int keep_below = w_i + 1; // keep every candidate lighter than this...
    int keep_at = -1;         // ...plus this many of weight keep_below - 1
    if (static_cast<int>(cands.size()) > cap) {
        auto &hist = scratch.hist;
        hist.assign(w_i + 1, 0);
        for (const Candidate &c : cands)
            ++hist[c.weight];
        int seen = 0;
        for (int wgt = 0; wgt <= w_i; ++wgt) {
            if (seen + hist[wgt] >= cap) {
                keep_below = wgt;
                keep_at = cap - seen;
                break;
            }
            seen += hist[wgt];
        }
    }

    out.count = 0;
    arena.parent.resize(std::min<std::size_t>(cands.size(), cap));
    arena.xnew.resize(arena.parent.size());
    for (const Candidate &c : cands) {
        if (c.weight >= keep_below) {
            if (c.weight > keep_below || keep_at == 0)
                continue;
            --keep_at;
        }
        const int oi = out.count++;
        std::uint64_t *syn = out.synrow(oi);
        std::memcpy(syn, in.synrow(c.parent), sizeof(std::uint64_t) * in.sw);
        for (int b = 0; b < k2; ++b)
            if ((c.xnew >> b) & 1u)
                ctx.add_staircase_row(syn, kp + b);
        out.wt[oi] = c.weight;
        arena.parent[oi] = c.parent;
        arena.xnew[oi] = c.xnew;
    }
    return out.count;
}

// Index of the minimal-weight entry; the pool is in lex order, so the first
// minimum is the lex-smallest one.
int best_entry(const Pool &pool) {
    int best = 0;
    for (int i = 1; i < pool.count; ++i)
        if (pool.wt[i] < pool.wt[best])
            best = i;
    return best;
}

// Rebuild the K_level-bit message prefix of entry `idx` by walking parents.
BitVector reconstruct_x(const DecodeContext &ctx, const std::vector<LevelArena> &levels, int level,
                        int idx) {
    const StGenCode &code = *ctx.code;
    BitVector x(code.K(level));
    auto xw = x.words();
    // A negative parent ends the chain (level 1, or a caller-supplied list
    // whose prefix bits the caller fills in itself).
    int cur = idx;
    for (int lev = level; lev >= 1 && cur >= 0; --lev) {
        const LevelArena &a = levels[lev - 1];
        put_bits(xw, code.K(lev - 1), code.block_k(lev), a.xnew[cur]);
        cur = a.parent[cur];
    }
    return x;
}

ListEntry materialize(const DecodeContext &ctx, const Pool &pool,
                      const std::vector<LevelArena> &levels, int level, int idx) {
    const StGenCode &code = *ctx.code;
    const int ki = code.K(level), ni = code.N(level);
    ListEntry entry;
    entry.x = reconstruct_x(ctx, levels, level, idx);
    entry.parity_acc = BitVector(ctx.nk);
    {
        auto sw = entry.parity_acc.words();
        std::span<const std::uint64_t> src{pool.synrow(idx), static_cast<std::size_t>(pool.sw)};
        for (int b = 0; b < ctx.nk; b += 64) {
            const int chunk = std::min(64, ctx.nk - b);
            put_bits(sw, b, chunk, get_bits(src, b, chunk));
        }
    }
    entry.e = BitVector(ki + ni);
    {
        auto ew = entry.e.words();
        auto xsrc = entry.x.words();
        std::span<const std::uint64_t> ssrc{pool.synrow(idx), static_cast<std::size_t>(pool.sw)};
        for (int b = 0; b < ki; b += 64) {
            const int chunk = std::min(64, ki - b);
            put_bits(ew, b, chunk, get_bits(xsrc, b, chunk) ^ get_bits(ctx.c0_id, b, chunk));
        }
        for (int b = 0; b < ni; b += 64) {
            const int chunk = std::min(64, ni - b);
            put_bits(ew, ki + b, chunk, get_bits(ssrc, b, chunk) ^ get_bits(ctx.c0_par, b, chunk));
        }
    }
    entry.weight = pool.wt[idx];
    return entry;
}

std::vector<ListEntry> materialize_all(const DecodeContext &ctx, const Pool &pool,
                                       const std::vector<LevelArena> &levels, int level) {
    std::vector<ListEntry> out;
    out.reserve(pool.count);
    for (int i = 0; i < pool.count; ++i)
        out.push_back(materialize(ctx, pool, levels, level, i));
    std::sort(out.begin(), out.end(), [](const ListEntry &a, const ListEntry &b) {
        return a.weight != b.weight ? a.weight < b.weight : BitVector::lex_less(a.x, b.x);
    });
    return out;
}

void check_c0(const StGenCode &code, const BitVector &c0) {
    if (static_cast<int>(c0.size()) != code.n())
        throw std::invalid_argument("decoder: c0 length " + std::to_string(c0.size()) +
                                    " != n = " + std::to_string(code.n()));
}

} // namespace

std::vector<ListEntry> step_init(const StGenCode &code, const BitVector &c0,
                                 const DecoderConfig &cfg) {
    cfg.validate();
    check_c0(code, c0);
    DecodeContext ctx(code, c0, cfg);
    Pool pool;
    pool.configure(cfg.list_cap, ctx.sw);
    std::vector<LevelArena> levels(1);
    step_init_core(ctx, cfg.start_weight, cfg.list_cap, pool, levels[0]);
    return materialize_all(ctx, pool, levels, 1);
}

std::vector<ListEntry> step_extend(const StGenCode &code, int block,
                                   const std::vector<ListEntry> &entries, const BitVector &c0,
                                   int weight_limit, const DecoderConfig &cfg) {
    cfg.validate();
    check_c0(code, c0);
    if (block < 2 || block > code.blocks())
        throw std::out_of_range("step_extend: block index out of range");
    if (entries.empty())
        throw std::invalid_argument("step_extend: entry list must be nonempty");

    DecodeContext ctx(code, c0, cfg);
    const int kprev = code.K(block - 1);
    const BitMatrix &p = code.staircase();

    // The core expects parents in lex order of x.
    std::vector<int> by_lex(entries.size());
    std::iota(by_lex.begin(), by_lex.end(), 0);
    std::sort(by_lex.begin(), by_lex.end(),
              [&](int a, int b) { return BitVector::lex_less(entries[a].x, entries[b].x); });

    Pool in;
    in.configure(static_cast<int>(entries.size()), ctx.sw);
    in.count = static_cast<int>(entries.size());
    for (int i = 0; i < in.count; ++i) {
        const ListEntry &e = entries[by_lex[i]];
        if (static_cast<int>(e.x.size()) != kprev)
            throw std::invalid_argument("step_extend: entry has x of wrong length");
        std::uint64_t *syn = in.synrow(i);
        if (static_cast<int>(e.parity_acc.size()) == ctx.nk) {
            auto src = e.parity_acc.words();
            for (int w = 0; w < in.sw; ++w)
                syn[w] = src[w];
        } else {
            // No cache supplied; rebuild the parity contribution from x.
            for (int r = 0; r < kprev; ++r) {
                if (e.x.get(r)) {
                    auto row = p.row_words(r);
                    for (int w = 0; w < in.sw; ++w)
                        syn[w] ^= row[w];
                }
            }
        }
        in.wt[i] = e.weight;
    }

    Pool out;
    out.configure(cfg.list_cap, ctx.sw);
    std::vector<LevelArena> levels(block);
    levels[block - 2].parent.assign(in.count, -1);
    levels[block - 2].xnew.assign(in.count, 0);
    Scratch scratch;
    step_extend_core(ctx, block, in, weight_limit, cfg.list_cap, out, levels[block - 1], scratch);

    // Reconstruct full x by prefixing the parent's bits from the caller list.
    std::vector<ListEntry> result;
    result.reserve(out.count);
    for (int i = 0; i < out.count; ++i) {
        ListEntry child = materialize(ctx, out, levels, block, i);
        const ListEntry &parent = entries[by_lex[levels[block - 1].parent[i]]];
        for (int b = 0; b < kprev; b += 64) {
            const int chunk = std::min(64, kprev - b);
            child.x.set_slice_bits(b, chunk, parent.x.slice_bits(b, chunk));
            child.e.set_slice_bits(b, chunk,
                                   parent.x.slice_bits(b, chunk) ^ get_bits(ctx.c0_id, b, chunk));
        }
        result.push_back(std::move(child));
    }
    std::sort(result.begin(), result.end(), [](const ListEntry &a, const ListEntry &b) {
        return a.weight != b.weight ? a.weight < b.weight : BitVector::lex_less(a.x, b.x);
    });
    return result;
}

DecodeResult decode_close(const StGenCode &code, const BitVector &c0, const DecoderConfig &cfg) {
    cfg.validate();
    check_c0(code, c0);

    DecodeContext ctx(code, c0, cfg);
    Pool cur, next;
    cur.configure(cfg.list_cap, ctx.sw);
    next.configure(cfg.list_cap, ctx.sw);
    std::vector<LevelArena> levels(ctx.v);
    Scratch scratch;

    DecodeResult result;
    result.list_trace.reserve(ctx.v);

    int w = cfg.start_weight;
    int size = step_init_core(ctx, w, cfg.list_cap, cur, levels[0]);
    for (int retry = 0; size == 0 && retry < cfg.retry_limit; ++retry)
        size = step_init_core(ctx, ++w, cfg.list_cap, cur, levels[0]);
    if (size == 0)
        throw decode_failure("decode_close: empty list at step 1 after " +
                             std::to_string(cfg.retry_limit) + " weight escalations");
    result.list_trace.push_back(size);

    for (int i = 2; i <= ctx.v; ++i) {
        w = weight_schedule_update(w, static_cast<std::size_t>(size), cfg);
        size = step_extend_core(ctx, i, cur, w, cfg.list_cap, next, levels[i - 1], scratch);
        for (int retry = 0; size == 0 && retry < cfg.retry_limit; ++retry)
            size = step_extend_core(ctx, i, cur, ++w, cfg.list_cap, next, levels[i - 1], scratch);
        if (size == 0)
            throw decode_failure("decode_close: empty list at step " + std::to_string(i) +
                                 " after " + std::to_string(cfg.retry_limit) +
                                 " weight escalations");
        std::swap(cur, next);
        result.list_trace.push_back(size);
    }

    const int best = best_entry(cur);
    ListEntry entry = materialize(ctx, cur, levels, ctx.v, best);
    result.x = std::move(entry.x);
    result.e = std::move(entry.e);
    result.weight = entry.weight;
    result.final_weight_limit = w;

    // Output contract, recomputed from scratch: x*G xor e must equal c_0.
    if ((code.encode(result.x) ^ result.e) != c0 ||
        result.weight != static_cast<int>(result.e.weight()))
        throw std::logic_error("decode_close: internal bookkeeping violated the output contract");
    return result;
}

} // namespace stgen
