// Acceptance suite: end-to-end checks of the decoder, the embedding scheme,
// the expected-distortion model, and the CLI, each printed as one pass/fail
// line.  Exits nonzero if any check fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "stgen/analysis.hpp"
#include "stgen/embedder.hpp"
#include "stgen/experiment.hpp"
#include "stgen/oracle.hpp"

using namespace stgen;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Paper-published target lengths per parameter row.
const int kTargets1000[6] = {1000, 1001, 999, 1002, 1003, 1000};
const int kTargets1500[6] = {1501, 1501, 1499, 1500, 1503, 1500};

constexpr std::uint64_t kCodeSeed = 0xacce5501;
constexpr std::uint64_t kTrialSeed = 2026;

StGenCode preset_code(int row, int target) {
    return StGenCode::build(preset_params(row, target, kCodeSeed + row));
}

// ---------------------------------------------------------------------------

Outcome criterion_table1_radii() {
    const auto t0 = Clock::now();
    std::string detail;
    bool ok = true;
    for (const auto &base : base_catalog()) {
        const std::size_t r = covering_radius(base.generator());
        if (static_cast<int>(r) != 1)
            ok = false;
        detail += base.id + "=" + std::to_string(r) + " ";
    }
    const double dt = seconds_since(t0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.3f s, limit 1 s)", dt);
    if (dt >= 1.0)
        ok = false;
    return {ok, detail + buf};
}

Outcome criterion_roundtrip() {
    const auto t0 = Clock::now();
    const int rows[] = {2, 4, 5, 6};
    int failures = 0;
    long long total = 0;
    std::string detail;
    for (int which = 0; which < 2; ++which) {
        for (int row : rows) {
            const int target = which == 0 ? kTargets1000[row - 1] : kTargets1500[row - 1];
            const auto code = preset_code(row, target);
            const StegoContext ctx(code);
            std::mt19937_64 rng(mix_seed(kTrialSeed, row * 10 + which));
            for (int t = 0; t < 1000; ++t) {
                const auto y = BitVector::random(ctx.cover_bits(), rng);
                const auto m = BitVector::random(ctx.message_bits(), rng);
                if (!(ext(ctx, emb(ctx, y, m).stego) == m))
                    ++failures;
                ++total;
            }
        }
    }
    const double dt = seconds_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%lld embeddings, %d mismatches (%.1f s, limit 120 s)", total,
                  failures, dt);
    return {failures == 0 && dt < 120.0, buf};
}

Outcome criterion_oracle_floor() {
    std::mt19937_64 rng(0x05ca12);
    int codes = 0, trials = 0, equal = 0, below = 0;
    while (codes < 50) {
        StGenParams params;
        params.base = base_catalog()[rng() % base_catalog().size()];
        params.k1 = 1 + static_cast<int>(rng() % 6);
        params.n1 = 1 + static_cast<int>(rng() % 2);
        params.k2 = params.base.k;
        params.n2 = params.base.n - params.base.k;
        params.blocks = 2 + static_cast<int>(rng() % 3);
        params.seed = rng();
        if (params.dimension() > 14 || params.length() > 24)
            continue;
        ++codes;
        const auto code = StGenCode::build(params);
        const auto g = code.generator_matrix();
        for (int t = 0; t < 20; ++t) {
            const auto c0 = BitVector::random(code.n(), rng);
            const int got = decode_close(code, c0, {}).weight;
            const int best = static_cast<int>(nearest_codeword(g, c0).distance);
            if (got < best)
                ++below;
            if (got == best)
                ++equal;
            ++trials;
        }
    }
    const double frac = static_cast<double>(equal) / trials;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d codes, %d decodes: %d below oracle, optimal in %.1f%% (floor 60%%)", codes,
                  trials, below, 100.0 * frac);
    return {below == 0 && frac >= 0.60, buf};
}

struct RowMeasure {
    int n = 0, k = 0, r_alg = -1;
    double mean_wb2 = 0.0, mean_wb1 = 0.0, alpha = 0.0, bound = 0.0;
};

const std::vector<RowMeasure> &measurements() {
    static const std::vector<RowMeasure> cache = [] {
        std::vector<RowMeasure> out;
        for (int row = 1; row <= 6; ++row) {
            const auto code = preset_code(row, kTargets1000[row - 1]);
            RowMeasure m;
            m.n = code.n();
            m.k = code.k();
            m.alpha = static_cast<double>(m.n - m.k) / m.n;
            m.bound = efficiency_bound(m.alpha);

            DecoderConfig cfg;
            m.r_alg = distortion_profile(code.params(), cfg).r_alg;
            const StegoContext ctx2(code, cfg);
            const auto d2 = measure_trials(ctx2, 50, kTrialSeed);
            long long t2 = 0;
            for (int d : d2)
                t2 += d;
            m.mean_wb2 = static_cast<double>(t2) / d2.size();

            DecoderConfig cfg1;
            cfg1.round_weight = 1;
            const StegoContext ctx1(code, cfg1);
            const auto d1 = measure_trials(ctx1, 50, kTrialSeed);
            long long t1 = 0;
            for (int d : d1)
                t1 += d;
            m.mean_wb1 = static_cast<double>(t1) / d1.size();
            out.push_back(m);
        }
        return out;
    }();
    return cache;
}

Outcome criterion_theory_offset() {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (const auto &m : measurements()) {
        if (m.r_alg <= 0) {
            ok = false;
            continue;
        }
        const double rel = std::fabs(m.mean_wb2 / m.r_alg - 1.0);
        char buf[96];
        std::snprintf(buf, sizeof buf, "(%d,%d): %.1f vs %d (%+.1f%%) ", m.n, m.k, m.mean_wb2,
                      m.r_alg, 100.0 * (m.mean_wb2 / m.r_alg - 1.0));
        detail += buf;
        if (rel > 0.15)
            ok = false;
    }
    const double dt = seconds_since(t0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.1f s, limit 600 s)", dt);
    if (dt >= 600.0)
        ok = false;
    return {ok, detail + buf};
}

Outcome criterion_near_bound() {
    bool ok = true;
    std::string detail;
    for (const auto &m : measurements()) {
        const double e_a = (m.n - m.k) / m.mean_wb2;
        const double ratio = e_a / m.bound;
        char buf[96];
        std::snprintf(buf, sizeof buf, "(%d,%d): e_a=%.3f bound=%.3f (%.0f%%) ", m.n, m.k, e_a,
                      m.bound, 100.0 * ratio);
        detail += buf;
        if (ratio < 0.80 || ratio > 1.05)
            ok = false;
    }
    return {ok, detail};
}

Outcome criterion_round_weight_comparison() {
    bool ok = true;
    std::string detail;
    for (const auto &m : measurements()) {
        const double ea2 = (m.n - m.k) / m.mean_wb2;
        const double ea1 = (m.n - m.k) / m.mean_wb1;
        char buf[96];
        std::snprintf(buf, sizeof buf, "(%d,%d): wb2=%.3f wb1=%.3f ", m.n, m.k, ea2, ea1);
        detail += buf;
        if (!(ea2 >= ea1))
            ok = false;
    }
    // The model ordering behind the claim, independent of trial noise.
    for (int row = 1; row <= 6; ++row) {
        const auto params = preset_params(row, kTargets1000[row - 1], kCodeSeed + row);
        DecoderConfig wb1;
        wb1.round_weight = 1;
        const int r2 = distortion_profile(params, {}).r_alg;
        const int r1 = distortion_profile(params, wb1).r_alg;
        if (!(r2 > 0 && r1 > 0 && r2 <= r1)) {
            ok = false;
            detail += "model ordering violated on row " + std::to_string(row) + " ";
        }
    }
    return {ok, detail};
}

Outcome criterion_list_dynamics() {
    bool ok = true;
    std::string detail;
    for (int which = 0; which < 2; ++which) {
        for (int row = 1; row <= 6; ++row) {
            const int target = which == 0 ? kTargets1000[row - 1] : kTargets1500[row - 1];
            const auto params = preset_params(row, target, kCodeSeed + row);
            const auto rep = list_dynamics_report(params, {});
            const bool row_ok = rep.recurrence_consistent && rep.shrink_mismatches == 0 &&
                                rep.growth_mismatches == 0 && rep.every_run_decreased &&
                                rep.max_steps_to_decrease >= 0 &&
                                rep.max_steps_to_decrease <= 5 &&
                                rep.growth_threshold <= 0.0 && rep.every_increment_grew;
            if (!row_ok) {
                ok = false;
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "row %d n~%d: err=%.1e shrink=%d/%d growth=%d/%d s=%d coeff=%.2f ",
                              row, target, rep.recurrence_max_rel_err, rep.shrink_mismatches,
                              rep.shrink_checks, rep.growth_mismatches, rep.growth_checks,
                              rep.max_steps_to_decrease, rep.growth_threshold);
                detail += buf;
            }
        }
    }
    if (ok) {
        // Summarize how much was checked, the slowest decrease, and the
        // threshold range.
        int worst_s = -1, shrink = 0, growth = 0;
        double max_coeff = -1e9;
        for (int which = 0; which < 2; ++which) {
            for (int row = 1; row <= 6; ++row) {
                const int target = which == 0 ? kTargets1000[row - 1] : kTargets1500[row - 1];
                const auto rep =
                    list_dynamics_report(preset_params(row, target, kCodeSeed + row), {});
                worst_s = std::max(worst_s, rep.max_steps_to_decrease);
                max_coeff = std::max(max_coeff, rep.growth_threshold);
                shrink += rep.shrink_checks;
                growth += rep.growth_checks;
            }
        }
        char buf[192];
        std::snprintf(buf, sizeof buf,
                      "12 parameter sets: recurrences to 1e-12, %d shrink + %d growth conditions "
                      "agree, slowest decrease s=%d (cap 5), max growth threshold %.2f "
                      "(never positive)",
                      shrink, growth, worst_s, max_coeff);
        detail = buf;
    }
    return {ok, detail};
}

Outcome criterion_scaling() {
    // Fixed repeated-block shape; the decode cost may grow at most
    // quadratically in the code length (expected ~ n * k).
    const int targets[] = {251, 501, 1001, 2001};
    double per_decode[4];
    for (int i = 0; i < 4; ++i) {
        const auto code = StGenCode::build(preset_params(2, targets[i], kCodeSeed));
        std::mt19937_64 rng(mix_seed(kTrialSeed, 80 + i));
        // Warm up once, then take the fastest of three timed repetitions.
        std::vector<BitVector> words;
        for (int t = 0; t < 5; ++t)
            words.push_back(BitVector::random(code.n(), rng));
        volatile int sink = decode_close(code, words[0], {}).weight;
        (void)sink;
        double best = 1e9;
        for (int rep = 0; rep < 3; ++rep) {
            const auto t0 = Clock::now();
            for (const auto &w : words)
                sink = decode_close(code, w, {}).weight;
            best = std::min(best, seconds_since(t0) / words.size());
        }
        per_decode[i] = best;
    }
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 4; ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "n=%d: %.2f ms ", targets[i], per_decode[i] * 1e3);
        detail += buf;
        if (i > 0) {
            const double scale = static_cast<double>(targets[i]) / targets[0];
            if (per_decode[i] > 1.35 * per_decode[0] * scale * scale)
                ok = false;
        }
    }
    detail += "(cap: quadratic in n from n=251, factor 1.35)";
    return {ok, detail};
}

Outcome criterion_csv_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "stgencode-acceptance";
    fs::create_directories(dir);
    const std::string a = (dir / "a.csv").string();
    const std::string b = (dir / "b.csv").string();
    const std::string flags = " experiment --table2-n 1000 --trials 5 --seed 2027 --threads 1 -o ";
    const std::string bin = STGENCODE_BIN;
    if (std::system((bin + flags + a + " >/dev/null 2>&1").c_str()) != 0)
        return {false, "first experiment run failed"};
    if (std::system((bin + flags + b + " >/dev/null 2>&1").c_str()) != 0)
        return {false, "second experiment run failed"};
    auto slurp = [](const std::string &p) {
        std::ifstream in(p, std::ios::binary);
        return std::string{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    };
    const std::string ca = slurp(a), cb = slurp(b);
    char buf[96];
    std::snprintf(buf, sizeof buf, "two runs, %zu bytes each, byte-identical=%s", ca.size(),
                  ca == cb && !ca.empty() ? "yes" : "NO");
    return {!ca.empty() && ca == cb, buf};
}

} // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> criteria = {
        {"table1-covering-radii", criterion_table1_radii},
        {"embed-extract-roundtrip", criterion_roundtrip},
        {"decoder-vs-oracle-floor", criterion_oracle_floor},
        {"theory-vs-practice-offset", criterion_theory_offset},
        {"near-bound-efficiency", criterion_near_bound},
        {"round-weight-comparison", criterion_round_weight_comparison},
        {"list-dynamics-checks", criterion_list_dynamics},
        {"complexity-scaling", criterion_scaling},
        {"experiment-determinism", criterion_csv_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        try {
            out = criteria[i].fn();
        } catch (const std::exception &e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %zu. %s: %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass)
            ++failures;
    }
    if (failures) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
