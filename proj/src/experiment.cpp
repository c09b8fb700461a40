#include "stgen/experiment.hpp"

#include <cstdio>
#include <thread>

#include "stgen/analysis.hpp"

namespace stgen {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over the combined value
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<int> measure_trials(const StegoContext &ctx, int trials, std::uint64_t seed,
                                int threads) {
    if (trials < 0)
        throw std::invalid_argument("measure_trials: negative trial count");
    std::vector<int> changes(trials, 0);
    if (trials == 0)
        return changes;

    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, trials));

    auto worker = [&](int first, int last) {
        for (int t = first; t < last; ++t) {
            std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
            const BitVector cover = BitVector::random(ctx.cover_bits(), rng);
            const BitVector message = BitVector::random(ctx.message_bits(), rng);
            changes[t] = emb(ctx, cover, message).changes;
        }
    };

    if (threads == 1) {
        worker(0, trials);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (trials + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int first = t * chunk, last = std::min(trials, first + chunk);
            if (first < last)
                pool.emplace_back(worker, first, last);
        }
        for (auto &th : pool)
            th.join();
    }
    return changes;
}

ExperimentRecord run_experiment(const StGenCode &code, const DecoderConfig &cfg, int trials,
                                std::uint64_t seed, int threads) {
    StegoContext ctx(code, cfg);

    ExperimentRecord rec;
    rec.n = code.n();
    rec.k = code.k();
    rec.code_id = "stgen-" + std::to_string(rec.n) + "-" + std::to_string(rec.k);
    const double mk = rec.n - rec.k;
    rec.alpha = mk / rec.n;
    rec.inv_alpha = rec.n / mk;
    rec.trials = trials;
    rec.round_weight = cfg.round_weight;
    rec.list_cap = cfg.list_cap;
    rec.seed = std::to_string(seed);

    const DistortionProfile prof = distortion_profile(code.params(), cfg);
    rec.theory_r_alg = prof.r_alg;
    rec.theory_e_a = prof.r_alg > 0 ? mk / prof.r_alg : 0.0;
    rec.bound_e = efficiency_bound(rec.alpha);

    if (trials > 0) {
        const std::vector<int> changes = measure_trials(ctx, trials, seed, threads);
        long long total = 0;
        for (int c : changes)
            total += c;
        rec.mean_distortion = static_cast<double>(total) / trials;
        rec.e_a = rec.mean_distortion > 0 ? mk / rec.mean_distortion : 0.0;
    }
    return rec;
}

std::string csv_header() {
    return "code_id,n,k,alpha,inv_alpha,trials,mean_distortion,e_a,"
           "theory_R_alg,theory_e_a,bound_e,w_b,L_cap,seed";
}

std::string csv_row(const ExperimentRecord &rec) {
    char buf[512];
    char measured[80];
    if (rec.trials > 0)
        std::snprintf(measured, sizeof measured, "%.4f,%.4f", rec.mean_distortion, rec.e_a);
    else
        std::snprintf(measured, sizeof measured, ",");
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.6f,%.6f,%d,%s,%d,%.4f,%.4f,%d,%d,%s",
                  rec.code_id.c_str(), rec.n, rec.k, rec.alpha, rec.inv_alpha, rec.trials,
                  measured, rec.theory_r_alg, rec.theory_e_a, rec.bound_e, rec.round_weight,
                  rec.list_cap, rec.seed.c_str());
    return buf;
}

} // namespace stgen
