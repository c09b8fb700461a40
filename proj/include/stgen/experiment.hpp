// Monte-Carlo measurement of embedding distortion plus the matching model
// predictions, one CSV row per configuration.  Trials are a pure function of
// (seed, trial index), so results are byte-identical however they are
// scheduled across threads.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stgen/embedder.hpp"

namespace stgen {

struct ExperimentRecord {
    std::string code_id;
    int n = 0, k = 0;
    double alpha = 0.0, inv_alpha = 0.0;
    int trials = 0;
    double mean_distortion = 0.0; // meaningless when trials == 0
    double e_a = 0.0;             // (n-k)/mean_distortion
    int theory_r_alg = -1;
    double theory_e_a = 0.0;
    double bound_e = 0.0;
    int round_weight = 0, list_cap = 0;
    std::string seed;
};

// Distortion of `trials` independent random (cover, message) embeddings.
std::vector<int> measure_trials(const StegoContext &ctx, int trials, std::uint64_t seed,
                                int threads = 0);

ExperimentRecord run_experiment(const StGenCode &code, const DecoderConfig &cfg, int trials,
                                std::uint64_t seed, int threads = 0);

std::string csv_header();
std::string csv_row(const ExperimentRecord &rec);

// Deterministic per-trial RNG stream seeding.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace stgen
