#include "stgen/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace stgen {

namespace {

double binomial(int n, int r) {
    if (r < 0 || r > n)
        return 0.0;
    r = std::min(r, n - r);
    double acc = 1.0;
    for (int i = 0; i < r; ++i)
        acc = acc * (n - i) / (i + 1);
    return acc;
}

double rel_err(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    if (scale < 1e-300)
        return 0.0;
    return std::fabs(a - b) / scale;
}

// Values this close to a comparison boundary are not called either way.
constexpr double kBoundaryRel = 1e-9;
// Expected counts at or below 2^-40 are treated as empty weight classes when
// locating the bottom of the weight distribution.
const double kSmallBall = std::ldexp(1.0, -40);

} // namespace

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("binary_entropy: p must be in [0,1]");
    if (p == 0.0 || p == 1.0)
        return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double entropy_inverse(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("entropy_inverse: alpha must be in (0,1]");
    // H is flat to double precision near its maximum, so the boundary value
    // is pinned rather than bisected.
    if (alpha == 1.0)
        return 0.5;
    double lo = 0.0, hi = 0.5;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double efficiency_bound(double alpha) {
    return alpha / entropy_inverse(alpha);
}

double DistortionProfile::ball(int step, int j) const {
    if (step < 1 || step > static_cast<int>(counts.size()))
        throw std::out_of_range("DistortionProfile::ball: step out of range");
    if (j < 0)
        return 0.0;
    const auto &row = counts[step - 1];
    double acc = 0.0;
    const int top = std::min<int>(j, static_cast<int>(row.size()) - 1);
    for (int s = 0; s <= top; ++s)
        acc += row[s];
    return acc;
}

DistortionProfile distortion_profile(const StGenParams &params, const DecoderConfig &cfg) {
    params.validate();
    cfg.validate();

    DistortionProfile out;
    out.counts.reserve(params.blocks);
    out.expected_list_sizes.reserve(params.blocks);
    out.weight_schedule.reserve(params.blocks);

    int w = cfg.start_weight;
    {
        std::vector<double> row(w + 1, 0.0);
        const double denom = std::ldexp(1.0, params.n1);
        for (int j = 0; j <= w; ++j)
            row[j] = binomial(params.k1 + params.n1, j) / denom;
        out.counts.push_back(std::move(row));
        out.weight_schedule.push_back(w);
    }
    double size = 0.0;
    for (double x : out.counts.back())
        size += x;
    out.expected_list_sizes.push_back(size);

    for (int i = 2; i <= params.blocks; ++i) {
        // Same schedule rule as the decoder, driven by the expected size.
        if (out.expected_list_sizes.back() < cfg.list_cap)
            ++w;

        const auto &prev = out.counts.back();
        const int prev_w = out.weight_schedule.back();
        std::vector<double> row(w + 1, 0.0);
        const double denom = std::ldexp(1.0, params.n2);
        const int m = params.k2 + params.n2;
        for (int j = 0; j <= w; ++j) {
            double acc = 0.0;
            const int lmax = std::min(j, cfg.round_weight);
            for (int l = 0; l <= lmax; ++l) {
                const int jp = j - l;
                if (jp <= prev_w)
                    acc += binomial(m, l) / denom * prev[jp];
            }
            row[j] = acc;
        }
        out.counts.push_back(std::move(row));
        out.weight_schedule.push_back(w);
        size = 0.0;
        for (double x : out.counts.back())
            size += x;
        out.expected_list_sizes.push_back(size);
    }

    const auto &last = out.counts.back();
    for (int j = 0; j < static_cast<int>(last.size()); ++j) {
        if (last[j] >= 1.0) {
            out.r_alg = j;
            break;
        }
    }
    return out;
}

ListDynamicsReport list_dynamics_report(const StGenParams &params, const DecoderConfig &cfg) {
    if (cfg.round_weight != 2)
        throw std::invalid_argument("list_dynamics_report: requires round weight limit 2");
    const DistortionProfile prof = distortion_profile(params, cfg);

    ListDynamicsReport rep;
    rep.steps = params.blocks;
    const int m = params.k2 + params.n2;
    const double c2 = binomial(m, 2);
    const double pow2 = std::ldexp(1.0, params.n2);
    rep.growth_threshold = (pow2 - params.k2 - params.n2 - 1) / c2;
    rep.growth_always_expected = rep.growth_threshold <= 0.0;

    bool any_run_unresolved = false;
    int run_start = 0; // 0-based step index of the current constant-cap run
    int run_decrease_at = -1;
    bool every_increment_grew = true;

    for (int i = 0; i + 1 < params.blocks; ++i) {
        const int wi = prof.weight_schedule[i];
        const int wn = prof.weight_schedule[i + 1];
        const double size_i = prof.expected_list_sizes[i];
        const double size_n = prof.expected_list_sizes[i + 1];

        // One-step recurrence for the next list size (round weight limit 2).
        double predicted;
        if (wn == wi) {
            predicted = (prof.ball(i + 1, wi) + m * prof.ball(i + 1, wi - 1) +
                         c2 * prof.ball(i + 1, wi - 2)) /
                        pow2;
        } else {
            predicted = ((m + 1) * prof.ball(i + 1, wi) + c2 * prof.ball(i + 1, wi - 1)) / pow2;
        }
        const double direct = prof.ball(i + 2, wn);
        rep.recurrence_max_rel_err = std::max(rep.recurrence_max_rel_err,
                                              rel_err(predicted, direct));

        if (wn == wi) {
            // Shrink conditions at constant cap, evaluated on the weight
            // classes above the (cutoff-determined) bottom of the ball.
            int jmin = -1;
            for (int j = 0; j <= wi; ++j) {
                if (prof.ball(i + 1, j) > kSmallBall) {
                    jmin = j;
                    break;
                }
            }
            if (jmin >= 0) {
                for (int j = jmin; j <= wi; ++j) {
                    const double before = prof.ball(i + 1, j);
                    const double after = prof.ball(i + 2, j);
                    double cond_lhs, cond_rhs;
                    if (j == jmin) {
                        // The bottom class always shrinks by the 2^-n2 factor.
                        cond_lhs = 0.0;
                        cond_rhs = 1.0;
                    } else if (j == jmin + 1) {
                        cond_lhs = m / (pow2 - 1.0) * prof.ball(i + 1, jmin);
                        cond_rhs = before;
                    } else {
                        cond_lhs = (m * prof.ball(i + 1, j - 1) + c2 * prof.ball(i + 1, j - 2)) /
                                   (pow2 - 1.0);
                        cond_rhs = before;
                    }
                    if (rel_err(cond_lhs, cond_rhs) <= kBoundaryRel ||
                        rel_err(after, before) <= kBoundaryRel) {
                        ++rep.shrink_boundary;
                        continue;
                    }
                    ++rep.shrink_checks;
                    const bool predicted_shrink = cond_lhs < cond_rhs;
                    const bool observed_shrink = after < before;
                    if (predicted_shrink != observed_shrink)
                        ++rep.shrink_mismatches;
                }
            }
            // Track the first strict decrease within the constant-cap run.
            if (run_decrease_at < 0 && size_n < size_i)
                run_decrease_at = i - run_start;
        } else {
            // Cap increment: close out the run, then audit the growth rule.
            if (i > run_start && run_decrease_at < 0)
                any_run_unresolved = true;
            if (run_decrease_at >= 0)
                rep.max_steps_to_decrease = std::max(rep.max_steps_to_decrease, run_decrease_at);
            run_start = i + 1;
            run_decrease_at = -1;

            const double ball_below = prof.ball(i + 1, wi - 1);
            const double threshold = rep.growth_threshold * size_i;
            if (rel_err(ball_below, threshold) > kBoundaryRel &&
                rel_err(size_n, size_i) > kBoundaryRel) {
                ++rep.growth_checks;
                const bool predicted_growth = ball_below > threshold;
                const bool observed_growth = size_n > size_i;
                if (predicted_growth != observed_growth)
                    ++rep.growth_mismatches;
            }
            if (!(size_n > size_i))
                every_increment_grew = false;
        }
    }
    // A trailing run truncated by the last block is not evidence either way.
    if (run_decrease_at >= 0)
        rep.max_steps_to_decrease = std::max(rep.max_steps_to_decrease, run_decrease_at);

    rep.recurrence_consistent = rep.recurrence_max_rel_err <= 1e-12;
    rep.every_run_decreased = !any_run_unresolved;
    rep.every_increment_grew = every_increment_grew;
    return rep;
}

} // namespace stgen
