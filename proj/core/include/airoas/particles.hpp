#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "airoas/errors.hpp"
#include "airoas/rng.hpp"

namespace airoas {

/// Belief approximation: states plus unnormalized nonnegative weights,
/// kept in parallel arrays.
template <typename S>
struct WeightedParticleSet {
    std::vector<S> states;
    std::vector<double> weights;

    WeightedParticleSet() = default;
    WeightedParticleSet(std::vector<S> s, std::vector<double> w)
        : states(std::move(s)), weights(std::move(w)) {}

    std::size_t size() const { return states.size(); }
    bool empty() const { return states.empty(); }

    double total_weight() const {
        double sum = 0.0;
        for (double w : weights) sum += w;
        return sum;
    }
};

/// Weights scaled to sum to one. Input is unchanged.
inline std::vector<double> normalize_weights(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0))
        throw ZeroTotalWeightError("normalize_weights: total weight is zero");
    std::vector<double> out(weights.begin(), weights.end());
    const double inv = 1.0 / total;
    for (double& w : out) w *= inv;
    return out;
}

template <typename S>
std::vector<double> normalize_weights(const WeightedParticleSet<S>& b) {
    return normalize_weights(std::span<const double>(b.weights));
}

/// Effective sample size 1 / sum(w_i^2) for normalized weights; in [1, N].
inline double ess(std::span<const double> normalized_weights) {
    double sum_sq = 0.0;
    for (double w : normalized_weights) sum_sq += w * w;
    return sum_sq > 0.0 ? 1.0 / sum_sq : 0.0;
}

/// Deterministic core of systematic resampling: strata positions are
/// (j + u)/N over the normalized cumulative weights. Output weights are
/// reset to the mean input weight, so total weight is preserved exactly.
template <typename S>
WeightedParticleSet<S> systematic_resample_with_offset(const WeightedParticleSet<S>& b,
                                                       double u) {
    const std::size_t n = b.size();
    const double total = b.total_weight();
    if (!(total > 0.0))
        throw ZeroTotalWeightError("systematic_resample: total weight is zero");

    WeightedParticleSet<S> out;
    out.states.reserve(n);
    out.weights.assign(n, total / static_cast<double>(n));

    std::size_t i = 0;
    double cumulative = b.weights[0] / total;
    for (std::size_t j = 0; j < n; ++j) {
        const double pos = (static_cast<double>(j) + u) / static_cast<double>(n);
        while (pos > cumulative && i + 1 < n) {
            ++i;
            cumulative += b.weights[i] / total;
        }
        out.states.push_back(b.states[i]);
    }
    return out;
}

/// Low-variance resampling with replacement; expected count of particle i
/// is N * w_i / sum(w). Deterministic given the rng state.
template <typename S>
WeightedParticleSet<S> systematic_resample(const WeightedParticleSet<S>& b, Rng& rng) {
    return systematic_resample_with_offset(b, rng.uniform01());
}

}  // namespace airoas
