#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "airoas/errors.hpp"
#include "airoas/model.hpp"
#include "airoas/particles.hpp"
#include "airoas/rng.hpp"

namespace airoas {

/// Monotone tempering parameters beta_0 = 0 <= ... <= beta_K = 1 bridging
/// the state-transition distribution (beta = 0) to the observation-adapted
/// posterior (beta = 1).
struct TemperingSchedule {
    std::vector<double> betas;

    std::size_t steps() const { return betas.empty() ? 0 : betas.size() - 1; }
};

/// The sigmoid map applied to each point of the linearly spaced sequence:
/// beta(x) = 1 / (1 + exp(-10 (x - 0.5))).
double tempering_beta(double x);

/// Builds the schedule from K sigmoid-transformed points linearly spaced on
/// [1e-3, 1], then clamps the endpoints: an exact 0 is prepended and the
/// final entry is overwritten with exact 1, so the last bridging
/// distribution coincides with the posterior. Result has K + 1 entries.
TemperingSchedule tempering_schedule(int k);

struct AirConfig {
    TemperingSchedule schedule;
    /// Target inefficiency ratio r*; the anneal stops once the weight
    /// variance falls to this level. Bounded below by 1.
    double target_inefficiency = 2.0;
    /// Proportionality constant for the mutation proposal sigma. Domains
    /// receive the same value through their parameter structs.
    double mutation_sigma_scale = 0.5;
    /// Metropolis-Hastings sweeps per tempering step.
    int mutation_sweeps = 1;
};

/// Inefficiency score: the normalized second moment of the weights,
/// (1/M) sum_j (w_j / mean(w))^2. Scale-invariant, >= 1, and equal to 1
/// exactly when weights are uniform.
inline double inefficiency(std::span<const double> weights) {
    const std::size_t m = weights.size();
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0))
        throw ZeroTotalWeightError("inefficiency: total weight is zero");
    const double mean = total / static_cast<double>(m);
    double sum_sq = 0.0;
    for (double w : weights) {
        const double ratio = w / mean;
        sum_sq += ratio * ratio;
    }
    return sum_sq / static_cast<double>(m);
}

template <typename S>
double inefficiency(const WeightedParticleSet<S>& b) {
    return inefficiency(std::span<const double>(b.weights));
}

/// Tempered incremental reweighting: each weight is multiplied by
/// p(o | s_j, a)^(beta_k - beta_prev). States are unchanged. The product
/// of these increments over a full schedule telescopes to the one-shot
/// bootstrap weight p(o | s_j, a).
template <PomdpModel M>
WeightedParticleSet<typename M::State> update_weights(
    const WeightedParticleSet<typename M::State>& b, const typename M::Observation& o,
    Action a, double beta_k, double beta_prev, const M& model) {
    WeightedParticleSet<typename M::State> out = b;
    const double dbeta = beta_k - beta_prev;
    if (dbeta == 0.0) return out;

    double total = 0.0;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double density = model.obs_density(o, out.states[j], a);
        out.weights[j] *= std::pow(density, dbeta);
        total += out.weights[j];
    }
    if (!(total > 0.0))
        throw ZeroTotalWeightError(
            "update_weights: observation has zero density under every particle");
    return out;
}

/// Acceptance probability of a proposed particle move at inverse
/// temperature beta_k:
///   min{1, [q_fwd * p(o|s_new,a)^beta] / [q_rev * p(o|s_old,a)^beta]}.
/// A zero denominator accepts when the numerator is positive and rejects
/// the 0/0 case.
template <PomdpModel M>
double acceptance_probability(const typename M::State& current,
                              const typename M::State& candidate, double forward_density,
                              double reverse_density, const typename M::Observation& o,
                              Action a, double beta_k, const M& model) {
    const double numer =
        forward_density * std::pow(model.obs_density(o, candidate, a), beta_k);
    const double denom =
        reverse_density * std::pow(model.obs_density(o, current, a), beta_k);
    if (denom <= 0.0) return numer > 0.0 ? 1.0 : 0.0;
    const double ratio = numer / denom;
    return ratio < 1.0 ? ratio : 1.0;
}

/// One Metropolis-Hastings sweep: exactly one domain proposal per particle,
/// accepted with acceptance_probability. Weights are unchanged.
template <PomdpModel M>
WeightedParticleSet<typename M::State> mutate(const WeightedParticleSet<typename M::State>& b,
                                              const typename M::Observation& o, Action a,
                                              double beta_k, const M& model, Rng& rng) {
    WeightedParticleSet<typename M::State> out = b;
    for (std::size_t j = 0; j < out.size(); ++j) {
        MutationProposal<typename M::State> proposal =
            model.propose_mutation(out.states[j], o, a, rng);
        const double accept = acceptance_probability(
            out.states[j], proposal.state, proposal.forward_density,
            proposal.reverse_density, o, a, beta_k, model);
        if (rng.uniform01() < accept) out.states[j] = std::move(proposal.state);
    }
    return out;
}

/// Annealed Importance Resampling: walks the tempering schedule, applying
/// the incremental weight update at each step; exits once the inefficiency
/// score falls to the target ratio, otherwise tightens the target to the
/// current score, resamples, and mutates. The target mutation is scoped to
/// this call. Particle count is preserved.
template <PomdpModel M>
WeightedParticleSet<typename M::State> annealed_importance_resampling(
    WeightedParticleSet<typename M::State> b, const typename M::Observation& o, Action a,
    const AirConfig& cfg, const M& model, Rng& rng) {
    double target = cfg.target_inefficiency;
    const std::vector<double>& betas = cfg.schedule.betas;
    for (std::size_t k = 1; k < betas.size(); ++k) {
        b = update_weights(b, o, a, betas[k], betas[k - 1], model);
        const double score = inefficiency(b);
        if (score <= target) break;
        target = score;
        b = systematic_resample(b, rng);
        for (int sweep = 0; sweep < cfg.mutation_sweeps; ++sweep)
            b = mutate(b, o, a, betas[k], model, rng);
    }
    return b;
}

}  // namespace airoas
