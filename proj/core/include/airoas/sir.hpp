#pragma once

#include <utility>

#include "airoas/errors.hpp"
#include "airoas/model.hpp"
#include "airoas/particles.hpp"
#include "airoas/planner.hpp"

namespace airoas {

struct SirConfig {
    /// Resample when ESS drops below this fraction of the particle count.
    double ess_threshold_fraction = 0.5;
};

/// Bootstrap filter step: propagate every particle through the transition
/// model (the simulated observation and reward are discarded), reweight by
/// the density of the actually received observation, and resample when the
/// effective sample size falls below the threshold.
template <PomdpModel M>
WeightedParticleSet<typename M::State> sir_update(
    const WeightedParticleSet<typename M::State>& b, Action a,
    const typename M::Observation& o, const M& model, const SirConfig& cfg, Rng& rng) {
    WeightedParticleSet<typename M::State> out;
    out.states.reserve(b.size());
    out.weights.reserve(b.size());

    double total = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
        Step<typename M::State, typename M::Observation> step =
            model.step(b.states[j], a, rng);
        const double w = b.weights[j] * model.obs_density(o, step.state, a);
        out.states.push_back(std::move(step.state));
        out.weights.push_back(w);
        total += w;
    }
    if (!(total > 0.0))
        throw ZeroTotalWeightError(
            "sir_update: received observation impossible under every particle");

    const double effective = ess(normalize_weights(out));
    if (effective < cfg.ess_threshold_fraction * static_cast<double>(out.size()))
        out = systematic_resample(out, rng);
    return out;
}

/// The no-AIR ablation: the identical bound-guided search with annealed
/// importance resampling disabled, leaving leaf weights as the expansion's
/// likelihood weights.
template <PomdpModel M>
Action plan_no_air(const WeightedParticleSet<typename M::State>& root_belief, const M& model,
                   const PlannerConfig& cfg, const BoundInitializer<M>& bound_init,
                   Rng& rng) {
    PlannerConfig ablated = cfg;
    ablated.use_air = false;
    Planner<M> planner(model, ablated, bound_init, rng);
    return planner.plan(root_belief);
}

}  // namespace airoas
