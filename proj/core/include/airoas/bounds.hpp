#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <variant>

#include "airoas/errors.hpp"
#include "airoas/model.hpp"
#include "airoas/particles.hpp"
#include "airoas/planner.hpp"

namespace airoas {

/// Leaf bound initializers are composed from one lower-bound atom and one
/// upper-bound atom, e.g. fixed constants on both sides, or a fixed-action
/// rollout lower paired with an MDP-approximation upper.
struct FixedValueSpec {
    double value = 0.0;
};
struct FixedActionRolloutSpec {
    int horizon = 40;
};
struct MdpApproxSpec {};

using LowerBoundSpec = std::variant<FixedValueSpec, FixedActionRolloutSpec>;
using UpperBoundSpec = std::variant<FixedValueSpec, MdpApproxSpec>;

struct BoundSpec {
    LowerBoundSpec lower = FixedValueSpec{0.0};
    UpperBoundSpec upper = FixedValueSpec{0.0};
};

/// Belief-independent constant bounds.
inline Bounds fixed_bounds(double lower, double upper) {
    if (lower > upper)
        throw std::invalid_argument("fixed_bounds: lower exceeds upper");
    return Bounds{lower, upper};
}

/// Discounted return of applying one action from one state until the
/// horizon or a terminal state. Observations are ignored.
template <PomdpModel M>
double rollout_return(const typename M::State& start, Action a, const M& model, int horizon,
                      Rng& rng) {
    typename M::State state = start;
    double value = 0.0;
    double discount = 1.0;
    const double gamma = model.discount();
    for (int t = 0; t < horizon && !model.is_terminal(state); ++t) {
        Step<typename M::State, typename M::Observation> step = model.step(state, a, rng);
        value += discount * step.reward;
        discount *= gamma;
        state = std::move(step.state);
    }
    return value;
}

/// Lower bound from the best fixed-action policy: every particle is rolled
/// forward under the same repeated action; the bound is the max over
/// actions of the weight-averaged discounted return.
template <PomdpModel M>
double fixed_action_rollout_lower(const WeightedParticleSet<typename M::State>& b,
                                  const M& model, int horizon, Rng& rng) {
    if (b.empty())
        throw std::invalid_argument("fixed_action_rollout_lower: empty belief");
    const double total = b.total_weight();
    double best = -std::numeric_limits<double>::infinity();
    for (Action a = 0; a < model.action_count(); ++a) {
        double sum = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j)
            sum += b.weights[j] * rollout_return(b.states[j], a, model, horizon, rng);
        best = std::max(best, sum / total);
    }
    return best;
}

/// Upper bound from the fully observable approximation: weight-averaged
/// V_MDP over particles, with hidden components treated as known.
template <PomdpModel M>
double mdp_upper(const WeightedParticleSet<typename M::State>& b, const M& model) {
    if (b.empty()) throw std::invalid_argument("mdp_upper: empty belief");
    if constexpr (MdpValueModel<M>) {
        const double total = b.total_weight();
        double sum = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j)
            sum += b.weights[j] * model.mdp_value(b.states[j]);
        return sum / total;
    } else {
        throw UnsupportedBoundError("mdp_upper: model exposes no MDP value oracle");
    }
}

namespace detail {

/// Episode-scoped memo for fixed-action rollouts on models with stable
/// state keys. Rollouts are re-seeded per (state, action) so cached and
/// fresh evaluations coincide.
template <PomdpModel M>
class RolloutCache {
public:
    double value(const typename M::State& s, Action a, const M& model, int horizon,
                 std::uint64_t base_seed, Rng& rng) {
        if constexpr (StateKeyedModel<M>) {
            const std::uint64_t key =
                derive_seed(model.state_key(s), static_cast<std::uint64_t>(a));
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
            Rng rollout_rng(derive_seed(base_seed, key));
            const double v = rollout_return(s, a, model, horizon, rollout_rng);
            cache_.emplace(key, v);
            return v;
        } else {
            return rollout_return(s, a, model, horizon, rng);
        }
    }

private:
    std::unordered_map<std::uint64_t, double> cache_;
};

template <PomdpModel M>
double lower_bound(const LowerBoundSpec& spec, const WeightedParticleSet<typename M::State>& b,
                   const M& model, RolloutCache<M>& cache, std::uint64_t seed, Rng& rng) {
    if (const auto* fixed = std::get_if<FixedValueSpec>(&spec)) return fixed->value;
    const int horizon = std::get<FixedActionRolloutSpec>(spec).horizon;
    const double total = b.total_weight();
    double best = -std::numeric_limits<double>::infinity();
    for (Action a = 0; a < model.action_count(); ++a) {
        double sum = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j)
            sum += b.weights[j] * cache.value(b.states[j], a, model, horizon, seed, rng);
        best = std::max(best, sum / total);
    }
    return best;
}

template <PomdpModel M>
double upper_bound(const UpperBoundSpec& spec, const WeightedParticleSet<typename M::State>& b,
                   const M& model) {
    if (const auto* fixed = std::get_if<FixedValueSpec>(&spec)) return fixed->value;
    return mdp_upper(b, model);
}

}  // namespace detail

/// Builds the leaf initializer for a planner run. The returned callable may
/// carry a rollout memo shared across all leaves of the episode. The upper
/// side is clamped to the lower so initializers always satisfy l <= u.
template <PomdpModel M>
BoundInitializer<M> make_bound_initializer(const BoundSpec& spec, std::uint64_t seed = 0) {
    using Belief = WeightedParticleSet<typename M::State>;
    auto cache = std::make_shared<detail::RolloutCache<M>>();
    return [spec, cache, seed](const Belief& b, const M& model, Rng& rng) {
        const double lower = detail::lower_bound(spec.lower, b, model, *cache, seed, rng);
        const double upper = detail::upper_bound(spec.upper, b, model);
        return Bounds{lower, std::max(lower, upper)};
    };
}

}  // namespace airoas
