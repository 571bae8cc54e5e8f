#pragma once

#include <concepts>
#include <cstdint>

#include "airoas/rng.hpp"

namespace airoas {

/// Actions are indices into the model's finite ordered action list.
using Action = std::int32_t;

/// Hashable grouping key for tree branching. Domains with continuous
/// observation spaces supply a binning key; discrete spaces use identity.
using ObsKey = std::uint64_t;

template <typename S, typename O>
struct Step {
    S state;
    O obs;
    double reward = 0.0;
};

/// Candidate state from a domain proposal kernel, with the kernel density
/// of proposing it (forward) and of proposing the original state back from
/// the candidate (reverse).
template <typename S>
struct MutationProposal {
    S state;
    double forward_density = 1.0;
    double reverse_density = 1.0;
};

/// Generative environment interface. A terminal state must self-transition
/// with zero reward under every action, and transitions into or within
/// terminal states must emit the domain's reserved terminal observation,
/// whose density is one on terminal successors and zero elsewhere.
template <typename M>
concept PomdpModel = requires(const M& m, const typename M::State& s,
                              const typename M::Observation& o, Action a, Rng& rng) {
    typename M::State;
    typename M::Observation;
    { m.initial_state(rng) } -> std::same_as<typename M::State>;
    { m.step(s, a, rng) } -> std::same_as<Step<typename M::State, typename M::Observation>>;
    { m.obs_density(o, s, a) } -> std::convertible_to<double>;
    { m.obs_key(o) } -> std::convertible_to<ObsKey>;
    { m.action_count() } -> std::convertible_to<int>;
    { m.discount() } -> std::convertible_to<double>;
    { m.is_terminal(s) } -> std::convertible_to<bool>;
    { m.propose_mutation(s, o, a, rng) } -> std::same_as<MutationProposal<typename M::State>>;
};

/// Models exposing a fully observable value oracle, used by the
/// MDP-approximation upper bound.
template <typename M>
concept MdpValueModel = PomdpModel<M> && requires(const M& m, const typename M::State& s) {
    { m.mdp_value(s) } -> std::convertible_to<double>;
};

/// Models exposing a stable 64-bit state key, enabling rollout caching.
template <typename M>
concept StateKeyedModel = PomdpModel<M> && requires(const M& m, const typename M::State& s) {
    { m.state_key(s) } -> std::convertible_to<std::uint64_t>;
};

}  // namespace airoas
