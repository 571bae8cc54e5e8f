#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "airoas/model.hpp"
#include "airoas/particles.hpp"

namespace airoas {

template <PomdpModel M>
struct BeliefNode;

/// Action layer of the search tree: per-action value bounds, the mean
/// immediate reward under the parent belief, and one child belief per
/// unique observation key with its estimated branch probability.
template <PomdpModel M>
struct ActionNode {
    struct Child {
        std::unique_ptr<BeliefNode<M>> node;
        double obs_prob = 0.0;
    };

    Action action = 0;
    double lower = 0.0;
    double upper = 0.0;
    double mean_reward = 0.0;
    std::map<ObsKey, Child> children;
};

/// Belief layer: weighted particles, depth, value bounds, and the
/// (action, observation) edge that produced this node. Sibling nodes
/// created by one expansion share identical particle states and differ
/// only in weights until annealed importance resampling runs here.
template <PomdpModel M>
struct BeliefNode {
    using Belief = WeightedParticleSet<typename M::State>;
    using Edge = std::pair<Action, typename M::Observation>;

    Belief belief;
    int depth = 0;
    double lower = 0.0;
    double upper = 0.0;
    std::optional<Edge> incoming_edge;
    std::vector<ActionNode<M>> children;
    bool air_applied = false;
    /// Set when a degenerate branch (zero total weight) was sealed off.
    bool solved = false;

    bool is_leaf() const { return children.empty(); }
    double gap() const { return upper - lower; }
};

}  // namespace airoas
