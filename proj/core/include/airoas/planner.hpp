#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "airoas/air.hpp"
#include "airoas/errors.hpp"
#include "airoas/model.hpp"
#include "airoas/particles.hpp"
#include "airoas/tree.hpp"

namespace airoas {

/// Lower/upper value estimate for a fresh leaf.
struct Bounds {
    double lower = 0.0;
    double upper = 0.0;
};

template <PomdpModel M>
using BoundInitializer = std::function<Bounds(
    const WeightedParticleSet<typename M::State>&, const M&, Rng&)>;

struct PlannerConfig {
    int max_depth = 90;
    /// Wall-clock budget per decision in seconds; checked between trials.
    double time_budget_s = 5.0;
    /// Optional machine-independent cap on trials; 0 means unlimited.
    int trial_cap = 0;
    /// Target uncertainty-reduction fraction at the root, in (0, 1).
    double xi = 0.95;
    /// Discount factor; mirrors model.discount().
    double gamma = 0.95;
    AirConfig air;
    /// The no-resampling ablation runs the identical search with this off.
    bool use_air = true;
};

/// Optimistic action choice: the child with the maximal upper bound, ties
/// broken by lowest action index.
template <PomdpModel M>
ActionNode<M>& select_action(BeliefNode<M>& node) {
    if (node.is_leaf()) throw NotExpandedError("select_action: node has no children");
    ActionNode<M>* best = &node.children.front();
    for (ActionNode<M>& child : node.children)
        if (child.upper > best->upper) best = &child;
    return *best;
}

/// Bound gap at a node minus its depth-discounted share of the root gap:
/// [u(b) - l(b)] - xi [u(b0) - l(b0)] / gamma^d(b).
template <PomdpModel M>
double excess_uncertainty(const BeliefNode<M>& node, const BeliefNode<M>& root, double xi,
                          double gamma) {
    return node.gap() - xi * root.gap() / std::pow(gamma, node.depth);
}

/// Observation choice: the child belief maximizing p(o|b,a) * EU(child).
/// Returns nullptr ("solved") when that maximum is nonpositive, ending the
/// trial at this node.
template <PomdpModel M>
BeliefNode<M>* select_observation(ActionNode<M>& anode, const BeliefNode<M>& root,
                                  const PlannerConfig& cfg) {
    if (anode.children.empty())
        throw NotExpandedError("select_observation: action node has no children");
    BeliefNode<M>* best = nullptr;
    double best_score = 0.0;
    for (auto& [key, child] : anode.children) {
        const double score =
            child.obs_prob * excess_uncertainty(*child.node, root, cfg.xi, cfg.gamma);
        if (score > best_score) {
            best_score = score;
            best = child.node.get();
        }
    }
    return best;
}

/// Bellman refresh of one action node from its children:
///   u(b,a) = rho(b,a) + gamma * sum_o p(o|b,a) u(tau(b,a,o)),
/// and identically for the lower bound.
template <PomdpModel M>
void refresh_action_bounds(ActionNode<M>& anode, double gamma) {
    double lower_sum = 0.0;
    double upper_sum = 0.0;
    for (const auto& [key, child] : anode.children) {
        lower_sum += child.obs_prob * child.node->lower;
        upper_sum += child.obs_prob * child.node->upper;
    }
    anode.lower = anode.mean_reward + gamma * lower_sum;
    anode.upper = anode.mean_reward + gamma * upper_sum;
}

/// Refreshes a belief node's bounds as the max over its action children.
template <PomdpModel M>
void refresh_belief_bounds(BeliefNode<M>& node) {
    double best_lower = -std::numeric_limits<double>::infinity();
    double best_upper = -std::numeric_limits<double>::infinity();
    for (const ActionNode<M>& child : node.children) {
        if (child.lower > best_lower) best_lower = child.lower;
        if (child.upper > best_upper) best_upper = child.upper;
    }
    node.lower = best_lower;
    node.upper = best_upper;
}

/// Creates one action node per action by propagating every particle through
/// the simulator, grouping successors by observation key, and giving each
/// group a deep copy of the full successor set reweighted by its own
/// observation's likelihood. Branch probabilities are parent-weight shares
/// of the sampled observation keys; the mean immediate reward uses parent
/// weights since reward is incurred before the observation arrives.
/// Finishes with a local Bellman refresh so selection sees the new bounds.
template <PomdpModel M>
void expand(BeliefNode<M>& node, const M& model, const BoundInitializer<M>& bound_init,
            Rng& rng) {
    using S = typename M::State;
    using O = typename M::Observation;

    const std::size_t n = node.belief.size();
    const double parent_total = node.belief.total_weight();
    const int actions = model.action_count();
    node.children.reserve(static_cast<std::size_t>(actions));

    std::vector<S> successors(n);
    std::vector<O> observations;
    std::vector<double> rewards(n);
    observations.reserve(n);

    for (Action a = 0; a < actions; ++a) {
        ActionNode<M> anode;
        anode.action = a;

        observations.clear();
        double reward_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            Step<S, O> step = model.step(node.belief.states[j], a, rng);
            successors[j] = std::move(step.state);
            observations.push_back(std::move(step.obs));
            rewards[j] = step.reward;
            reward_sum += node.belief.weights[j] * step.reward;
        }
        anode.mean_reward = reward_sum / parent_total;

        // Group sampled observations by key; remember one representative
        // observation per group as the edge label.
        std::map<ObsKey, std::size_t> representative;
        std::map<ObsKey, double> key_mass;
        for (std::size_t j = 0; j < n; ++j) {
            const ObsKey key = model.obs_key(observations[j]);
            representative.emplace(key, j);
            key_mass[key] += node.belief.weights[j];
        }

        for (const auto& [key, rep_index] : representative) {
            const O& obs = observations[rep_index];
            auto child = std::make_unique<BeliefNode<M>>();
            child->depth = node.depth + 1;
            child->incoming_edge = std::make_pair(a, obs);
            child->belief.states = successors;
            child->belief.weights.resize(n);

            double child_total = 0.0;
            bool all_terminal = true;
            for (std::size_t j = 0; j < n; ++j) {
                const double w =
                    node.belief.weights[j] * model.obs_density(obs, successors[j], a);
                child->belief.weights[j] = w;
                child_total += w;
                if (w > 0.0 && !model.is_terminal(successors[j])) all_terminal = false;
            }

            if (!(child_total > 0.0)) {
                // Impossible branch: seal it off instead of poisoning the
                // search; its branch probability is zero anyway.
                child->lower = node.lower;
                child->upper = node.lower;
                child->solved = true;
            } else if (all_terminal) {
                child->lower = 0.0;
                child->upper = 0.0;
                child->air_applied = true;
            } else {
                // Guard against weight underflow deep in the tree; scaling
                // by a power of two preserves every weight ratio exactly.
                if (child_total < 1e-250 * static_cast<double>(n)) {
                    const double scale = std::exp2(
                        -std::ilogb(child_total / static_cast<double>(n)));
                    for (double& w : child->belief.weights) w *= scale;
                }
                const Bounds bounds = bound_init(child->belief, model, rng);
                child->lower = bounds.lower;
                child->upper = bounds.upper;
            }

            typename ActionNode<M>::Child entry;
            entry.node = std::move(child);
            entry.obs_prob = key_mass[key] / parent_total;
            anode.children.emplace(key, std::move(entry));
        }
        refresh_action_bounds(anode, model.discount());
        node.children.push_back(std::move(anode));
    }
    refresh_belief_bounds(node);
}

/// Bellman recomputation from the deepest path node up to the root:
///   u(b,a) = rho(b,a) + gamma * sum_o p(o|b,a) u(tau(b,a,o)),
///   u(b) = max_a u(b,a), and identically for lower bounds.
template <PomdpModel M>
void backup(std::vector<std::pair<BeliefNode<M>*, ActionNode<M>*>>& path, double gamma) {
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        auto [node, anode] = *it;
        refresh_action_bounds(*anode, gamma);
        refresh_belief_bounds(*node);
    }
}

/// Anytime bound-guided search. Each trial descends by optimistic action
/// choice and weighted-excess-uncertainty observation choice, running
/// annealed importance resampling on each leaf it meets (skipped at the
/// root, which has no incoming edge) before expanding it. Reaching the
/// depth cap clamps u(b) to l(b); the trial then backs its path up to the
/// root. Planning stops when the budget is spent or the root gap closes.
template <PomdpModel M>
class Planner {
public:
    using Belief = WeightedParticleSet<typename M::State>;

    Planner(const M& model, PlannerConfig cfg, BoundInitializer<M> bound_init, Rng& rng)
        : model_(model), cfg_(std::move(cfg)), bound_init_(std::move(bound_init)), rng_(rng) {}

    Action plan(const Belief& root_belief) {
        if (root_belief.empty())
            throw std::invalid_argument("plan: root belief is empty");
        if (!(root_belief.total_weight() > 0.0))
            throw ZeroTotalWeightError("plan: root belief carries no mass");
        const auto start = std::chrono::steady_clock::now();

        root_ = std::make_unique<BeliefNode<M>>();
        root_->belief = root_belief;
        trials_ = 0;

        while (root_->gap() > 0.0 || root_->is_leaf()) {
            if (cfg_.trial_cap > 0 && trials_ >= cfg_.trial_cap) break;
            if (trials_ > 0) {
                const std::chrono::duration<double> elapsed =
                    std::chrono::steady_clock::now() - start;
                if (elapsed.count() >= cfg_.time_budget_s) break;
            }
            run_trial();
            ++trials_;
        }
        return best_action();
    }

    const BeliefNode<M>& root() const { return *root_; }
    int trials() const { return trials_; }

private:
    void run_trial() {
        BeliefNode<M>* node = root_.get();
        std::vector<std::pair<BeliefNode<M>*, ActionNode<M>*>> path;

        while (node->depth < cfg_.max_depth) {
            if (node->is_leaf()) {
                if (!apply_air(*node, path)) break;
                if (node->solved) break;
                expand(*node, model_, bound_init_, rng_);
            }
            ActionNode<M>& anode = select_action(*node);
            BeliefNode<M>* next = select_observation(anode, *root_, cfg_);
            if (next == nullptr) break;
            path.emplace_back(node, &anode);
            node = next;
        }
        if (node->depth >= cfg_.max_depth) node->upper = node->lower;
        backup(path, cfg_.gamma);
    }

    /// Runs AIR once per node, on its first visit as a leaf. Returns false
    /// when the node had to be sealed because its mass vanished.
    bool apply_air(BeliefNode<M>& node,
                   const std::vector<std::pair<BeliefNode<M>*, ActionNode<M>*>>& path) {
        if (node.air_applied || !node.incoming_edge.has_value()) {
            node.air_applied = true;
            return true;
        }
        node.air_applied = true;
        if (!cfg_.use_air) return true;
        try {
            node.belief = annealed_importance_resampling(
                std::move(node.belief), node.incoming_edge->second,
                node.incoming_edge->first, cfg_.air, model_, rng_);
        } catch (const ZeroTotalWeightError&) {
            const double parent_lower = path.empty() ? 0.0 : path.back().first->lower;
            node.lower = parent_lower;
            node.upper = parent_lower;
            node.solved = true;
            return false;
        }
        return true;
    }

    Action best_action() const {
        if (root_->is_leaf()) return 0;
        const ActionNode<M>* best = &root_->children.front();
        for (const ActionNode<M>& child : root_->children)
            if (child.lower > best->lower) best = &child;
        return best->action;
    }

    const M& model_;
    PlannerConfig cfg_;
    BoundInitializer<M> bound_init_;
    Rng& rng_;
    std::unique_ptr<BeliefNode<M>> root_;
    int trials_ = 0;
};

/// One-shot planning entry point; see Planner for the search itself.
template <PomdpModel M>
Action plan(const WeightedParticleSet<typename M::State>& root_belief, const M& model,
            const PlannerConfig& cfg, const BoundInitializer<M>& bound_init, Rng& rng) {
    Planner<M> planner(model, cfg, bound_init, rng);
    return planner.plan(root_belief);
}

}  // namespace airoas
