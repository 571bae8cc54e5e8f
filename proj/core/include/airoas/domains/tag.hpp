#pragma once

#include <cstdint>
#include <memory>

#include "airoas/domains/grid.hpp"
#include "airoas/model.hpp"

namespace airoas::domains {

/// Pursuit on the 29-cell arena: the agent tags the opponent by occupying
/// its cell and executing the tag action. The agent observes its own
/// position always and the opponent's only when co-located.
struct TagParams {
    double flee_prob = 0.8;
    double step_cost = -1.0;
    double tag_reward = 10.0;
    double tag_penalty = -10.0;
    double discount = 0.95;
    double mutation_sigma_scale = 0.5;
    /// Proposal width for opponent diffusion when the observation carries
    /// no opponent information.
    double mutation_base_sigma = 1.0;
};

class Tag {
public:
    struct State {
        std::uint8_t agent = 0;
        std::uint8_t opponent = 0;
        bool tagged = false;
        bool operator==(const State&) const = default;
    };
    struct Observation {
        std::uint8_t agent_cell = 0;
        bool same_cell = false;
        bool end = false;
    };

    static constexpr Action kTag = 4;

    explicit Tag(TagParams params = {});

    const TagParams& params() const { return params_; }
    const GridMap& map() const { return map_; }

    State initial_state(Rng& rng) const;
    Step<State, Observation> step(const State& s, Action a, Rng& rng) const;
    double obs_density(const Observation& o, const State& successor, Action a) const;
    ObsKey obs_key(const Observation& o) const;
    int action_count() const { return 5; }
    double discount() const { return params_.discount; }
    bool is_terminal(const State& s) const { return s.tagged; }
    MutationProposal<State> propose_mutation(const State& s, const Observation& o, Action a,
                                             Rng& rng) const;

    std::uint64_t state_key(const State& s) const {
        return static_cast<std::uint64_t>(s.agent) | (static_cast<std::uint64_t>(s.opponent) << 8) |
               (static_cast<std::uint64_t>(s.tagged) << 16);
    }

    /// Live states are agent x opponent pairs plus one tagged terminal per
    /// agent cell: 29 * 29 + 29 = 870.
    std::size_t state_space_size() const;
    /// Own-position observations plus the co-location observation: 30.
    std::size_t observation_space_size() const;

    const char* action_name(Action a) const;

private:
    Observation observe(const State& s) const;

    TagParams params_;
    GridMap map_;
};

}  // namespace airoas::domains
