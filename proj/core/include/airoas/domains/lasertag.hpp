#pragma once

#include <array>
#include <cstdint>

#include "airoas/domains/grid.hpp"
#include "airoas/model.hpp"

namespace airoas::domains {

/// Tag variant on a 7 x 11 grid with obstacles where neither position is
/// observed; the agent senses eight noisy laser range readings instead.
struct LaserTagParams {
    int width = 11;
    int height = 7;
    int obstacles = 8;
    std::uint64_t layout_seed = 1;
    double flee_prob = 0.8;
    double step_cost = -1.0;
    double tag_reward = 10.0;
    double tag_penalty = -10.0;
    double discount = 0.95;
    /// Per-beam Gaussian noise before rounding to whole cells.
    double beam_sigma = 2.5;
    double mutation_sigma_scale = 0.5;
};

class LaserTag {
public:
    static constexpr int kBeams = 8;
    static constexpr int kMaxReading = 12;

    struct State {
        std::uint8_t agent = 0;
        std::uint8_t target = 0;
        bool tagged = false;
        bool operator==(const State&) const = default;
    };
    struct Observation {
        std::array<std::uint8_t, kBeams> readings{};
        bool end = false;
    };

    static constexpr Action kTag = 4;

    explicit LaserTag(LaserTagParams params = {});

    const LaserTagParams& params() const { return params_; }
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
        return static_cast<std::uint64_t>(s.agent) | (static_cast<std::uint64_t>(s.target) << 8) |
               (static_cast<std::uint64_t>(s.tagged) << 16);
    }

    std::size_t state_space_size() const;

    /// Cells until the beam hits an obstacle, a wall, or the target.
    int beam_distance(const State& s, int beam) const;
    /// Probability that one beam with true distance d reads r: the mass of
    /// N(d, sigma^2) in the rounding bin of r, with the boundary bins
    /// absorbing both tails.
    double beam_mass(int reading, int true_distance) const;

    const char* action_name(Action a) const;

private:
    Observation observe(const State& s, Rng& rng) const;
    double mutation_sigma(const State& s, const Observation& o) const;

    LaserTagParams params_;
    GridMap map_;
};

}  // namespace airoas::domains
