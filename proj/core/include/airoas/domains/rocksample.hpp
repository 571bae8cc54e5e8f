#pragma once

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "airoas/model.hpp"

namespace airoas::domains {

/// Grid exploration with hidden rock qualities: sample good rocks for
/// reward, sense them from a distance with accuracy decaying
/// exponentially, and exit east. Rock positions come from an explicit list
/// or are drawn from the layout seed.
struct RockSampleParams {
    int size = 11;
    int rock_count = 11;
    std::vector<std::pair<int, int>> rock_positions;
    std::uint64_t layout_seed = 1;
    double half_efficiency_distance = 20.0;
    double good_sample_reward = 10.0;
    double bad_sample_penalty = -10.0;
    double exit_reward = 10.0;
    double discount = 0.95;
    /// Up to this many good rocks the MDP oracle solves the visit order
    /// exactly; beyond it the admissible per-rock relaxation is used.
    int exact_mdp_rock_limit = 6;
};

class RockSample {
public:
    struct State {
        std::uint8_t x = 0;
        std::uint8_t y = 0;
        std::uint16_t rock_mask = 0;  // bit i set: rock i is good
        bool done = false;
        bool operator==(const State&) const = default;
    };
    enum class Observation : std::uint8_t { kNone = 0, kGood = 1, kBad = 2 };

    static constexpr Action kNorth = 0;
    static constexpr Action kEast = 1;
    static constexpr Action kSouth = 2;
    static constexpr Action kWest = 3;
    static constexpr Action kSample = 4;
    static constexpr Action kSenseBase = 5;

    explicit RockSample(RockSampleParams params = {});

    const RockSampleParams& params() const { return params_; }
    const std::vector<std::pair<int, int>>& rock_positions() const { return rocks_; }

    State initial_state(Rng& rng) const;
    Step<State, Observation> step(const State& s, Action a, Rng& rng) const;
    double obs_density(const Observation& o, const State& successor, Action a) const;
    ObsKey obs_key(const Observation& o) const { return static_cast<ObsKey>(o); }
    int action_count() const { return kSenseBase + params_.rock_count; }
    double discount() const { return params_.discount; }
    bool is_terminal(const State& s) const { return s.done; }
    MutationProposal<State> propose_mutation(const State& s, const Observation& o, Action a,
                                             Rng& rng) const;

    std::uint64_t state_key(const State& s) const {
        return static_cast<std::uint64_t>(s.x) | (static_cast<std::uint64_t>(s.y) << 8) |
               (static_cast<std::uint64_t>(s.rock_mask) << 16) |
               (static_cast<std::uint64_t>(s.done) << 40);
    }

    /// Fully observable value with rock qualities known: the optimal
    /// collect-and-exit plan, exact for few good rocks, otherwise the
    /// admissible relaxation summing each rock's directly-reached value.
    double mdp_value(const State& s) const;

    /// Exact optimal visit-order value; exponential in good rocks.
    double mdp_value_exact(const State& s) const;
    /// Admissible relaxation: never below any policy's value.
    double mdp_value_relaxed(const State& s) const;

    /// Probability the sensor reports rock i's true quality from distance d.
    double sense_accuracy(double distance) const;

    std::size_t state_space_size() const;

    const char* action_name(Action a) const;
    std::string action_label(Action a) const;

private:
    double rock_distance(const State& s, int rock) const;
    int exit_moves(int x) const { return params_.size - x; }

    RockSampleParams params_;
    std::vector<std::pair<int, int>> rocks_;
    std::vector<int> rock_at_cell_;  // size*size, -1 if no rock
    mutable std::unordered_map<std::uint64_t, double> mdp_cache_;
    mutable std::mutex mdp_cache_mutex_;
};

}  // namespace airoas::domains
