#pragma once

#include <cstdint>

#include "airoas/model.hpp"
#include "airoas/rng.hpp"

namespace airoas::domains {

/// 1D corridor with state-dependent observation noise: readings sharpen
/// near the light and blur away from it. The agent moves in steps of
/// alpha or declares goal completion, which ends the episode.
struct LightDarkParams {
    double alpha = 1.0;
    double light = 10.0;
    double goal_center = 0.0;
    double goal_radius = 1.0;
    double noise_floor = 0.1;
    double step_cost = -1.0;
    double declare_reward = 10.0;
    double declare_penalty = -10.0;
    double discount = 0.9;
    double init_mean = 2.0;
    double init_std = 2.0;
    double obs_bin_width = 0.5;
    double mutation_sigma_scale = 0.5;
};

class LightDark {
public:
    struct State {
        double x = 0.0;
        bool done = false;
        bool operator==(const State&) const = default;
    };
    struct Observation {
        double reading = 0.0;
        bool end = false;
    };

    static constexpr Action kLeft = 0;
    static constexpr Action kRight = 1;
    static constexpr Action kDeclare = 2;

    explicit LightDark(LightDarkParams params = {});

    const LightDarkParams& params() const { return params_; }

    State initial_state(Rng& rng) const;
    Step<State, Observation> step(const State& s, Action a, Rng& rng) const;
    double obs_density(const Observation& o, const State& successor, Action a) const;
    ObsKey obs_key(const Observation& o) const;
    int action_count() const { return 3; }
    double discount() const { return params_.discount; }
    bool is_terminal(const State& s) const { return s.done; }
    MutationProposal<State> propose_mutation(const State& s, const Observation& o, Action a,
                                             Rng& rng) const;

    const char* action_name(Action a) const;

    /// Reading noise scale at position x; minimal at the light.
    double noise_sigma(double x) const;

private:
    LightDarkParams params_;
};

}  // namespace airoas::domains
