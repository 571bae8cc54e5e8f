#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "airoas/model.hpp"
#include "airoas/rng.hpp"

namespace airoas::testing {

inline double normal_pdf(double x, double mean, double sigma) {
    constexpr double kSqrt2Pi = 2.506628274631000502415765284811;
    const double z = (x - mean) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * kSqrt2Pi);
}

/// 1D single-action model with a pluggable observation density; the
/// workhorse for tempering, mutation, and resampling tests.
struct ScalarModel {
    struct State {
        double x = 0.0;
        bool operator==(const State&) const = default;
    };
    using Observation = double;

    std::function<double(double obs, double x)> likelihood =
        [](double obs, double x) { return normal_pdf(obs, x, 1.0); };
    double init_mean = 0.0;
    double init_std = 1.0;
    double drift = 0.0;
    double process_std = 0.0;
    double gamma = 0.95;
    /// Fixed-width proposals are symmetric; distance-scaled ones follow
    /// sigma = sigma_scale * |x - obs| with a 1e-3 floor.
    bool distance_scaled_proposal = false;
    double proposal_sigma = 0.5;
    double sigma_scale = 0.5;

    State initial_state(Rng& rng) const {
        return State{init_mean + init_std * rng.normal()};
    }
    Step<State, Observation> step(const State& s, Action, Rng& rng) const {
        const double next = s.x + drift + process_std * rng.normal();
        return {State{next}, next, 0.0};
    }
    double obs_density(const Observation& o, const State& s, Action) const {
        return likelihood(o, s.x);
    }
    ObsKey obs_key(const Observation& o) const {
        return static_cast<ObsKey>(static_cast<std::int64_t>(std::llround(o * 16.0)) + (1LL << 40));
    }
    int action_count() const { return 1; }
    double discount() const { return gamma; }
    bool is_terminal(const State&) const { return false; }
    MutationProposal<State> propose_mutation(const State& s, const Observation& o, Action,
                                             Rng& rng) const {
        MutationProposal<State> p;
        if (distance_scaled_proposal) {
            const double fwd_sigma = std::max(sigma_scale * std::abs(s.x - o), 1e-3);
            p.state = State{s.x + fwd_sigma * rng.normal()};
            const double rev_sigma = std::max(sigma_scale * std::abs(p.state.x - o), 1e-3);
            p.forward_density = normal_pdf(p.state.x, s.x, fwd_sigma);
            p.reverse_density = normal_pdf(s.x, p.state.x, rev_sigma);
        } else {
            p.state = State{s.x + proposal_sigma * rng.normal()};
            p.forward_density = normal_pdf(p.state.x, s.x, proposal_sigma);
            p.reverse_density = normal_pdf(s.x, p.state.x, proposal_sigma);
        }
        return p;
    }
};

/// Three-state model with one dummy observation and a uniform symmetric
/// proposal over the other two states; small enough to enumerate the
/// induced Metropolis-Hastings transition matrix.
struct DiscreteToyModel {
    struct State {
        int i = 0;
        bool operator==(const State&) const = default;
    };
    using Observation = int;

    std::array<double, 3> likelihood{0.2, 0.5, 0.3};

    State initial_state(Rng& rng) const {
        return State{static_cast<int>(rng.uniform_below(3))};
    }
    Step<State, Observation> step(const State& s, Action, Rng&) const { return {s, 0, 0.0}; }
    double obs_density(const Observation&, const State& s, Action) const {
        return likelihood[static_cast<std::size_t>(s.i)];
    }
    ObsKey obs_key(const Observation&) const { return 0; }
    int action_count() const { return 1; }
    double discount() const { return 0.9; }
    bool is_terminal(const State&) const { return false; }
    MutationProposal<State> propose_mutation(const State& s, const Observation&, Action,
                                             Rng& rng) const {
        const int other = static_cast<int>(rng.uniform_below(2));
        int target = 0;
        int seen = 0;
        for (int candidate = 0; candidate < 3; ++candidate) {
            if (candidate == s.i) continue;
            if (seen == other) {
                target = candidate;
                break;
            }
            ++seen;
        }
        return {State{target}, 0.5, 0.5};
    }
};

/// Fully observable deterministic 3-state MDP embedded as a POMDP: the
/// observation reveals the successor state exactly.
struct TinyMdp {
    struct State {
        int i = 0;
        bool operator==(const State&) const = default;
    };
    using Observation = int;

    static constexpr int kStates = 3;
    static constexpr int kActions = 2;
    std::array<std::array<int, kActions>, kStates> next{{{1, 2}, {2, 0}, {0, 1}}};
    std::array<std::array<double, kActions>, kStates> reward{
        {{1.0, 0.3}, {0.0, 0.7}, {2.0, 0.1}}};
    double gamma = 0.9;
    int start = 0;

    State initial_state(Rng&) const { return State{start}; }
    Step<State, Observation> step(const State& s, Action a, Rng&) const {
        const int successor = next[static_cast<std::size_t>(s.i)][static_cast<std::size_t>(a)];
        return {State{successor}, successor,
                reward[static_cast<std::size_t>(s.i)][static_cast<std::size_t>(a)]};
    }
    double obs_density(const Observation& o, const State& s, Action) const {
        return o == s.i ? 1.0 : 0.0;
    }
    ObsKey obs_key(const Observation& o) const { return static_cast<ObsKey>(o); }
    int action_count() const { return kActions; }
    double discount() const { return gamma; }
    bool is_terminal(const State&) const { return false; }
    MutationProposal<State> propose_mutation(const State& s, const Observation&, Action,
                                             Rng&) const {
        return {s, 1.0, 1.0};
    }
};

/// One hidden state, two actions with fixed rewards, constant observation:
/// the planner should find the geometric-series value of the better arm.
struct BanditModel {
    struct State {
        bool operator==(const State&) const = default;
    };
    using Observation = int;

    std::array<double, 2> arm_reward{1.0, 0.0};
    double gamma = 0.5;

    State initial_state(Rng&) const { return State{}; }
    Step<State, Observation> step(const State& s, Action a, Rng&) const {
        return {s, 0, arm_reward[static_cast<std::size_t>(a)]};
    }
    double obs_density(const Observation&, const State&, Action) const { return 1.0; }
    ObsKey obs_key(const Observation&) const { return 0; }
    int action_count() const { return 2; }
    double discount() const { return gamma; }
    bool is_terminal(const State&) const { return false; }
    MutationProposal<State> propose_mutation(const State& s, const Observation&, Action,
                                             Rng&) const {
        return {s, 1.0, 1.0};
    }
};

/// Single action variant used for trivial planning cases.
struct SingleActionModel {
    struct State {
        bool operator==(const State&) const = default;
    };
    using Observation = int;

    State initial_state(Rng&) const { return State{}; }
    Step<State, Observation> step(const State& s, Action, Rng&) const { return {s, 0, 0.5}; }
    double obs_density(const Observation&, const State&, Action) const { return 1.0; }
    ObsKey obs_key(const Observation&) const { return 0; }
    int action_count() const { return 1; }
    double discount() const { return 0.9; }
    bool is_terminal(const State&) const { return false; }
    MutationProposal<State> propose_mutation(const State& s, const Observation&, Action,
                                             Rng&) const {
        return {s, 1.0, 1.0};
    }
};

/// Random-walk model whose observation density is the same constant for
/// every (o, s, a): annealed importance resampling is provably inert here.
struct FlatObsModel {
    struct State {
        double x = 0.0;
        bool operator==(const State&) const = default;
    };
    using Observation = int;

    double density = 0.37;
    double gamma = 0.9;

    State initial_state(Rng& rng) const { return State{rng.normal()}; }
    Step<State, Observation> step(const State& s, Action a, Rng& rng) const {
        const double next = s.x + (a == 0 ? 1.0 : -1.0) + 0.1 * rng.normal();
        return {State{next}, 0, next > 0 ? 0.25 : -0.25};
    }
    double obs_density(const Observation&, const State&, Action) const { return density; }
    ObsKey obs_key(const Observation&) const { return 0; }
    int action_count() const { return 2; }
    double discount() const { return gamma; }
    bool is_terminal(const State&) const { return false; }
    MutationProposal<State> propose_mutation(const State& s, const Observation&, Action,
                                             Rng& rng) const {
        MutationProposal<State> p;
        p.state = State{s.x + 0.5 * rng.normal()};
        p.forward_density = normal_pdf(p.state.x, s.x, 0.5);
        p.reverse_density = normal_pdf(s.x, p.state.x, 0.5);
        return p;
    }
};

/// 1D linear-Gaussian system with known Kalman solution.
struct LinearGaussianModel {
    struct State {
        double x = 0.0;
        bool operator==(const State&) const = default;
    };
    using Observation = double;

    double phi = 1.0;
    double process_std = 0.3;
    double obs_std = 0.5;
    double init_mean = 0.0;
    double init_std = 1.0;

    State initial_state(Rng& rng) const {
        return State{init_mean + init_std * rng.normal()};
    }
    Step<State, Observation> step(const State& s, Action, Rng& rng) const {
        const double next = phi * s.x + process_std * rng.normal();
        return {State{next}, next + obs_std * rng.normal(), 0.0};
    }
    double obs_density(const Observation& o, const State& s, Action) const {
        return normal_pdf(o, s.x, obs_std);
    }
    ObsKey obs_key(const Observation& o) const {
        return static_cast<ObsKey>(static_cast<std::int64_t>(std::llround(o * 32.0)) + (1LL << 40));
    }
    int action_count() const { return 1; }
    double discount() const { return 0.99; }
    bool is_terminal(const State&) const { return false; }
    MutationProposal<State> propose_mutation(const State& s, const Observation&, Action,
                                             Rng& rng) const {
        MutationProposal<State> p;
        p.state = State{s.x + 0.3 * rng.normal()};
        p.forward_density = normal_pdf(p.state.x, s.x, 0.3);
        p.reverse_density = normal_pdf(s.x, p.state.x, 0.3);
        return p;
    }
};

}  // namespace airoas::testing
