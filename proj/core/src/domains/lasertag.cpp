#include "airoas/domains/lasertag.hpp"

#include <cmath>

namespace airoas::domains {

namespace {

constexpr ObsKey kEndKey = 0;
constexpr double kMinMutationSigma = 1e-3;
constexpr int kBeamDx[LaserTag::kBeams] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kBeamDy[LaserTag::kBeams] = {1, 1, 0, -1, -1, -1, 0, 1};

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

LaserTag::LaserTag(LaserTagParams params)
    : params_(params),
      map_(make_random_obstacle_map(params.width, params.height, params.obstacles,
                                    params.layout_seed)) {}

LaserTag::State LaserTag::initial_state(Rng& rng) const {
    State s;
    s.agent = static_cast<std::uint8_t>(rng.uniform_below(map_.free_count()));
    s.target = static_cast<std::uint8_t>(rng.uniform_below(map_.free_count()));
    return s;
}

int LaserTag::beam_distance(const State& s, int beam) const {
    const auto [ax, ay] = map_.xy(s.agent);
    const auto [tx, ty] = map_.xy(s.target);
    int d = 1;
    while (true) {
        const int x = ax + d * kBeamDx[beam];
        const int y = ay + d * kBeamDy[beam];
        if (!map_.is_free(x, y)) return d;
        if (x == tx && y == ty) return d;
        ++d;
    }
}

double LaserTag::beam_mass(int reading, int true_distance) const {
    const double sigma = params_.beam_sigma;
    const double upper = reading >= kMaxReading
                             ? 1.0
                             : normal_cdf((reading + 0.5 - true_distance) / sigma);
    const double lower =
        reading <= 0 ? 0.0 : normal_cdf((reading - 0.5 - true_distance) / sigma);
    return upper - lower;
}

LaserTag::Observation LaserTag::observe(const State& s, Rng& rng) const {
    Observation o;
    for (int beam = 0; beam < kBeams; ++beam) {
        const double noisy = rng.normal(beam_distance(s, beam), params_.beam_sigma);
        const double rounded = std::round(noisy);
        o.readings[beam] = static_cast<std::uint8_t>(
            std::min(std::max(rounded, 0.0), static_cast<double>(kMaxReading)));
    }
    return o;
}

Step<LaserTag::State, LaserTag::Observation> LaserTag::step(const State& s, Action a,
                                                            Rng& rng) const {
    if (s.tagged) return {s, Observation{{}, true}, 0.0};

    State next = s;
    double reward;
    if (a == kTag) {
        if (s.agent == s.target) {
            next.tagged = true;
            return {next, Observation{{}, true}, params_.tag_reward};
        }
        reward = params_.tag_penalty;
    } else {
        next.agent = static_cast<std::uint8_t>(map_.move(s.agent, a));
        reward = params_.step_cost;
    }
    next.target = static_cast<std::uint8_t>(
        opponent_flee(map_, next.agent, s.target, params_.flee_prob, rng));
    return {next, observe(next, rng), reward};
}

double LaserTag::obs_density(const Observation& o, const State& successor, Action) const {
    if (successor.tagged) return o.end ? 1.0 : 0.0;
    if (o.end) return 0.0;
    double density = 1.0;
    for (int beam = 0; beam < kBeams; ++beam)
        density *= beam_mass(o.readings[beam], beam_distance(successor, beam));
    return density;
}

ObsKey LaserTag::obs_key(const Observation& o) const {
    if (o.end) return kEndKey;
    ObsKey key = 0;
    for (int beam = 0; beam < kBeams; ++beam)
        key = (key << 4) | static_cast<ObsKey>(o.readings[beam]);
    return 1 + key;
}

double LaserTag::mutation_sigma(const State& s, const Observation& o) const {
    double mismatch = 0.0;
    for (int beam = 0; beam < kBeams; ++beam)
        mismatch += std::abs(static_cast<double>(o.readings[beam]) - beam_distance(s, beam));
    mismatch /= kBeams;
    return std::max(params_.mutation_sigma_scale * mismatch, kMinMutationSigma);
}

MutationProposal<LaserTag::State> LaserTag::propose_mutation(const State& s,
                                                             const Observation& o, Action,
                                                             Rng& rng) const {
    if (s.tagged || o.end) return {s, 1.0, 1.0};

    // Both positions are hidden; propose each from its own discretized
    // Gaussian and multiply the factorized densities.
    const double sigma = mutation_sigma(s, o);
    const DiscreteGaussianKernel fwd_agent(map_, s.agent, sigma);
    const DiscreteGaussianKernel fwd_target(map_, s.target, sigma);
    const int agent_cell = fwd_agent.sample(rng);
    const int target_cell = fwd_target.sample(rng);

    MutationProposal<State> proposal;
    proposal.state = State{static_cast<std::uint8_t>(agent_cell),
                           static_cast<std::uint8_t>(target_cell), false};
    proposal.forward_density = fwd_agent.density(agent_cell) * fwd_target.density(target_cell);

    const double rev_sigma = mutation_sigma(proposal.state, o);
    const DiscreteGaussianKernel rev_agent(map_, agent_cell, rev_sigma);
    const DiscreteGaussianKernel rev_target(map_, target_cell, rev_sigma);
    proposal.reverse_density = rev_agent.density(s.agent) * rev_target.density(s.target);
    return proposal;
}

std::size_t LaserTag::state_space_size() const {
    const auto cells = static_cast<std::size_t>(map_.free_count());
    return cells * cells + cells;
}

const char* LaserTag::action_name(Action a) const {
    switch (a) {
        case 0: return "north";
        case 1: return "east";
        case 2: return "south";
        case 3: return "west";
        case kTag: return "tag";
        default: return "?";
    }
}

}  // namespace airoas::domains
