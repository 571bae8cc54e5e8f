#include "airoas/domains/tag.hpp"

#include <cmath>

namespace airoas::domains {

namespace {
constexpr ObsKey kEndKey = 0;
constexpr ObsKey kSameCellKey = 1;
constexpr double kMinMutationSigma = 1e-3;
}  // namespace

Tag::Tag(TagParams params) : params_(params), map_(make_tag_map()) {}

Tag::State Tag::initial_state(Rng& rng) const {
    State s;
    s.agent = static_cast<std::uint8_t>(rng.uniform_below(map_.free_count()));
    s.opponent = static_cast<std::uint8_t>(rng.uniform_below(map_.free_count()));
    return s;
}

Tag::Observation Tag::observe(const State& s) const {
    if (s.tagged) return Observation{0, false, true};
    return Observation{s.agent, s.agent == s.opponent, false};
}

Step<Tag::State, Tag::Observation> Tag::step(const State& s, Action a, Rng& rng) const {
    if (s.tagged) return {s, Observation{0, false, true}, 0.0};

    State next = s;
    double reward;
    if (a == kTag) {
        if (s.agent == s.opponent) {
            next.tagged = true;
            return {next, Observation{0, false, true}, params_.tag_reward};
        }
        reward = params_.tag_penalty;
    } else {
        next.agent = static_cast<std::uint8_t>(map_.move(s.agent, a));
        reward = params_.step_cost;
    }
    next.opponent = static_cast<std::uint8_t>(
        opponent_flee(map_, next.agent, s.opponent, params_.flee_prob, rng));
    return {next, observe(next), reward};
}

double Tag::obs_density(const Observation& o, const State& successor, Action) const {
    if (successor.tagged) return o.end ? 1.0 : 0.0;
    if (o.end) return 0.0;
    if (o.same_cell) return successor.agent == successor.opponent ? 1.0 : 0.0;
    return successor.agent == o.agent_cell && successor.agent != successor.opponent ? 1.0
                                                                                    : 0.0;
}

ObsKey Tag::obs_key(const Observation& o) const {
    if (o.end) return kEndKey;
    if (o.same_cell) return kSameCellKey;
    return 2 + static_cast<ObsKey>(o.agent_cell);
}

MutationProposal<Tag::State> Tag::propose_mutation(const State& s, const Observation& o,
                                                   Action, Rng& rng) const {
    if (s.tagged || o.end) return {s, 1.0, 1.0};

    // Only the opponent position is hidden, so only it is moved. When the
    // observation reports co-location the proposal width follows the
    // distance to the reported cell; otherwise a one-cell diffusion keeps
    // hypotheses local.
    double sigma;
    if (o.same_cell) {
        const int distance = GridMap::manhattan(map_.xy(s.opponent), map_.xy(o.agent_cell));
        sigma = std::max(params_.mutation_sigma_scale * distance, kMinMutationSigma);
    } else {
        sigma = params_.mutation_base_sigma;
    }

    const DiscreteGaussianKernel forward(map_, s.opponent, sigma);
    const int candidate_cell = forward.sample(rng);
    const DiscreteGaussianKernel reverse(map_, candidate_cell, sigma);

    MutationProposal<State> proposal;
    proposal.state = s;
    proposal.state.opponent = static_cast<std::uint8_t>(candidate_cell);
    proposal.forward_density = forward.density(candidate_cell);
    proposal.reverse_density = reverse.density(s.opponent);
    return proposal;
}

std::size_t Tag::state_space_size() const {
    const auto cells = static_cast<std::size_t>(map_.free_count());
    return cells * cells + cells;
}

std::size_t Tag::observation_space_size() const {
    return static_cast<std::size_t>(map_.free_count()) + 1;
}

const char* Tag::action_name(Action a) const {
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
