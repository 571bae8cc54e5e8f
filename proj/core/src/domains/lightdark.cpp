#include "airoas/domains/lightdark.hpp"

#include <cmath>
#include <stdexcept>

namespace airoas::domains {

namespace {

constexpr double kSqrt2Pi = 2.506628274631000502415765284811;
constexpr double kMinMutationSigma = 1e-3;
constexpr ObsKey kEndKey = 0;

double normal_pdf(double x, double mean, double sigma) {
    const double z = (x - mean) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * kSqrt2Pi);
}

std::uint64_t zigzag(std::int64_t v) {
    return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
}

}  // namespace

LightDark::LightDark(LightDarkParams params) : params_(params) {
    if (!(params_.alpha > 0.0))
        throw std::invalid_argument("LightDark: step size alpha must be positive");
}

double LightDark::noise_sigma(double x) const {
    return std::abs(x - params_.light) / std::sqrt(2.0) + params_.noise_floor;
}

LightDark::State LightDark::initial_state(Rng& rng) const {
    return State{rng.normal(params_.init_mean, params_.init_std), false};
}

Step<LightDark::State, LightDark::Observation> LightDark::step(const State& s, Action a,
                                                               Rng& rng) const {
    if (s.done) return {s, Observation{0.0, true}, 0.0};

    if (a == kDeclare) {
        const bool in_goal = std::abs(s.x - params_.goal_center) <= params_.goal_radius;
        const double reward = in_goal ? params_.declare_reward : params_.declare_penalty;
        return {State{s.x, true}, Observation{0.0, true}, reward};
    }

    const double next_x = a == kLeft ? s.x - params_.alpha : s.x + params_.alpha;
    const State next{next_x, false};
    const Observation obs{next_x + noise_sigma(next_x) * rng.normal(), false};
    return {next, obs, params_.step_cost};
}

double LightDark::obs_density(const Observation& o, const State& successor, Action) const {
    if (successor.done) return o.end ? 1.0 : 0.0;
    if (o.end) return 0.0;
    return normal_pdf(o.reading, successor.x, noise_sigma(successor.x));
}

ObsKey LightDark::obs_key(const Observation& o) const {
    if (o.end) return kEndKey;
    const auto bin = static_cast<std::int64_t>(std::floor(o.reading / params_.obs_bin_width));
    return 1 + zigzag(bin);
}

MutationProposal<LightDark::State> LightDark::propose_mutation(const State& s,
                                                               const Observation& o, Action,
                                                               Rng& rng) const {
    if (s.done || o.end) return {s, 1.0, 1.0};

    // Proposal width tracks how far the particle sits from the received
    // reading; the reverse kernel is the same rule evaluated at the
    // candidate, so the acceptance ratio stays exact.
    const double scale = params_.mutation_sigma_scale;
    const double sigma_fwd =
        std::max(scale * std::abs(s.x - o.reading), kMinMutationSigma);
    const double candidate_x = s.x + sigma_fwd * rng.normal();
    const double sigma_rev =
        std::max(scale * std::abs(candidate_x - o.reading), kMinMutationSigma);

    MutationProposal<State> proposal;
    proposal.state = State{candidate_x, false};
    proposal.forward_density = normal_pdf(candidate_x, s.x, sigma_fwd);
    proposal.reverse_density = normal_pdf(s.x, candidate_x, sigma_rev);
    return proposal;
}

const char* LightDark::action_name(Action a) const {
    switch (a) {
        case kLeft: return "left";
        case kRight: return "right";
        case kDeclare: return "declare";
        default: return "?";
    }
}

}  // namespace airoas::domains
