#include "airoas/domains/rocksample.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace airoas::domains {

RockSample::RockSample(RockSampleParams params) : params_(std::move(params)) {
    const int n = params_.size;
    if (n < 1) throw std::invalid_argument("RockSample: map size must be positive");
    if (params_.rock_count > 16)
        throw std::invalid_argument("RockSample: at most 16 rocks supported");

    if (!params_.rock_positions.empty()) {
        if (static_cast<int>(params_.rock_positions.size()) != params_.rock_count)
            throw std::invalid_argument("RockSample: rock position count mismatch");
        rocks_ = params_.rock_positions;
    } else {
        Rng rng(params_.layout_seed);
        std::vector<std::uint8_t> used(static_cast<std::size_t>(n) * n, 0);
        while (static_cast<int>(rocks_.size()) < params_.rock_count) {
            const int x = static_cast<int>(rng.uniform_below(n));
            const int y = static_cast<int>(rng.uniform_below(n));
            if (!used[static_cast<std::size_t>(y) * n + x]) {
                used[static_cast<std::size_t>(y) * n + x] = 1;
                rocks_.emplace_back(x, y);
            }
        }
    }
    rock_at_cell_.assign(static_cast<std::size_t>(n) * n, -1);
    for (std::size_t i = 0; i < rocks_.size(); ++i) {
        const auto [x, y] = rocks_[i];
        if (x < 0 || x >= n || y < 0 || y >= n)
            throw std::invalid_argument("RockSample: rock outside the map");
        rock_at_cell_[static_cast<std::size_t>(y) * n + x] = static_cast<int>(i);
    }
}

RockSample::State RockSample::initial_state(Rng& rng) const {
    State s;
    s.x = 0;
    s.y = static_cast<std::uint8_t>(params_.size / 2);
    s.rock_mask = 0;
    for (int i = 0; i < params_.rock_count; ++i)
        if (rng.uniform01() < 0.5) s.rock_mask |= static_cast<std::uint16_t>(1u << i);
    return s;
}

double RockSample::rock_distance(const State& s, int rock) const {
    const double dx = static_cast<double>(s.x) - rocks_[rock].first;
    const double dy = static_cast<double>(s.y) - rocks_[rock].second;
    return std::sqrt(dx * dx + dy * dy);
}

double RockSample::sense_accuracy(double distance) const {
    return 0.5 + 0.5 * std::exp2(-distance / params_.half_efficiency_distance);
}

Step<RockSample::State, RockSample::Observation> RockSample::step(const State& s, Action a,
                                                                  Rng& rng) const {
    if (s.done) return {s, Observation::kNone, 0.0};

    State next = s;
    if (a == kNorth) {
        if (s.y + 1 < params_.size) next.y = static_cast<std::uint8_t>(s.y + 1);
        return {next, Observation::kNone, 0.0};
    }
    if (a == kSouth) {
        if (s.y > 0) next.y = static_cast<std::uint8_t>(s.y - 1);
        return {next, Observation::kNone, 0.0};
    }
    if (a == kWest) {
        if (s.x > 0) next.x = static_cast<std::uint8_t>(s.x - 1);
        return {next, Observation::kNone, 0.0};
    }
    if (a == kEast) {
        if (s.x + 1 < params_.size) {
            next.x = static_cast<std::uint8_t>(s.x + 1);
            return {next, Observation::kNone, 0.0};
        }
        next.done = true;
        return {next, Observation::kNone, params_.exit_reward};
    }
    if (a == kSample) {
        const int rock = rock_at_cell_[static_cast<std::size_t>(s.y) * params_.size + s.x];
        if (rock < 0) return {next, Observation::kNone, 0.0};
        const auto bit = static_cast<std::uint16_t>(1u << rock);
        if (s.rock_mask & bit) {
            next.rock_mask = static_cast<std::uint16_t>(s.rock_mask & ~bit);
            return {next, Observation::kNone, params_.good_sample_reward};
        }
        return {next, Observation::kNone, params_.bad_sample_penalty};
    }

    const int rock = a - kSenseBase;
    if (rock < 0 || rock >= params_.rock_count)
        throw std::invalid_argument("RockSample: unknown action " + std::to_string(a));
    const double accuracy = sense_accuracy(rock_distance(s, rock));
    const bool good = s.rock_mask & (1u << rock);
    const bool correct = rng.uniform01() < accuracy;
    const bool report_good = correct == good;
    return {next, report_good ? Observation::kGood : Observation::kBad, 0.0};
}

double RockSample::obs_density(const Observation& o, const State& successor, Action a) const {
    if (successor.done) return o == Observation::kNone ? 1.0 : 0.0;
    if (a >= kSenseBase && a < kSenseBase + params_.rock_count) {
        if (o == Observation::kNone) return 0.0;
        const int rock = a - kSenseBase;
        const double accuracy = sense_accuracy(rock_distance(successor, rock));
        const bool good = successor.rock_mask & (1u << rock);
        const bool report_good = o == Observation::kGood;
        return report_good == good ? accuracy : 1.0 - accuracy;
    }
    return o == Observation::kNone ? 1.0 : 0.0;
}

MutationProposal<RockSample::State> RockSample::propose_mutation(const State& s,
                                                                 const Observation& o,
                                                                 Action a, Rng&) const {
    // The observation informs about exactly one rock; flip that bit with a
    // symmetric proposal and leave everything else alone.
    if (s.done || o == Observation::kNone || a < kSenseBase ||
        a >= kSenseBase + params_.rock_count)
        return {s, 1.0, 1.0};
    MutationProposal<State> proposal{s, 1.0, 1.0};
    proposal.state.rock_mask ^= static_cast<std::uint16_t>(1u << (a - kSenseBase));
    return proposal;
}

double RockSample::mdp_value(const State& s) const {
    const int good = std::popcount(static_cast<unsigned>(s.rock_mask));
    if (good <= params_.exact_mdp_rock_limit) {
        const std::uint64_t key = state_key(s);
        std::lock_guard<std::mutex> lock(mdp_cache_mutex_);
        auto it = mdp_cache_.find(key);
        if (it != mdp_cache_.end()) return it->second;
        const double value = mdp_value_exact(s);
        mdp_cache_.emplace(key, value);
        return value;
    }
    return mdp_value_relaxed(s);
}

double RockSample::mdp_value_relaxed(const State& s) const {
    if (s.done) return 0.0;
    const double gamma = params_.discount;
    double value = params_.exit_reward * std::pow(gamma, exit_moves(s.x) - 1);
    for (int i = 0; i < params_.rock_count; ++i) {
        if (!(s.rock_mask & (1u << i))) continue;
        const int d = std::abs(s.x - rocks_[i].first) + std::abs(s.y - rocks_[i].second);
        value += params_.good_sample_reward * std::pow(gamma, d);
    }
    return value;
}

double RockSample::mdp_value_exact(const State& s) const {
    if (s.done) return 0.0;
    const double gamma = params_.discount;

    std::vector<int> good;
    for (int i = 0; i < params_.rock_count; ++i)
        if (s.rock_mask & (1u << i)) good.push_back(i);
    const int g = static_cast<int>(good.size());

    // Value-to-go over (position, remaining subset): either exit east now
    // or travel to a remaining good rock, sample it, and continue. Sampling
    // takes one action after arrival, so its reward lands at gamma^dist.
    const int positions = g + 1;  // index 0: current cell; 1..g: rocks
    auto pos_xy = [&](int p) -> std::pair<int, int> {
        if (p == 0) return {s.x, s.y};
        return rocks_[good[p - 1]];
    };
    std::vector<double> table(static_cast<std::size_t>(positions) << g, -1.0);

    auto solve = [&](auto&& self, int p, unsigned remaining) -> double {
        double& memo = table[(static_cast<std::size_t>(p) << g) | remaining];
        if (memo >= 0.0) return memo;
        const auto [x, y] = pos_xy(p);
        double best = params_.exit_reward * std::pow(gamma, params_.size - x - 1);
        for (int r = 0; r < g; ++r) {
            if (!(remaining & (1u << r))) continue;
            const auto [rx, ry] = rocks_[good[r]];
            const int d = std::abs(x - rx) + std::abs(y - ry);
            const double value =
                std::pow(gamma, d) * (params_.good_sample_reward +
                                      gamma * self(self, r + 1, remaining & ~(1u << r)));
            best = std::max(best, value);
        }
        memo = best;
        return best;
    };
    return solve(solve, 0, g == 0 ? 0u : (1u << g) - 1u);
}

std::size_t RockSample::state_space_size() const {
    const auto cells = static_cast<std::size_t>(params_.size) * params_.size;
    return cells * (std::size_t{1} << params_.rock_count);
}

const char* RockSample::action_name(Action a) const {
    switch (a) {
        case kNorth: return "north";
        case kEast: return "east";
        case kSouth: return "south";
        case kWest: return "west";
        case kSample: return "sample";
        default: return "sense";
    }
}

std::string RockSample::action_label(Action a) const {
    if (a < kSenseBase) return action_name(a);
    return "sense_" + std::to_string(a - kSenseBase);
}

}  // namespace airoas::domains
