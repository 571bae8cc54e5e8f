#include <benchmark/benchmark.h>

#include "airoas/air.hpp"
#include "airoas/bounds.hpp"
#include "airoas/domains/lightdark.hpp"
#include "airoas/domains/rocksample.hpp"
#include "airoas/particles.hpp"
#include "airoas/planner.hpp"

using namespace airoas;
using domains::LightDark;
using domains::RockSample;

namespace {

WeightedParticleSet<LightDark::State> lightdark_belief(const LightDark& model, int n,
                                                       Rng& rng) {
    WeightedParticleSet<LightDark::State> b;
    b.states.reserve(n);
    for (int i = 0; i < n; ++i) b.states.push_back(model.initial_state(rng));
    b.weights.assign(n, 1.0);
    return b;
}

void BM_SystematicResample(benchmark::State& state) {
    Rng rng(1);
    LightDark model;
    auto b = lightdark_belief(model, static_cast<int>(state.range(0)), rng);
    for (std::size_t i = 0; i < b.size(); ++i) b.weights[i] = rng.uniform01() + 1e-3;
    for (auto _ : state) benchmark::DoNotOptimize(systematic_resample(b, rng));
}
BENCHMARK(BM_SystematicResample)->Arg(1000)->Arg(10000);

void BM_AirPass(benchmark::State& state) {
    Rng rng(2);
    LightDark model;
    auto b = lightdark_belief(model, static_cast<int>(state.range(0)), rng);
    AirConfig cfg;
    cfg.schedule = tempering_schedule(100);
    cfg.target_inefficiency = 2.0;
    const LightDark::Observation o{8.0, false};
    for (auto _ : state) {
        auto copy = b;
        benchmark::DoNotOptimize(
            annealed_importance_resampling(std::move(copy), o, LightDark::kRight, cfg, model, rng));
    }
}
BENCHMARK(BM_AirPass)->Arg(100)->Arg(1000);

void BM_ExpandLightDark(benchmark::State& state) {
    Rng rng(3);
    LightDark model;
    auto b = lightdark_belief(model, static_cast<int>(state.range(0)), rng);
    const BoundInitializer<LightDark> init = [](const auto&, const LightDark&, Rng&) {
        return Bounds{-11.0, 11.0};
    };
    for (auto _ : state) {
        BeliefNode<LightDark> node;
        node.belief = b;
        expand(node, model, init, rng);
        benchmark::DoNotOptimize(node.children.size());
    }
}
BENCHMARK(BM_ExpandLightDark)->Arg(100)->Arg(1000);

void BM_PlanDecisionLightDark(benchmark::State& state) {
    Rng rng(4);
    LightDark model;
    auto b = lightdark_belief(model, 500, rng);
    PlannerConfig cfg;
    cfg.max_depth = 30;
    cfg.trial_cap = static_cast<int>(state.range(0));
    cfg.time_budget_s = 1e9;
    cfg.gamma = model.discount();
    cfg.air.schedule = tempering_schedule(100);
    cfg.air.target_inefficiency = 3.0;
    const BoundInitializer<LightDark> init = [](const auto&, const LightDark&, Rng&) {
        return Bounds{-11.0, 11.0};
    };
    for (auto _ : state) {
        Planner<LightDark> planner(model, cfg, init, rng);
        benchmark::DoNotOptimize(planner.plan(b));
    }
}
BENCHMARK(BM_PlanDecisionLightDark)->Arg(1)->Arg(4);

void BM_RockSampleMdpValue(benchmark::State& state) {
    domains::RockSampleParams params;
    params.size = 11;
    params.rock_count = 11;
    const RockSample model(params);
    Rng rng(5);
    std::vector<RockSample::State> states;
    for (int i = 0; i < 64; ++i) states.push_back(model.initial_state(rng));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.mdp_value(states[i % states.size()]));
        ++i;
    }
}
BENCHMARK(BM_RockSampleMdpValue);

}  // namespace
