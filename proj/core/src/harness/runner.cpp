#include "airoas/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "airoas/air.hpp"
#include "airoas/bounds.hpp"
#include "airoas/planner.hpp"
#include "airoas/sir.hpp"

namespace airoas::harness {

namespace {

using nlohmann::json;

template <typename M>
std::string label_of(const M& model, Action a) {
    if constexpr (requires { model.action_label(a); }) {
        return model.action_label(a);
    } else if constexpr (requires { model.action_name(a); }) {
        return model.action_name(a);
    } else {
        return std::to_string(a);
    }
}

/// Domain params carry the mutation scale so proposals see the same value
/// the planner config names.
template <typename P>
P with_mutation_scale(P params, double scale) {
    params.mutation_sigma_scale = scale;
    return params;
}

template <PomdpModel M>
WeightedParticleSet<typename M::State> initial_belief(const M& model, int particles,
                                                      Rng& rng) {
    WeightedParticleSet<typename M::State> belief;
    belief.states.reserve(particles);
    belief.weights.assign(particles, 1.0);
    for (int i = 0; i < particles; ++i) belief.states.push_back(model.initial_state(rng));
    return belief;
}

/// Root-belief tracking via one annealed pass: propagate first, then
/// anneal against the received observation.
template <PomdpModel M>
WeightedParticleSet<typename M::State> air_root_update(
    const WeightedParticleSet<typename M::State>& b, Action a,
    const typename M::Observation& o, const M& model, const AirConfig& air, Rng& rng) {
    WeightedParticleSet<typename M::State> propagated;
    propagated.states.reserve(b.size());
    propagated.weights = b.weights;
    for (std::size_t j = 0; j < b.size(); ++j)
        propagated.states.push_back(model.step(b.states[j], a, rng).state);
    return annealed_importance_resampling(std::move(propagated), o, a, air, model, rng);
}

template <PomdpModel M>
EpisodeResult run_episode_on(const M& model, const ExperimentConfig& cfg,
                             std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();

    Rng rng_truth(derive_seed(seed, 1));
    Rng rng_belief(derive_seed(seed, 2));
    Rng rng_plan(derive_seed(seed, 3));

    PlannerConfig pcfg;
    pcfg.max_depth = cfg.planner.max_depth;
    pcfg.time_budget_s = cfg.planner.time_budget_s;
    pcfg.trial_cap = cfg.planner.trial_cap;
    pcfg.xi = cfg.planner.xi;
    pcfg.gamma = model.discount();
    pcfg.use_air = cfg.solver == Solver::kAiroas;
    pcfg.air.schedule = tempering_schedule(cfg.planner.tempering_steps);
    pcfg.air.target_inefficiency = cfg.planner.target_inefficiency;
    pcfg.air.mutation_sigma_scale = cfg.planner.mutation_sigma_scale;
    pcfg.air.mutation_sweeps = cfg.planner.mutation_sweeps;

    const BoundInitializer<M> bound_init =
        make_bound_initializer<M>(cfg.planner.bounds, derive_seed(seed, 4));
    const SirConfig sir_cfg{cfg.ess_threshold_fraction};

    typename M::State state = model.initial_state(rng_truth);
    auto belief = initial_belief(model, cfg.planner.particles, rng_belief);

    EpisodeResult result;
    result.seed = seed;
    double discount = 1.0;
    const double gamma = model.discount();

    for (int t = 0; t < cfg.max_steps && !model.is_terminal(state); ++t) {
        Planner<M> planner(model, pcfg, bound_init, rng_plan);
        const Action action = planner.plan(belief);

        const auto step = model.step(state, action, rng_truth);
        result.discounted_return += discount * step.reward;
        discount *= gamma;
        ++result.steps;

        StepRecord record;
        record.t = t;
        record.action = action;
        record.action_label = label_of(model, action);
        record.obs_key = model.obs_key(step.obs);
        record.reward = step.reward;
        record.root_lower = planner.root().lower;
        record.root_upper = planner.root().upper;
        result.log.push_back(std::move(record));

        state = step.state;
        if (model.is_terminal(state)) break;

        try {
            if (cfg.root_update == RootUpdate::kSir) {
                belief = sir_update(belief, action, step.obs, model, sir_cfg, rng_belief);
            } else {
                belief = air_root_update(belief, action, step.obs, model, pcfg.air,
                                         rng_belief);
            }
        } catch (const ZeroTotalWeightError&) {
            ++result.belief_collapses;
            belief = initial_belief(model, cfg.planner.particles, rng_belief);
        }
    }

    result.wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

template <typename F>
auto with_domain(const ExperimentConfig& cfg, F&& f) {
    const double scale = cfg.planner.mutation_sigma_scale;
    return std::visit(
        [&](const auto& params) {
            using P = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<P, domains::LightDarkParams>) {
                return f(domains::LightDark(with_mutation_scale(params, scale)));
            } else if constexpr (std::is_same_v<P, domains::TagParams>) {
                return f(domains::Tag(with_mutation_scale(params, scale)));
            } else if constexpr (std::is_same_v<P, domains::LaserTagParams>) {
                return f(domains::LaserTag(with_mutation_scale(params, scale)));
            } else {
                return f(domains::RockSample(params));
            }
        },
        cfg.domain);
}

}  // namespace

std::uint64_t episode_seed(std::uint64_t master_seed, int episode_index) {
    return derive_seed(master_seed, static_cast<std::uint64_t>(episode_index));
}

EpisodeResult run_episode(const ExperimentConfig& cfg, std::uint64_t seed) {
    return with_domain(cfg,
                       [&](const auto& model) { return run_episode_on(model, cfg, seed); });
}

int worker_count() {
    if (const char* env = std::getenv("AIROAS_WORKERS")) {
        const int workers = std::atoi(env);
        if (workers > 0) return workers;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

SummaryRow summarize_episodes(const ExperimentConfig& cfg,
                              const std::vector<EpisodeResult>& episodes) {
    std::vector<double> returns;
    std::vector<double> steps;
    std::vector<double> walls;
    returns.reserve(episodes.size());
    for (const EpisodeResult& e : episodes) {
        returns.push_back(e.discounted_return);
        steps.push_back(static_cast<double>(e.steps));
        walls.push_back(e.wall_s);
    }

    SummaryRow row;
    row.domain = cfg.domain_name;
    row.solver = solver_name(cfg.solver);
    row.particles = cfg.planner.particles;
    row.episodes = static_cast<int>(episodes.size());
    row.mean_return = mean(returns);
    row.sem = standard_error(returns);
    row.sem_defined = episodes.size() > 1;
    row.median_return = median(returns);
    row.min_return = *std::min_element(returns.begin(), returns.end());
    row.max_return = *std::max_element(returns.begin(), returns.end());
    row.mean_steps = mean(steps);
    row.mean_wall_s = mean(walls);
    row.total_wall_s = 0.0;
    for (double w : walls) row.total_wall_s += w;
    return row;
}

ExperimentResult run_experiment_in_memory(const ExperimentConfig& cfg) {
    return with_domain(cfg, [&](const auto& model) {
        ExperimentResult result;
        result.episodes.resize(cfg.episodes);

        const int workers = std::min(worker_count(), cfg.episodes);
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                while (true) {
                    const int i = next.fetch_add(1);
                    if (i >= cfg.episodes) return;
                    result.episodes[i] =
                        run_episode_on(model, cfg, episode_seed(cfg.master_seed, i));
                }
            });
        }
        for (std::thread& t : pool) t.join();

        result.summary = summarize_episodes(cfg, result.episodes);
        return result;
    });
}

std::string episode_to_json(int index, const EpisodeResult& episode) {
    json log = json::array();
    for (const StepRecord& r : episode.log) {
        log.push_back({{"t", r.t},
                       {"action", r.action},
                       {"action_label", r.action_label},
                       {"obs_key", r.obs_key},
                       {"reward", r.reward},
                       {"root_lower", r.root_lower},
                       {"root_upper", r.root_upper}});
    }
    const json record = {{"episode", index},
                         {"seed", episode.seed},
                         {"discounted_return", episode.discounted_return},
                         {"steps", episode.steps},
                         {"wall_s", episode.wall_s},
                         {"belief_collapses", episode.belief_collapses},
                         {"log", log}};
    return record.dump();
}

EpisodeResult episode_from_json(const std::string& line) {
    const json record = json::parse(line);
    EpisodeResult episode;
    episode.seed = record.at("seed").get<std::uint64_t>();
    episode.discounted_return = record.at("discounted_return").get<double>();
    episode.steps = record.at("steps").get<int>();
    episode.wall_s = record.at("wall_s").get<double>();
    episode.belief_collapses = record.at("belief_collapses").get<int>();
    for (const json& entry : record.at("log")) {
        StepRecord r;
        r.t = entry.at("t").get<int>();
        r.action = entry.at("action").get<Action>();
        r.action_label = entry.at("action_label").get<std::string>();
        r.obs_key = entry.at("obs_key").get<ObsKey>();
        r.reward = entry.at("reward").get<double>();
        r.root_lower = entry.at("root_lower").get<double>();
        r.root_upper = entry.at("root_upper").get<double>();
        episode.log.push_back(std::move(r));
    }
    return episode;
}

std::vector<EpisodeResult> load_episodes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_episodes: cannot open '" + path + "'");
    std::vector<EpisodeResult> episodes;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) episodes.push_back(episode_from_json(line));
    return episodes;
}

double recompute_return(const EpisodeResult& episode, double gamma) {
    double value = 0.0;
    double discount = 1.0;
    for (const StepRecord& r : episode.log) {
        value += discount * r.reward;
        discount *= gamma;
    }
    return value;
}

double domain_discount(const ExperimentConfig& cfg) {
    return std::visit([](const auto& params) { return params.discount; }, cfg.domain);
}

namespace {

void write_experiment_files(const ExperimentConfig& cfg, const ExperimentResult& result,
                            const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    std::ofstream episodes(dir / "episodes.jsonl");
    for (std::size_t i = 0; i < result.episodes.size(); ++i)
        episodes << episode_to_json(static_cast<int>(i), result.episodes[i]) << '\n';

    std::ofstream summary(dir / "summary.csv");
    summary << summary_csv_header() << '\n' << summary_csv_row(result.summary) << '\n';

    std::ofstream config(dir / "config.json");
    config << experiment_config_to_json(cfg) << '\n';
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult result = run_experiment_in_memory(cfg);
    write_experiment_files(cfg, result, cfg.out_dir);
    return result;
}

std::vector<SummaryRow> run_ablation_sweep(const ExperimentConfig& cfg,
                                           const std::vector<int>& particle_counts) {
    if (particle_counts.empty())
        throw std::invalid_argument("run_ablation_sweep: no particle counts");

    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);

    std::vector<SummaryRow> rows;
    for (const Solver solver : {Solver::kAiroas, Solver::kNoAir}) {
        for (const int count : particle_counts) {
            ExperimentConfig cell = cfg;
            cell.solver = solver;
            cell.planner.particles = count;
            cell.out_dir = (dir / "cells" /
                            (solver_name(solver) + "_" + std::to_string(count)))
                               .string();
            rows.push_back(run_experiment(cell).summary);
        }
    }

    std::ofstream table(dir / "ablation.csv");
    table << summary_csv_header() << '\n';
    for (const SummaryRow& row : rows) table << summary_csv_row(row) << '\n';

    std::ofstream config(dir / "config.json");
    config << experiment_config_to_json(cfg) << '\n';
    return rows;
}

}  // namespace airoas::harness
