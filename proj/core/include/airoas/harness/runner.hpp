#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "airoas/harness/config.hpp"
#include "airoas/harness/stats.hpp"
#include "airoas/model.hpp"

namespace airoas::harness {

struct StepRecord {
    int t = 0;
    Action action = 0;
    std::string action_label;
    ObsKey obs_key = 0;
    double reward = 0.0;
    double root_lower = 0.0;
    double root_upper = 0.0;
};

/// Fully deterministic given (config, seed), except the wall-time field.
struct EpisodeResult {
    std::uint64_t seed = 0;
    double discounted_return = 0.0;
    int steps = 0;
    double wall_s = 0.0;
    int belief_collapses = 0;
    std::vector<StepRecord> log;
};

/// Per-episode seeds derive from the master seed and the episode index
/// alone, so extending an experiment never perturbs earlier episodes.
std::uint64_t episode_seed(std::uint64_t master_seed, int episode_index);

/// Plays one episode: plan, execute against a ground-truth simulator,
/// receive the real observation, track the root belief. A belief collapse
/// (received observation impossible under every particle) reinitializes
/// the belief from the domain's initial distribution and is logged.
EpisodeResult run_episode(const ExperimentConfig& cfg, std::uint64_t seed);

struct ExperimentResult {
    std::vector<EpisodeResult> episodes;
    SummaryRow summary;
};

/// Runs all configured episodes (in parallel; results are independent of
/// worker count), writes line-delimited episode records plus a summary
/// table under cfg.out_dir, and snapshots the effective config.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Like run_experiment but without touching the filesystem.
ExperimentResult run_experiment_in_memory(const ExperimentConfig& cfg);

/// Runs {airoas, no_air} x particle_counts and emits one tidy summary
/// table (ablation.csv) suitable for plotting, with per-cell episode
/// records under cells/<solver>_<particles>/.
std::vector<SummaryRow> run_ablation_sweep(const ExperimentConfig& cfg,
                                           const std::vector<int>& particle_counts);

SummaryRow summarize_episodes(const ExperimentConfig& cfg,
                              const std::vector<EpisodeResult>& episodes);

std::string episode_to_json(int index, const EpisodeResult& episode);
EpisodeResult episode_from_json(const std::string& line);

/// Reads episodes.jsonl records back; used by the summarize subcommand to
/// recompute statistics independently of the stored summary.
std::vector<EpisodeResult> load_episodes(const std::string& path);

/// Recomputes the discounted return from a logged reward sequence.
double recompute_return(const EpisodeResult& episode, double gamma);

/// Discount factor of the configured domain.
double domain_discount(const ExperimentConfig& cfg);

/// Number of parallel episode workers: AIROAS_WORKERS if set, else the
/// hardware concurrency.
int worker_count();

}  // namespace airoas::harness
