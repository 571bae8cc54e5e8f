#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "airoas/bounds.hpp"
#include "airoas/domains/lasertag.hpp"
#include "airoas/domains/lightdark.hpp"
#include "airoas/domains/rocksample.hpp"
#include "airoas/domains/tag.hpp"

namespace airoas::harness {

using DomainParams =
    std::variant<domains::LightDarkParams, domains::TagParams, domains::LaserTagParams,
                 domains::RockSampleParams>;

enum class Solver { kAiroas, kNoAir };

enum class RootUpdate { kSir, kAir };

struct PlannerSettings {
    double target_inefficiency = 2.0;  // r*
    int tempering_steps = 100;         // K
    double xi = 0.95;
    double time_budget_s = 5.0;
    int trial_cap = 0;
    int max_depth = 90;
    int particles = 1000;
    double mutation_sigma_scale = 0.5;
    int mutation_sweeps = 1;
    BoundSpec bounds;
};

struct ExperimentConfig {
    std::string domain_name;
    DomainParams domain;
    Solver solver = Solver::kAiroas;
    PlannerSettings planner;
    int episodes = 100;
    int max_steps = 100;
    std::uint64_t master_seed = 1;
    RootUpdate root_update = RootUpdate::kSir;
    double ess_threshold_fraction = 0.5;
    std::string out_dir = "results";
};

/// Parses the documented JSON schema (see README). Unknown keys are
/// rejected so typos fail loudly.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

std::string solver_name(Solver solver);

/// Round-trip serialization, used to snapshot the effective config next to
/// the results.
std::string experiment_config_to_json(const ExperimentConfig& cfg);

}  // namespace airoas::harness
