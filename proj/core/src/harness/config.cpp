#include "airoas/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace airoas::harness {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& node, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : node.items())
        if (!known.contains(key))
            throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
}

template <typename T>
void read(const json& node, const char* key, T& out) {
    if (node.contains(key)) node.at(key).get_to(out);
}

domains::LightDarkParams parse_lightdark(const json& node) {
    reject_unknown_keys(node,
                        {"name", "alpha", "light", "goal_center", "goal_radius", "noise_floor",
                         "step_cost", "declare_reward", "declare_penalty", "discount",
                         "init_mean", "init_std", "obs_bin_width"},
                        "domain");
    domains::LightDarkParams p;
    read(node, "alpha", p.alpha);
    read(node, "light", p.light);
    read(node, "goal_center", p.goal_center);
    read(node, "goal_radius", p.goal_radius);
    read(node, "noise_floor", p.noise_floor);
    read(node, "step_cost", p.step_cost);
    read(node, "declare_reward", p.declare_reward);
    read(node, "declare_penalty", p.declare_penalty);
    read(node, "discount", p.discount);
    read(node, "init_mean", p.init_mean);
    read(node, "init_std", p.init_std);
    read(node, "obs_bin_width", p.obs_bin_width);
    return p;
}

domains::TagParams parse_tag(const json& node) {
    reject_unknown_keys(node,
                        {"name", "flee_prob", "step_cost", "tag_reward", "tag_penalty",
                         "discount", "mutation_base_sigma"},
                        "domain");
    domains::TagParams p;
    read(node, "flee_prob", p.flee_prob);
    read(node, "step_cost", p.step_cost);
    read(node, "tag_reward", p.tag_reward);
    read(node, "tag_penalty", p.tag_penalty);
    read(node, "discount", p.discount);
    read(node, "mutation_base_sigma", p.mutation_base_sigma);
    return p;
}

domains::LaserTagParams parse_lasertag(const json& node) {
    reject_unknown_keys(node,
                        {"name", "width", "height", "obstacles", "layout_seed", "flee_prob",
                         "step_cost", "tag_reward", "tag_penalty", "discount", "beam_sigma"},
                        "domain");
    domains::LaserTagParams p;
    read(node, "width", p.width);
    read(node, "height", p.height);
    read(node, "obstacles", p.obstacles);
    read(node, "layout_seed", p.layout_seed);
    read(node, "flee_prob", p.flee_prob);
    read(node, "step_cost", p.step_cost);
    read(node, "tag_reward", p.tag_reward);
    read(node, "tag_penalty", p.tag_penalty);
    read(node, "discount", p.discount);
    read(node, "beam_sigma", p.beam_sigma);
    return p;
}

domains::RockSampleParams parse_rocksample(const json& node) {
    reject_unknown_keys(node,
                        {"name", "size", "rock_count", "rock_positions", "layout_seed",
                         "half_efficiency_distance", "good_sample_reward",
                         "bad_sample_penalty", "exit_reward", "discount",
                         "exact_mdp_rock_limit"},
                        "domain");
    domains::RockSampleParams p;
    read(node, "size", p.size);
    read(node, "rock_count", p.rock_count);
    read(node, "layout_seed", p.layout_seed);
    read(node, "half_efficiency_distance", p.half_efficiency_distance);
    read(node, "good_sample_reward", p.good_sample_reward);
    read(node, "bad_sample_penalty", p.bad_sample_penalty);
    read(node, "exit_reward", p.exit_reward);
    read(node, "discount", p.discount);
    read(node, "exact_mdp_rock_limit", p.exact_mdp_rock_limit);
    if (node.contains("rock_positions"))
        for (const auto& pos : node.at("rock_positions"))
            p.rock_positions.emplace_back(pos.at(0).get<int>(), pos.at(1).get<int>());
    return p;
}

BoundSpec parse_bounds(const json& node) {
    const std::string type = node.at("type").get<std::string>();
    if (type == "fixed") {
        reject_unknown_keys(node, {"type", "lower", "upper"}, "planner.bounds");
        BoundSpec spec;
        spec.lower = FixedValueSpec{node.at("lower").get<double>()};
        spec.upper = FixedValueSpec{node.at("upper").get<double>()};
        if (std::get<FixedValueSpec>(spec.lower).value >
            std::get<FixedValueSpec>(spec.upper).value)
            throw std::invalid_argument("config: fixed bounds with lower > upper");
        return spec;
    }
    if (type == "heuristic") {
        reject_unknown_keys(node, {"type", "rollout_horizon"}, "planner.bounds");
        BoundSpec spec;
        FixedActionRolloutSpec rollout;
        read(node, "rollout_horizon", rollout.horizon);
        spec.lower = rollout;
        spec.upper = MdpApproxSpec{};
        return spec;
    }
    if (type == "rollout_fixed") {
        reject_unknown_keys(node, {"type", "rollout_horizon", "upper"}, "planner.bounds");
        BoundSpec spec;
        FixedActionRolloutSpec rollout;
        read(node, "rollout_horizon", rollout.horizon);
        spec.lower = rollout;
        spec.upper = FixedValueSpec{node.at("upper").get<double>()};
        return spec;
    }
    throw std::invalid_argument("config: unknown bounds type '" + type + "'");
}

json bounds_to_json(const BoundSpec& spec) {
    if (const auto* rollout = std::get_if<FixedActionRolloutSpec>(&spec.lower)) {
        if (const auto* fixed = std::get_if<FixedValueSpec>(&spec.upper))
            return {{"type", "rollout_fixed"},
                    {"rollout_horizon", rollout->horizon},
                    {"upper", fixed->value}};
        return {{"type", "heuristic"}, {"rollout_horizon", rollout->horizon}};
    }
    return {{"type", "fixed"},
            {"lower", std::get<FixedValueSpec>(spec.lower).value},
            {"upper", std::get<FixedValueSpec>(spec.upper).value}};
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    const json root = json::parse(json_text);
    reject_unknown_keys(root,
                        {"domain", "solver", "planner", "episodes", "max_steps", "master_seed",
                         "root_update", "ess_threshold_fraction", "out_dir"},
                        "top level");

    ExperimentConfig cfg;
    const json& domain = root.at("domain");
    cfg.domain_name = domain.at("name").get<std::string>();
    if (cfg.domain_name == "lightdark") {
        cfg.domain = parse_lightdark(domain);
    } else if (cfg.domain_name == "tag") {
        cfg.domain = parse_tag(domain);
    } else if (cfg.domain_name == "lasertag") {
        cfg.domain = parse_lasertag(domain);
    } else if (cfg.domain_name == "rocksample") {
        cfg.domain = parse_rocksample(domain);
    } else {
        throw std::invalid_argument("config: unknown domain '" + cfg.domain_name + "'");
    }

    if (root.contains("solver")) {
        const std::string solver = root.at("solver").get<std::string>();
        if (solver == "airoas") {
            cfg.solver = Solver::kAiroas;
        } else if (solver == "no_air") {
            cfg.solver = Solver::kNoAir;
        } else {
            throw std::invalid_argument("config: unknown solver '" + solver + "'");
        }
    }

    if (root.contains("planner")) {
        const json& planner = root.at("planner");
        reject_unknown_keys(planner,
                            {"r_star", "tempering_steps", "xi", "time_budget_s", "trial_cap",
                             "max_depth", "particles", "mutation_sigma_scale",
                             "mutation_sweeps", "bounds"},
                            "planner");
        read(planner, "r_star", cfg.planner.target_inefficiency);
        read(planner, "tempering_steps", cfg.planner.tempering_steps);
        read(planner, "xi", cfg.planner.xi);
        read(planner, "time_budget_s", cfg.planner.time_budget_s);
        read(planner, "trial_cap", cfg.planner.trial_cap);
        read(planner, "max_depth", cfg.planner.max_depth);
        read(planner, "particles", cfg.planner.particles);
        read(planner, "mutation_sigma_scale", cfg.planner.mutation_sigma_scale);
        read(planner, "mutation_sweeps", cfg.planner.mutation_sweeps);
        if (planner.contains("bounds")) cfg.planner.bounds = parse_bounds(planner.at("bounds"));
    }

    read(root, "episodes", cfg.episodes);
    read(root, "max_steps", cfg.max_steps);
    read(root, "master_seed", cfg.master_seed);
    read(root, "ess_threshold_fraction", cfg.ess_threshold_fraction);
    read(root, "out_dir", cfg.out_dir);
    if (root.contains("root_update")) {
        const std::string update = root.at("root_update").get<std::string>();
        if (update == "sir") {
            cfg.root_update = RootUpdate::kSir;
        } else if (update == "air") {
            cfg.root_update = RootUpdate::kAir;
        } else {
            throw std::invalid_argument("config: unknown root_update '" + update + "'");
        }
    }

    if (cfg.episodes < 1) throw std::invalid_argument("config: episodes must be >= 1");
    if (cfg.max_steps < 0) throw std::invalid_argument("config: max_steps must be >= 0");
    if (!(cfg.planner.xi > 0.0 && cfg.planner.xi < 1.0))
        throw std::invalid_argument("config: xi must lie in (0, 1)");
    if (cfg.planner.target_inefficiency < 1.0)
        throw std::invalid_argument("config: r_star must be >= 1");
    if (cfg.planner.max_depth < 1)
        throw std::invalid_argument("config: max_depth must be >= 1");
    if (cfg.planner.particles < 1)
        throw std::invalid_argument("config: particles must be >= 1");
    if (!(cfg.ess_threshold_fraction > 0.0 && cfg.ess_threshold_fraction <= 1.0))
        throw std::invalid_argument("config: ess_threshold_fraction must lie in (0, 1]");
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

std::string solver_name(Solver solver) {
    return solver == Solver::kAiroas ? "airoas" : "no_air";
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
    json domain;
    domain["name"] = cfg.domain_name;
    std::visit(
        [&](const auto& params) {
            using P = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<P, domains::LightDarkParams>) {
                domain["alpha"] = params.alpha;
                domain["light"] = params.light;
                domain["goal_center"] = params.goal_center;
                domain["goal_radius"] = params.goal_radius;
                domain["noise_floor"] = params.noise_floor;
                domain["step_cost"] = params.step_cost;
                domain["declare_reward"] = params.declare_reward;
                domain["declare_penalty"] = params.declare_penalty;
                domain["discount"] = params.discount;
                domain["init_mean"] = params.init_mean;
                domain["init_std"] = params.init_std;
                domain["obs_bin_width"] = params.obs_bin_width;
            } else if constexpr (std::is_same_v<P, domains::TagParams>) {
                domain["flee_prob"] = params.flee_prob;
                domain["step_cost"] = params.step_cost;
                domain["tag_reward"] = params.tag_reward;
                domain["tag_penalty"] = params.tag_penalty;
                domain["discount"] = params.discount;
                domain["mutation_base_sigma"] = params.mutation_base_sigma;
            } else if constexpr (std::is_same_v<P, domains::LaserTagParams>) {
                domain["width"] = params.width;
                domain["height"] = params.height;
                domain["obstacles"] = params.obstacles;
                domain["layout_seed"] = params.layout_seed;
                domain["flee_prob"] = params.flee_prob;
                domain["step_cost"] = params.step_cost;
                domain["tag_reward"] = params.tag_reward;
                domain["tag_penalty"] = params.tag_penalty;
                domain["discount"] = params.discount;
                domain["beam_sigma"] = params.beam_sigma;
            } else {
                domain["size"] = params.size;
                domain["rock_count"] = params.rock_count;
                domain["layout_seed"] = params.layout_seed;
                domain["half_efficiency_distance"] = params.half_efficiency_distance;
                domain["good_sample_reward"] = params.good_sample_reward;
                domain["bad_sample_penalty"] = params.bad_sample_penalty;
                domain["exit_reward"] = params.exit_reward;
                domain["discount"] = params.discount;
                domain["exact_mdp_rock_limit"] = params.exact_mdp_rock_limit;
                if (!params.rock_positions.empty()) {
                    json positions = json::array();
                    for (const auto& [x, y] : params.rock_positions)
                        positions.push_back(json::array({x, y}));
                    domain["rock_positions"] = positions;
                }
            }
        },
        cfg.domain);

    json planner;
    planner["r_star"] = cfg.planner.target_inefficiency;
    planner["tempering_steps"] = cfg.planner.tempering_steps;
    planner["xi"] = cfg.planner.xi;
    planner["time_budget_s"] = cfg.planner.time_budget_s;
    planner["trial_cap"] = cfg.planner.trial_cap;
    planner["max_depth"] = cfg.planner.max_depth;
    planner["particles"] = cfg.planner.particles;
    planner["mutation_sigma_scale"] = cfg.planner.mutation_sigma_scale;
    planner["mutation_sweeps"] = cfg.planner.mutation_sweeps;
    planner["bounds"] = bounds_to_json(cfg.planner.bounds);

    json root;
    root["domain"] = domain;
    root["solver"] = solver_name(cfg.solver);
    root["planner"] = planner;
    root["episodes"] = cfg.episodes;
    root["max_steps"] = cfg.max_steps;
    root["master_seed"] = cfg.master_seed;
    root["root_update"] = cfg.root_update == RootUpdate::kSir ? "sir" : "air";
    root["ess_threshold_fraction"] = cfg.ess_threshold_fraction;
    root["out_dir"] = cfg.out_dir;
    return root.dump(2);
}

}  // namespace airoas::harness
