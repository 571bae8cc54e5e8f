#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "airoas/harness/config.hpp"
#include "airoas/harness/plot.hpp"
#include "airoas/harness/runner.hpp"
#include "airoas/harness/stats.hpp"

namespace {

using namespace airoas;

void print_summary(const harness::SummaryRow& row) {
    std::cout << harness::summary_csv_header() << '\n'
              << harness::summary_csv_row(row) << '\n';
}

std::vector<harness::SummaryRow> load_summary_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<harness::SummaryRow> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line))
        if (!line.empty()) rows.push_back(harness::parse_summary_csv_row(line));
    return rows;
}

int cmd_run(const std::string& config_path, std::int64_t seed, int episodes,
            const std::string& out_dir) {
    harness::ExperimentConfig cfg = harness::load_experiment_config(config_path);
    if (seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(seed);
    if (episodes > 0) cfg.episodes = episodes;
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    const harness::ExperimentResult result = harness::run_experiment(cfg);
    print_summary(result.summary);
    std::cout << "episodes written to " << cfg.out_dir << "/episodes.jsonl\n";
    return 0;
}

int cmd_ablate(const std::string& config_path, const std::string& particles,
               std::int64_t seed, int episodes, const std::string& out_dir) {
    harness::ExperimentConfig cfg = harness::load_experiment_config(config_path);
    if (seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(seed);
    if (episodes > 0) cfg.episodes = episodes;
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    std::vector<int> counts;
    std::stringstream stream(particles);
    std::string token;
    while (std::getline(stream, token, ','))
        if (!token.empty()) counts.push_back(std::stoi(token));

    const auto rows = harness::run_ablation_sweep(cfg, counts);
    std::cout << harness::summary_csv_header() << '\n';
    for (const auto& row : rows) std::cout << harness::summary_csv_row(row) << '\n';
    std::cout << "table written to " << cfg.out_dir << "/ablation.csv\n";
    return 0;
}

int cmd_summarize(const std::string& in_dir) {
    const std::filesystem::path dir(in_dir);
    const auto episodes = harness::load_episodes((dir / "episodes.jsonl").string());
    if (episodes.empty()) throw std::runtime_error("no episode records found");

    harness::ExperimentConfig cfg =
        harness::load_experiment_config((dir / "config.json").string());
    const harness::SummaryRow row = harness::summarize_episodes(cfg, episodes);
    print_summary(row);

    std::ofstream out(dir / "summary_recomputed.csv");
    out << harness::summary_csv_header() << '\n' << harness::summary_csv_row(row) << '\n';

    const double gamma = harness::domain_discount(cfg);
    for (std::size_t i = 0; i < episodes.size(); ++i) {
        const double recomputed = harness::recompute_return(episodes[i], gamma);
        if (std::abs(recomputed - episodes[i].discounted_return) > 1e-9) {
            std::cerr << "episode " << i << ": stored return "
                      << episodes[i].discounted_return << " != recomputed " << recomputed
                      << '\n';
            return 1;
        }
    }
    return 0;
}

int cmd_plot(const std::string& in_dir, const std::string& out_file) {
    const std::filesystem::path dir(in_dir);
    const auto rows = load_summary_rows((dir / "ablation.csv").string());
    harness::write_ablation_svg(rows, out_file);
    std::cout << "chart written to " << out_file << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"airoas: online POMDP planning benchmark runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string in_dir;
    std::string out_file = "ablation.svg";
    std::string particles = "100,200,500,1000,2000";
    std::int64_t seed = -1;
    int episodes = 0;

    CLI::App* run = app.add_subcommand("run", "Run one experiment from a config file");
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--seed", seed, "Override master seed");
    run->add_option("--episodes", episodes, "Override episode count");
    run->add_option("--out", out_dir, "Override output directory");

    CLI::App* ablate =
        app.add_subcommand("ablate", "Sweep {airoas, no_air} x particle counts");
    ablate->add_option("--config", config_path, "Experiment config (JSON)")->required();
    ablate->add_option("--particles", particles, "Comma-separated particle counts");
    ablate->add_option("--seed", seed, "Override master seed");
    ablate->add_option("--episodes", episodes, "Override episode count per cell");
    ablate->add_option("--out", out_dir, "Override output directory");

    CLI::App* summarize =
        app.add_subcommand("summarize", "Recompute statistics from episode records");
    summarize->add_option("--in", in_dir, "Directory holding episodes.jsonl")->required();

    CLI::App* plot = app.add_subcommand("plot", "Render ablation curves as SVG");
    plot->add_option("--in", in_dir, "Directory holding ablation.csv")->required();
    plot->add_option("--out", out_file, "Output SVG path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, seed, episodes, out_dir);
        if (ablate->parsed())
            return cmd_ablate(config_path, particles, seed, episodes, out_dir);
        if (summarize->parsed()) return cmd_summarize(in_dir);
        if (plot->parsed()) return cmd_plot(in_dir, out_file);
    } catch (const std::exception& e) {
        const nlohmann::json error = {{"error", typeid(e).name()}, {"what", e.what()}};
        std::cerr << error.dump() << '\n';
        return 1;
    }
    return 0;
}
