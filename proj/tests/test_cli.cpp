#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const char* kConfig = R"({
  "domain": {"name": "lightdark", "alpha": 1.0, "step_cost": 0.0, "discount": 0.95},
  "solver": "airoas",
  "planner": {
    "r_star": 2.0,
    "tempering_steps": 8,
    "time_budget_s": 1e9,
    "trial_cap": 2,
    "max_depth": 3,
    "particles": 12,
    "bounds": {"type": "fixed", "lower": -11.0, "upper": 11.0}
  },
  "episodes": 2,
  "max_steps": 2,
  "master_seed": 5,
  "out_dir": "unused"
})";

struct CliWorkspace {
    fs::path dir;
    fs::path config;

    CliWorkspace() {
        dir = fs::temp_directory_path() / "airoas_cli_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
        config = dir / "config.json";
        std::ofstream(config) << kConfig;
    }
    ~CliWorkspace() { fs::remove_all(dir); }
};

int run_cli(const std::string& args) {
    const std::string command =
        std::string(AIROAS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli: run, summarize, ablate, and plot round trip") {
    CliWorkspace ws;
    const std::string out = (ws.dir / "run_out").string();

    CHECK(run_cli("run --config " + ws.config.string() + " --out " + out) == 0);
    CHECK(fs::exists(fs::path(out) / "episodes.jsonl"));
    CHECK(fs::exists(fs::path(out) / "summary.csv"));
    CHECK(fs::exists(fs::path(out) / "config.json"));

    CHECK(run_cli("summarize --in " + out) == 0);
    CHECK(fs::exists(fs::path(out) / "summary_recomputed.csv"));

    const std::string ablate_out = (ws.dir / "ablate_out").string();
    CHECK(run_cli("ablate --config " + ws.config.string() + " --particles 6,12 --out " +
                  ablate_out) == 0);
    CHECK(fs::exists(fs::path(ablate_out) / "ablation.csv"));

    const std::string svg = (ws.dir / "curves.svg").string();
    CHECK(run_cli("plot --in " + ablate_out + " --out " + svg) == 0);
    CHECK(fs::exists(svg));
    std::ifstream in(svg);
    std::string first_line;
    std::getline(in, first_line);
    CHECK(first_line.find("<svg") != std::string::npos);
}

TEST_CASE("cli: seed and episode overrides change the outputs") {
    CliWorkspace ws;
    const std::string out = (ws.dir / "seeded").string();
    CHECK(run_cli("run --config " + ws.config.string() + " --seed 99 --episodes 1 --out " +
                  out) == 0);
    std::ifstream episodes(fs::path(out) / "episodes.jsonl");
    int lines = 0;
    std::string line;
    while (std::getline(episodes, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 1);
}

TEST_CASE("cli: failures exit nonzero with a machine-readable record") {
    CliWorkspace ws;
    CHECK(run_cli("run --config /nonexistent.json") != 0);
    const fs::path bad = ws.dir / "bad.json";
    std::ofstream(bad) << R"({"domain": {"name": "wat"}})";
    const std::string stderr_file = (ws.dir / "err.txt").string();
    const std::string command = std::string(AIROAS_CLI_PATH) + " run --config " +
                                bad.string() + " 2> " + stderr_file + " > /dev/null";
    CHECK(WEXITSTATUS(std::system(command.c_str())) != 0);
    std::ifstream err(stderr_file);
    std::string record;
    std::getline(err, record);
    CHECK(record.find("\"error\"") != std::string::npos);
    CHECK(record.find("\"what\"") != std::string::npos);
}
