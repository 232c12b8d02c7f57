#include <cstdint>
#include <iostream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "ffs/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Mixed eMBB/URLLC network evaluation: coverage, rate, queueing, "
                 "and mode-allocation optimization"};
    app.set_version_flag("--version", ffsim::kToolVersion);
    app.require_subcommand(1);

    ffsim::RunOptions options;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    bool seed_set = false, trials_set = false;

    const std::pair<const char*, const char*> names[] = {
        {"mar-sweep", "analytic vs empirical mode allocation over the gamma grid"},
        {"coverage-sweep", "analytic vs Monte Carlo coverage over the threshold grid"},
        {"density-sweep", "optimizer sweep along the eMBB user density axis"},
        {"overhead-sweep", "optimizer sweep along the CM control-overhead axis"},
        {"eta-sweep", "optimizer sweep along the DU efficiency axis"},
        {"cfsma", "single optimizer run: splits, rate, reliability, loads"},
        {"queue-sim", "analytic sojourn times vs discrete-event simulation"},
    };
    for (const auto& [name, help] : names) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", options.config_path, "JSON config file");
        sub->add_option("--out", options.out_dir, "output directory");
        sub->add_option("--seed", seed, "RNG seed override")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--trials", trials, "Monte Carlo trials override")
            ->each([&](const std::string&) { trials_set = true; });
        sub->add_flag("--plot-data", options.plot_data,
                      "also emit long-format plot CSVs");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (seed_set) options.seed = seed;
    if (trials_set) options.trials = trials;
    return ffsim::run_subcommand(app.get_subcommands().front()->get_name(), options,
                               std::cerr);
}
