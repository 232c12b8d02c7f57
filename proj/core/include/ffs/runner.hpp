#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace ffsim {

struct RunOptions {
    std::string config_path;  // empty -> shipped defaults
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;    // overrides experiment.seed
    std::optional<std::size_t> trials;    // overrides experiment.trials
    bool plot_data = false;
};

/// Executes one subcommand end to end: load config, compute, write the CSV
/// (or JSON for `cfsma`) plus a run manifest into `out_dir`.
/// Returns the process exit code: 0 success, 2 config error, 3 numerics
/// error, 1 other failure. Diagnostics go to `err`.
int run_subcommand(const std::string& subcommand, const RunOptions& options,
                   std::ostream& err);

extern const char* const kToolVersion;

}  // namespace ffsim
