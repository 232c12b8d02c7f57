#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffs/montecarlo.hpp"
#include "ffs/optimizer.hpp"
#include "ffs/scenario.hpp"

namespace ffsim {

double db_to_linear(double db);
double linear_to_db(double value);

/// Experiment-level knobs: randomness, grids, and search options.
struct ExperimentSettings {
    std::uint64_t seed = 1;
    std::size_t trials = 10000;
    std::size_t warmup_packets = 2000;
    std::size_t horizon_packets = 200000;
    double confidence = 0.95;
    std::vector<double> gamma_grid_db;      // mar-sweep / coverage-sweep
    std::vector<double> threshold_grid_db;  // coverage-sweep
    std::vector<double> axis_grid;          // density/overhead/eta sweeps
    Discipline discipline = Discipline::PS;
    double tol = 1e-3;
    double gamma_max_db = 40.0;
    int outer_grid = 101;
};

/// Everything one run needs, parsed and unit-converted (dB only at this
/// boundary; the scenario holds linear quantities).
struct ExperimentConfig {
    int schema_version = 1;
    Scenario scenario;
    ExperimentSettings experiment;
    std::string config_hash;  // FNV-1a over the canonical JSON text

    McConfig mc() const;
    CfsmaOptions cfsma_options() const;
};

/// Parse and schema-validate; throws ConfigError naming the offending field
/// path (e.g. "network.pathloss_exponent").
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// The shipped baseline parameter set, also used when writing the default
/// config file.
std::string default_config_json();

}  // namespace ffsim
