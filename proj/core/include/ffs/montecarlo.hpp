#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ffs/geometry.hpp"
#include "ffs/stats.hpp"

namespace ffsim {

struct McConfig {
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    std::size_t warmup_packets = 2000;    // DES only
    std::size_t horizon_packets = 200000; // DES only
    double confidence = 0.95;

    void validate() const;
};

struct CoveragePoint {
    double threshold_linear = 1.0;
    McEstimate total;     // Pr(SINR >= T)
    McEstimate dm_joint;  // Pr(DM and SINR >= T)
    McEstimate cm_joint;  // Pr(CM and SINR >= T)
};

/// Empirical coverage of the typical user over torus PPP topologies with
/// Rayleigh fading, one SINR draw per trial evaluated on the whole T grid.
std::vector<CoveragePoint> mc_coverage(const NetworkModel& model, double gamma_linear,
                                       std::span<const double> t_grid_linear,
                                       const McConfig& cfg);

/// Empirical ergodic rate: mean of ln(1 + SINR) in nats/s/Hz.
McEstimate mc_rate(const NetworkModel& model, double gamma_linear, const McConfig& cfg);

}  // namespace ffsim
