#pragma once

#include <span>
#include <vector>

#include "ffs/montecarlo.hpp"
#include "ffs/queueing.hpp"

namespace ffsim {

/// One traffic class feeding the simulated server.
struct DesClass {
    double arrival_rate = 0.0;        // Poisson arrivals/s
    double service_mean_s = 0.0;      // mean service requirement
    bool exponential_service = false; // deterministic otherwise
};

struct DesResult {
    std::vector<McEstimate> sojourn_s;  // per class
    bool unstable = false;              // offered load >= 1
};

/// Event-driven single-server simulation under PS or FCFS. PS is egalitarian
/// (rate 1/Q per resident job) with residual work advanced exactly between
/// events; no time slicing. Packets completed before `warmup_packets` are
/// discarded; the run ends after `horizon_packets` completions.
DesResult des_queue(Discipline discipline, std::span<const DesClass> classes,
                    const McConfig& cfg);

}  // namespace ffsim
