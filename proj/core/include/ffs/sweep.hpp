#pragma once

#include <span>
#include <string>
#include <vector>

#include "ffs/optimizer.hpp"
#include "ffs/scenario.hpp"

namespace ffsim {

struct SweepRow {
    double axis_value = 0.0;
    bool feasible = false;
    std::string note;             // violated constraint when infeasible
    std::vector<double> p_cm;     // per service, same order as scenario
    std::vector<double> p_dm;
    double rate_nats = 0.0;
    double reliability = 0.0;
    double outage = 1.0;          // exactly 1 - reliability
    double rho_cu = 0.0;
    double rho_du = 0.0;
};

/// Runs cfsma at every grid point of one axis. Infeasible points are kept
/// in-row (feasible=false, note filled) and the sweep continues.
std::vector<SweepRow> sweep_outage(const Scenario& base, SweepAxis axis,
                                   std::span<const double> grid,
                                   const CfsmaOptions& options = {});

}  // namespace ffsim
