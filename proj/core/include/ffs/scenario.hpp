#pragma once

#include <vector>

#include "ffs/geometry.hpp"
#include "ffs/queueing.hpp"

namespace ffsim {

/// Full system description: radio environment, traffic classes, per-mode
/// processing profiles, and server provisioning.
struct Scenario {
    NetworkModel model;
    std::vector<ServiceClass> services;
    ModeProfiles modes;
    ServerSpec server;

    std::size_t service_index(ServiceKind kind) const;
    void validate() const;
};

enum class SweepAxis { EmbbDensity, UrllcDensity, CmOverhead, DuEfficiency };

/// Returns a copy of `base` with one axis value applied. Densities are in
/// users per km^2 and set both the user count and the sampling density;
/// CmOverhead is t_co(CM) in seconds; DuEfficiency is eta.
Scenario apply_axis(const Scenario& base, SweepAxis axis, double value);

}  // namespace ffsim
