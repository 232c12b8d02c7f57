#include "ffs/sweep.hpp"

#include "ffs/errors.hpp"

namespace ffsim {

std::size_t Scenario::service_index(ServiceKind kind) const {
    for (std::size_t s = 0; s < services.size(); ++s)
        if (services[s].name == kind) return s;
    throw InvalidModel("scenario lacks the requested service class");
}

void Scenario::validate() const {
    model.validate();
    modes.validate();
    server.validate();
    for (const auto& s : services) s.validate();
    if (model.user_densities.size() != services.size())
        throw InvalidModel("user_densities must align with services");
}

Scenario apply_axis(const Scenario& base, SweepAxis axis, double value) {
    Scenario out = base;
    auto set_density = [&](ServiceKind kind) {
        std::size_t idx = out.service_index(kind);
        double per_m2 = value * 1e-6;  // value is users/km^2
        out.model.user_densities[idx] = per_m2;
        out.services[idx].user_count = per_m2 * out.model.area_m2();
    };
    switch (axis) {
        case SweepAxis::EmbbDensity:
            set_density(ServiceKind::Embb);
            break;
        case SweepAxis::UrllcDensity:
            set_density(ServiceKind::Urllc);
            break;
        case SweepAxis::CmOverhead:
            out.modes.cm.control_overhead_s = value;
            break;
        case SweepAxis::DuEfficiency:
            out.server.du_efficiency = value;
            break;
    }
    return out;
}

std::vector<SweepRow> sweep_outage(const Scenario& base, SweepAxis axis,
                                   std::span<const double> grid,
                                   const CfsmaOptions& options) {
    if (grid.empty()) throw NoSamples("empty axis grid");
    base.validate();

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double value : grid) {
        Scenario sc = apply_axis(base, axis, value);
        SweepRow row;
        row.axis_value = value;
        row.p_cm.assign(sc.services.size(), 0.0);
        row.p_dm.assign(sc.services.size(), 1.0);
        CfsmaResult res = cfsma(sc.services, sc.modes, sc.server, sc.model, options);
        if (res.status == CfsmaStatus::Optimal) {
            row.feasible = true;
            row.p_cm = res.p_cm_star;
            for (std::size_t s = 0; s < sc.services.size(); ++s)
                row.p_dm[s] = 1.0 - row.p_cm[s];
            row.rate_nats = res.achieved_rate_nats;
            row.reliability = res.urllc_reliability;
            row.outage = 1.0 - row.reliability;
            row.rho_cu = res.rho_cu;
            row.rho_du = res.rho_du;
        } else {
            row.note = res.violated_constraint;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ffsim
