#include "ffs/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ffs/errors.hpp"

namespace ffsim {

namespace {

// Affine utilization rho(p) = base + coef * p of one server in the target
// service's p_CM, with every other split held fixed.
struct AffineRho {
    double base = 0.0;
    double coef = 0.0;
};

std::array<AffineRho, 2> rho_affine(std::span<const ServiceClass> services,
                                    const ModeProfiles& modes, const ServerSpec& spec,
                                    std::span<const ModeSplit> mars, std::size_t target) {
    AffineRho cu, du;
    for (std::size_t s = 0; s < services.size(); ++s) {
        const auto& svc = services[s];
        double traffic = svc.user_count * svc.arrival_rate * svc.cycles_per_packet;
        double cu_cm = traffic * modes.cm.beta_cu / spec.cu_rate;
        double cu_dm = traffic * modes.dm.beta_cu / spec.cu_rate;
        double du_cm = traffic * modes.cm.users_per_du * modes.cm.beta_du /
                       (spec.du_rate() * spec.du_count);
        double du_dm = traffic * modes.dm.users_per_du * modes.dm.beta_du /
                       (spec.du_rate() * spec.du_count);
        if (s == target) {
            cu.base += cu_dm;
            cu.coef += cu_cm - cu_dm;
            du.base += du_dm;
            du.coef += du_cm - du_dm;
        } else {
            cu.base += mars[s].p_cm * cu_cm + mars[s].p_dm * cu_dm;
            du.base += mars[s].p_cm * du_cm + mars[s].p_dm * du_dm;
        }
    }
    return {cu, du};
}

}  // namespace

Interval operable_interval(std::span<const ServiceClass> services, const ModeProfiles& modes,
                           const ServerSpec& spec, std::span<const ModeSplit> mars,
                           std::size_t service_index, double tol) {
    auto affine = rho_affine(services, modes, spec, mars, service_index);
    double lo = 0.0, hi = 1.0;
    for (const auto& a : affine) {
        // upper constraint: base + coef p < 1
        if (a.coef > 0.0) {
            hi = std::min(hi, (1.0 - a.base) / a.coef - tol);
        } else if (a.coef < 0.0) {
            lo = std::max(lo, (1.0 - a.base) / a.coef + tol);
        } else if (a.base >= 1.0) {
            return Interval::none();
        }
        // lower constraint: base + coef p > 0
        if (a.coef > 0.0) {
            lo = std::max(lo, -a.base / a.coef + tol);
        } else if (a.coef < 0.0) {
            hi = std::min(hi, -a.base / a.coef - tol);
        } else if (a.base <= 0.0) {
            return Interval::none();
        }
    }
    return Interval::make(lo, hi);
}

Interval reliable_interval(const std::function<double(double)>& rel, const Interval& search,
                           double target, double tol) {
    if (search.empty) return Interval::none();
    if (target <= 0.0) return search;  // vacuous constraint

    auto value = [&](double p) {
        try {
            return rel(p);
        } catch (const NotOperable&) {
            return -std::numeric_limits<double>::infinity();
        }
    };

    constexpr int kGrid = 33;
    std::array<double, kGrid> xs{}, ys{};
    for (int i = 0; i < kGrid; ++i) {
        xs[i] = search.lb + (search.ub - search.lb) * i / (kGrid - 1);
        ys[i] = value(xs[i]);
    }
    int first = -1, last = -1;
    for (int i = 0; i < kGrid; ++i) {
        if (ys[i] >= target) {
            if (first < 0) first = i;
            last = i;
        }
    }
    if (first < 0) return Interval::none();

    // Bisect each endpoint between the last failing and first passing grid
    // points; concavity makes the super-level set a single interval.
    auto bisect = [&](double fail, double pass) {
        while (std::abs(pass - fail) > tol) {
            double mid = 0.5 * (pass + fail);
            (value(mid) >= target ? pass : fail) = mid;
        }
        return pass;
    };
    double lb = first == 0 ? search.lb : bisect(xs[first - 1], xs[first]);
    double ub = last == kGrid - 1 ? search.ub : bisect(xs[last + 1], xs[last]);
    return Interval::make(lb, ub);
}

double gamma_from_pcm(double p_cm, double alpha) {
    if (p_cm < 0.0 || p_cm > 1.0) throw InvalidThreshold("p_cm must be in [0,1]");
    if (p_cm == 1.0) throw InfiniteThreshold("p_cm = 1 maps to an infinite threshold");
    return std::pow(1.0 - p_cm, -alpha / 2.0);
}

CfsmaResult cfsma(std::span<const ServiceClass> services, const ModeProfiles& modes,
                  const ServerSpec& spec, const NetworkModel& model,
                  const CfsmaOptions& options) {
    model.validate();
    modes.validate();
    spec.validate();
    for (const auto& s : services) s.validate();

    std::size_t embb = services.size(), urllc = services.size();
    for (std::size_t s = 0; s < services.size(); ++s) {
        if (services[s].name == ServiceKind::Embb) embb = s;
        if (services[s].name == ServiceKind::Urllc) urllc = s;
    }
    if (embb >= services.size() || urllc >= services.size())
        throw InvalidModel("cfsma expects one eMBB and one URLLC service");
    const bool urllc_active = services[urllc].user_count > 0.0;
    const double alpha = model.pathloss_exponent;
    const double p_box = 1.0 - std::pow(options.gamma_max, -2.0 / alpha);

    // Conditional per-attempt success probabilities of URLLC for one gamma_U.
    auto urllc_success = [&](double p_u, double gamma_u) {
        std::array<double, 2> p_succ{0.0, 0.0};
        CoverageQuery q;
        q.model = model;
        q.gamma_linear = gamma_u;
        q.sinr_threshold_linear = services[urllc].sinr_threshold_linear;
        double p_dm = 1.0 - p_u;
        if (p_dm > 0.0) p_succ[mode_index(Mode::DM)] = std::min(1.0, coverage_dm(q) / p_dm);
        if (p_u > 0.0) p_succ[mode_index(Mode::CM)] = std::min(1.0, coverage_cm(q) / p_u);
        return p_succ;
    };

    std::vector<ModeSplit> mars(services.size());
    CfsmaResult result;
    double best_pe = -1.0, best_pu = 0.0;
    FeasibleSet best_embb_set;
    bool any_operable = false;

    for (int i = options.outer_grid - 1; i >= 0; --i) {
        double p_u = urllc_active ? p_box * i / (options.outer_grid - 1) : 0.0;
        double gamma_u = gamma_from_pcm(p_u, alpha);
        mars[urllc] = {p_u, 1.0 - p_u};

        Interval operable = operable_interval(services, modes, spec, mars, embb, options.tol);
        if (!operable.empty) {
            operable = Interval::make(std::max(0.0, operable.lb), std::min(p_box, operable.ub));
        }
        if (operable.empty) {
            if (!urllc_active) break;
            continue;
        }
        any_operable = true;

        Interval reliable = operable;
        if (urllc_active) {
            auto p_succ = urllc_success(p_u, gamma_u);
            auto rel = [&](double p_e) {
                mars[embb] = {p_e, 1.0 - p_e};
                QueueState state =
                    evaluate_queues(services, modes, mars, spec, options.discipline);
                if (!state.operable) throw NotOperable("inoperable inside search");
                return service_reliability(state, urllc, services, mars, spec, p_succ);
            };
            reliable = reliable_interval(rel, operable, services[urllc].reliability_target,
                                         options.tol);
        }
        if (reliable.empty) continue;

        if (reliable.ub > best_pe) {
            best_pe = reliable.ub;
            best_pu = p_u;
            best_embb_set = {operable, reliable, reliable};
        }
        if (!urllc_active) break;
    }

    result.gamma_star.assign(services.size(), 1.0);
    result.p_cm_star.assign(services.size(), 0.0);
    result.feasible_sets.assign(services.size(), FeasibleSet{});
    if (best_pe < 0.0) {
        result.status = CfsmaStatus::Infeasible;
        result.violated_constraint =
            any_operable ? "urllc reliability (27a)" : "server operability (27b)";
        return result;
    }

    mars[embb] = {best_pe, 1.0 - best_pe};
    mars[urllc] = {best_pu, 1.0 - best_pu};
    QueueState state = evaluate_queues(services, modes, mars, spec, options.discipline);
    double rel_u = 1.0;
    if (urllc_active) {
        auto p_succ = urllc_success(best_pu, gamma_from_pcm(best_pu, alpha));
        rel_u = service_reliability(state, urllc, services, mars, spec, p_succ);
    }
    // A-posteriori verification of every constraint at the solution.
    if (!state.operable || state.rho_cu <= 0.0 || state.rho_du <= 0.0) {
        result.status = CfsmaStatus::Infeasible;
        result.violated_constraint = "server operability (27b) at solution";
        return result;
    }
    if (urllc_active && rel_u < services[urllc].reliability_target - 1e-12) {
        result.status = CfsmaStatus::Infeasible;
        result.violated_constraint = "urllc reliability (27a) at solution";
        return result;
    }

    result.status = CfsmaStatus::Optimal;
    result.p_cm_star[embb] = best_pe;
    result.p_cm_star[urllc] = best_pu;
    result.gamma_star[embb] = gamma_from_pcm(best_pe, alpha);
    result.gamma_star[urllc] = gamma_from_pcm(best_pu, alpha);
    result.achieved_rate_nats = ergodic_rate(result.gamma_star[embb], model).rate_nats;
    result.urllc_reliability = rel_u;
    result.rho_cu = state.rho_cu;
    result.rho_du = state.rho_du;
    result.feasible_sets[embb] = best_embb_set;
    // URLLC slice: operability in p_U with the eMBB split pinned.
    result.feasible_sets[urllc].operable =
        operable_interval(services, modes, spec, mars, urllc, options.tol);
    result.feasible_sets[urllc].reliable = Interval::make(0.0, best_pu);
    result.feasible_sets[urllc].feasible = result.feasible_sets[urllc].operable.empty
                                               ? Interval::none()
                                               : Interval::make(0.0, best_pu);
    return result;
}

}  // namespace ffsim
