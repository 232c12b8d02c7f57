#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ffs/queueing.hpp"
#include "ffs/radio.hpp"

namespace ffsim {

/// Closed interval in p_CM space; `empty` dominates the bounds.
struct Interval {
    double lb = 0.0;
    double ub = 0.0;
    bool empty = true;

    bool contains(double p) const { return !empty && p >= lb && p <= ub; }
    static Interval make(double lb, double ub) {
        Interval i;
        i.empty = !(lb <= ub);
        if (!i.empty) {
            i.lb = lb;
            i.ub = ub;
        }
        return i;
    }
    static Interval none() { return Interval{}; }
};

/// Candidate sets for one service: operability, reliability, and their
/// intersection.
struct FeasibleSet {
    Interval operable;
    Interval reliable;
    Interval feasible;
};

enum class CfsmaStatus { Optimal, Infeasible };

struct CfsmaResult {
    CfsmaStatus status = CfsmaStatus::Infeasible;
    std::vector<double> gamma_star;  // per service, linear
    std::vector<double> p_cm_star;   // per service
    double achieved_rate_nats = 0.0;
    double urllc_reliability = 0.0;
    double rho_cu = 0.0;
    double rho_du = 0.0;
    std::string violated_constraint;          // set when Infeasible
    std::vector<FeasibleSet> feasible_sets;   // slice at the returned solution
};

struct CfsmaOptions {
    double tol = 1e-3;              // endpoint refinement tolerance in p
    double gamma_max = 1e4;         // search box upper edge (40 dB)
    int outer_grid = 101;           // p_CM,U refinement grid size
    Discipline discipline = Discipline::PS;
};

/// Operability interval for service `service_index` in its own p_CM, with the
/// other services' splits held at `mars`. Both utilizations are affine in
/// p_CM, so the interval is exact linear algebra; it is shrunk by `tol` so
/// returned points are strictly operable.
Interval operable_interval(std::span<const ServiceClass> services, const ModeProfiles& modes,
                           const ServerSpec& spec, std::span<const ModeSplit> mars,
                           std::size_t service_index, double tol = 1e-9);

/// Super-level set {p in search : rel(p) >= target}, located by a 33-point
/// coarse grid plus bisection refinement of both endpoints to `tol`.
/// Relies on concavity of rel over the operable interval (single interval).
Interval reliable_interval(const std::function<double(double)>& rel, const Interval& search,
                           double target, double tol = 1e-3);

/// gamma = (1 - p_cm)^(-alpha/2); inverse of the closed-form MAR.
double gamma_from_pcm(double p_cm, double alpha);

/// CFSMA: candidate operable/reliable set intersection, then the largest
/// feasible PLD thresholds (eMBB first, then URLLC as tie-break).
CfsmaResult cfsma(std::span<const ServiceClass> services, const ModeProfiles& modes,
                  const ServerSpec& spec, const NetworkModel& model,
                  const CfsmaOptions& options = {});

}  // namespace ffsim
