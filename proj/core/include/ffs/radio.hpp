#pragma once

#include <span>

#include "ffs/geometry.hpp"

namespace ffsim {

enum class ModeSelector { DM, CM, Total };

struct CoverageQuery {
    double sinr_threshold_linear = 1.0;  // T
    double gamma_linear = 1.0;           // PLD threshold
    NetworkModel model;
    ModeSelector mode_selector = ModeSelector::Total;
};

struct RateResult {
    double rate_nats = 0.0;                  // nats/s/Hz
    double rate_bits = 0.0;                  // bits/s/Hz
    double quadrature_error_estimate = 0.0;  // absolute
};

/// SINR of one realization: joint signal from the serving set over
/// interference from every other DU beyond the outermost serving distance,
/// plus normalized noise. `fading_draws` aligns with `all_distances_m`.
double sinr_sample(const ServingSet& serving, std::span<const double> all_distances_m,
                   std::span<const double> fading_draws, const NetworkModel& model);

/// Laplace transform of the interference from PPP DUs outside the exclusion
/// radius, under Rayleigh (exponential-power) fading:
///   exp(-2 pi L \int_R^inf [s v^-a / (mu + s v^-a)] v dv),
/// evaluated by adaptive quadrature after the substitution u = (v/R)^2.
/// mu is the exponential rate (1 / fading_mean).
double interference_laplace(double s, double exclusion_radius_m, const NetworkModel& model);

/// Joint probability of {DM mode and SINR >= T}; bounded by p_dm(gamma).
double coverage_dm(const CoverageQuery& query);

/// Joint probability of {CM mode and SINR >= T} for 2-DU CoMP; bounded by
/// p_cm(gamma).
double coverage_cm(const CoverageQuery& query);

/// coverage_dm + coverage_cm evaluated as one combined integral.
double total_coverage(const CoverageQuery& query);

/// G(x) from the closed Laplace-functional exponent:
///   G(x) = (2 (mu T)^{2/a} / a) \int_0^inf h^{2/a}
///          (Gamma(-2/a, mu T h x) - Gamma(-2/a)) mu e^{-mu h} dh.
/// Satisfies L_{I_R}(mu T r^alpha) = exp(pi L (R^2 - r^2 G((r/R)^alpha))).
/// G(0) = 0 by the lower-incomplete-gamma continuation; for x > 0 the
/// function is nonnegative and nonincreasing in x (it diverges as x -> 0+).
double g_function(double x, double sinr_threshold, double alpha, double mu);

/// Ergodic rate E[ln(1+SINR)] via the CCDF integral of total_coverage.
RateResult ergodic_rate(double gamma_linear, const NetworkModel& model);

}  // namespace ffsim
