#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "ffs/stats.hpp"

namespace ffsim {

/// Physical scenario: PPP densities, propagation and power parameters, and
/// the simulation window. Densities are per m^2, distances in meters, all
/// quantities linear (dB conversion happens at the config boundary).
struct NetworkModel {
    double du_density = 20e-6;                 // DUs per m^2
    std::vector<double> user_densities;        // per-service users per m^2
    double pathloss_exponent = 4.0;            // alpha > 2
    double fading_mean = 1.0;                  // mean of exponential |h|^2
    double tx_power_dbm = 30.0;
    double noise_dbm = -90.0;
    double window_side_m = 1000.0;
    int max_comp_dus = 2;                      // C
    std::uint64_t rng_seed = 1;

    double area_m2() const { return window_side_m * window_side_m; }
    double tx_power_w() const;
    double noise_w() const;
    /// Noise normalized by transmit power and unit pathloss (sigma-tilde^2).
    double normalized_noise() const;

    /// Throws InvalidModel on violated invariants.
    void validate() const;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// One realization of the PPP in the window.
struct Topology {
    std::vector<Point> du_points;
    std::vector<std::vector<Point>> user_points;  // per service
};

enum class Mode { DM, CM };

/// Serving DU set of a reference user, nearest first.
struct ServingSet {
    std::vector<int> du_indices;
    std::vector<double> distances_m;  // ascending, matching du_indices
    Mode mode = Mode::DM;
};

enum class EmptyPolicy { Resample, Error };

/// Distance on the square torus of side L (wrap-around window).
double torus_distance(const Point& a, const Point& b, double side_m);

/// Draws Poisson-distributed DU and user counts and uniform positions.
/// With EmptyPolicy::Resample a zero-DU draw is redrawn (fresh substream);
/// with EmptyPolicy::Error it throws EmptyTopology.
Topology sample_topology(const NetworkModel& model, std::uint64_t seed,
                         EmptyPolicy on_empty = EmptyPolicy::Resample);
Topology sample_topology(const NetworkModel& model, std::mt19937_64& rng,
                         EmptyPolicy on_empty = EmptyPolicy::Resample);

/// Power level difference between the nearest DU and a DU at rn:
/// (rn/r1)^alpha >= 1.
double pld_ratio(double r1_m, double rn_m, double alpha);

/// PLD-threshold clustering: DU 1 always serves; DU n (n <= max_comp_dus)
/// joins iff (rn/r1)^alpha <= gamma. Mode is CM iff the set has >= 2 DUs.
ServingSet comp_cluster(std::span<const double> sorted_distances_m, double gamma_linear,
                        double alpha, int max_comp_dus);

/// Joint density of the c nearest-DU distances in the form
/// exp(-pi*L*sum r_i^2) (2 pi L)^c prod r_i  (value per m^{2c}).
double joint_distance_density(std::span<const double> r_vec_m, double du_density);

/// pdf of the nearest-DU distance: 2 pi L r exp(-pi L r^2).
double nearest_distance_pdf(double r_m, double du_density);

/// Joint pdf of the two nearest ordered distances (r1 < r2); the exponent
/// carries only the outer radius, which is what normalizes the ordered pair.
double ordered_pair_density(double r1_m, double r2_m, double du_density);

/// Closed-form mode allocation ratio for the 2-DU CoMP model:
/// p_dm = gamma^(-2/alpha), p_cm = 1 - p_dm. Independent of the DU density.
std::pair<double, double> mar_analytic(double gamma_linear, double alpha);

struct MarEstimate {
    McEstimate p_cm;
    McEstimate p_dm;
};

/// Empirical CM/DM fractions for the typical user (window center, torus
/// distances) over `trials` sampled topologies.
MarEstimate mar_empirical(const NetworkModel& model, double gamma_linear,
                          std::size_t trials, double confidence = 0.95);

}  // namespace ffsim
