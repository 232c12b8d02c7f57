#include "ffs/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "ffs/errors.hpp"
#include "ffs/rng.hpp"

namespace ffsim {

namespace {
constexpr double kPi = 3.14159265358979323846;

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
}  // namespace

double NetworkModel::tx_power_w() const { return dbm_to_watts(tx_power_dbm); }
double NetworkModel::noise_w() const { return dbm_to_watts(noise_dbm); }
double NetworkModel::normalized_noise() const { return noise_w() / tx_power_w(); }

void NetworkModel::validate() const {
    if (!(pathloss_exponent > 2.0))
        throw InvalidModel("pathloss_exponent must exceed 2");
    if (!(du_density > 0.0)) throw InvalidModel("du_density must be positive");
    for (double d : user_densities)
        if (!(d >= 0.0)) throw InvalidModel("user densities must be nonnegative");
    if (!(window_side_m > 0.0)) throw InvalidModel("window_side_m must be positive");
    if (max_comp_dus < 1) throw InvalidModel("max_comp_dus must be >= 1");
    if (!(fading_mean > 0.0)) throw InvalidModel("fading_mean must be positive");
}

double torus_distance(const Point& a, const Point& b, double side_m) {
    double dx = std::abs(a.x - b.x);
    double dy = std::abs(a.y - b.y);
    if (dx > side_m / 2) dx = side_m - dx;
    if (dy > side_m / 2) dy = side_m - dy;
    return std::hypot(dx, dy);
}

Topology sample_topology(const NetworkModel& model, std::mt19937_64& rng,
                         EmptyPolicy on_empty) {
    model.validate();
    const double area = model.area_m2();
    std::uniform_real_distribution<double> unif(0.0, model.window_side_m);
    auto draw_points = [&](double density) {
        std::poisson_distribution<int> count(density * area);
        int n = count(rng);
        std::vector<Point> pts(static_cast<std::size_t>(n));
        for (auto& p : pts) {
            p.x = unif(rng);
            p.y = unif(rng);
        }
        return pts;
    };

    Topology topo;
    topo.du_points = draw_points(model.du_density);
    while (topo.du_points.empty()) {
        if (on_empty == EmptyPolicy::Error)
            throw EmptyTopology("PPP realization drew zero DUs");
        topo.du_points = draw_points(model.du_density);
    }
    topo.user_points.reserve(model.user_densities.size());
    for (double d : model.user_densities) topo.user_points.push_back(draw_points(d));
    return topo;
}

Topology sample_topology(const NetworkModel& model, std::uint64_t seed,
                         EmptyPolicy on_empty) {
    auto rng = make_rng(seed);
    return sample_topology(model, rng, on_empty);
}

double pld_ratio(double r1_m, double rn_m, double alpha) {
    if (!(r1_m > 0.0)) throw OrderingViolation("r1 must be positive");
    if (rn_m < r1_m) throw OrderingViolation("rn must be >= r1");
    return std::pow(rn_m / r1_m, alpha);
}

ServingSet comp_cluster(std::span<const double> sorted_distances_m, double gamma_linear,
                        double alpha, int max_comp_dus) {
    if (sorted_distances_m.empty()) throw EmptyTopology("empty distance list");
    if (!(gamma_linear >= 1.0)) throw InvalidThreshold("gamma must be >= 1");

    ServingSet set;
    set.du_indices.push_back(0);
    set.distances_m.push_back(sorted_distances_m[0]);
    const double r1 = sorted_distances_m[0];
    for (std::size_t n = 1;
         n < sorted_distances_m.size() && set.du_indices.size() < static_cast<std::size_t>(max_comp_dus);
         ++n) {
        if (sorted_distances_m[n] < sorted_distances_m[n - 1])
            throw OrderingViolation("distances must be ascending");
        // Inclusion uses <=: a DU exactly at the threshold joins the cluster.
        if (pld_ratio(r1, sorted_distances_m[n], alpha) <= gamma_linear) {
            set.du_indices.push_back(static_cast<int>(n));
            set.distances_m.push_back(sorted_distances_m[n]);
        } else {
            break;  // distances ascend, so no later DU can qualify
        }
    }
    set.mode = set.du_indices.size() >= 2 ? Mode::CM : Mode::DM;
    return set;
}

double joint_distance_density(std::span<const double> r_vec_m, double du_density) {
    if (r_vec_m.empty()) throw OrderingViolation("empty distance vector");
    double sum_sq = 0.0;
    double prod = 1.0;
    double prev = 0.0;
    for (double r : r_vec_m) {
        if (!(r > 0.0) || r < prev) throw OrderingViolation("distances must be ascending and positive");
        prev = r;
        sum_sq += r * r;
        prod *= r;
    }
    double c = static_cast<double>(r_vec_m.size());
    return std::exp(-kPi * du_density * sum_sq) * std::pow(2.0 * kPi * du_density, c) * prod;
}

double nearest_distance_pdf(double r_m, double du_density) {
    return 2.0 * kPi * du_density * r_m * std::exp(-kPi * du_density * r_m * r_m);
}

double ordered_pair_density(double r1_m, double r2_m, double du_density) {
    if (!(0.0 < r1_m) || r2_m < r1_m) throw OrderingViolation("need 0 < r1 <= r2");
    double tp = 2.0 * kPi * du_density;
    return tp * tp * r1_m * r2_m * std::exp(-kPi * du_density * r2_m * r2_m);
}

std::pair<double, double> mar_analytic(double gamma_linear, double alpha) {
    if (!(gamma_linear >= 1.0)) throw InvalidThreshold("gamma must be >= 1");
    if (!(alpha > 2.0)) throw InvalidModel("alpha must exceed 2");
    double p_dm = std::pow(gamma_linear, -2.0 / alpha);
    return {1.0 - p_dm, p_dm};
}

MarEstimate mar_empirical(const NetworkModel& model, double gamma_linear,
                          std::size_t trials, double confidence) {
    model.validate();
    if (!(gamma_linear >= 1.0)) throw InvalidThreshold("gamma must be >= 1");
    if (trials == 0) throw NoSamples("trials must be >= 1");

    const Point user{model.window_side_m / 2, model.window_side_m / 2};
    std::size_t cm_count = 0;
    std::vector<double> dist;
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = make_trial_rng(model.rng_seed, t);
        NetworkModel du_only = model;
        du_only.user_densities.clear();
        Topology topo = sample_topology(du_only, rng);
        dist.clear();
        dist.reserve(topo.du_points.size());
        for (const auto& p : topo.du_points)
            dist.push_back(torus_distance(user, p, model.window_side_m));
        std::sort(dist.begin(), dist.end());
        auto set = comp_cluster(dist, gamma_linear, model.pathloss_exponent, model.max_comp_dus);
        if (set.mode == Mode::CM) ++cm_count;
    }
    MarEstimate out;
    out.p_cm = proportion_estimate(cm_count, trials, confidence);
    out.p_dm = proportion_estimate(trials - cm_count, trials, confidence);
    // The two proportions are complementary by construction.
    out.p_dm.mean = 1.0 - out.p_cm.mean;
    return out;
}

}  // namespace ffsim
