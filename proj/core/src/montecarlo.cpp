#include "ffs/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "ffs/errors.hpp"
#include "ffs/radio.hpp"
#include "ffs/rng.hpp"

namespace ffsim {

void McConfig::validate() const {
    if (trials < 1) throw NoSamples("trials must be >= 1");
    if (horizon_packets <= warmup_packets)
        throw InvalidModel("horizon_packets must exceed warmup_packets");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw InvalidModel("confidence must be in (0,1)");
}

namespace {

// One typical-user draw: sorted torus distances plus aligned fading.
struct Draw {
    std::vector<double> distances;
    std::vector<double> fading;
};

void sample_draw(const NetworkModel& model, std::mt19937_64& rng, Draw& d) {
    NetworkModel du_only = model;
    du_only.user_densities.clear();
    Topology topo = sample_topology(du_only, rng);
    const Point user{model.window_side_m / 2, model.window_side_m / 2};
    d.distances.resize(topo.du_points.size());
    for (std::size_t i = 0; i < topo.du_points.size(); ++i)
        d.distances[i] = torus_distance(user, topo.du_points[i], model.window_side_m);
    std::sort(d.distances.begin(), d.distances.end());
    std::exponential_distribution<double> fade(1.0 / model.fading_mean);
    d.fading.resize(d.distances.size());
    for (auto& h : d.fading) h = fade(rng);
}

}  // namespace

std::vector<CoveragePoint> mc_coverage(const NetworkModel& model, double gamma_linear,
                                       std::span<const double> t_grid_linear,
                                       const McConfig& cfg) {
    model.validate();
    cfg.validate();
    if (t_grid_linear.empty()) throw NoSamples("empty threshold grid");

    std::vector<std::size_t> total(t_grid_linear.size(), 0);
    std::vector<std::size_t> dm_joint(t_grid_linear.size(), 0);
    std::vector<std::size_t> cm_joint(t_grid_linear.size(), 0);
    Draw d;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        auto rng = make_trial_rng(cfg.seed, t);
        sample_draw(model, rng, d);
        ServingSet set =
            comp_cluster(d.distances, gamma_linear, model.pathloss_exponent, model.max_comp_dus);
        double sinr = sinr_sample(set, d.distances, d.fading, model);
        for (std::size_t k = 0; k < t_grid_linear.size(); ++k) {
            if (sinr >= t_grid_linear[k]) {
                ++total[k];
                (set.mode == Mode::DM ? dm_joint : cm_joint)[k]++;
            }
        }
    }
    std::vector<CoveragePoint> out(t_grid_linear.size());
    for (std::size_t k = 0; k < t_grid_linear.size(); ++k) {
        out[k].threshold_linear = t_grid_linear[k];
        out[k].total = proportion_estimate(total[k], cfg.trials, cfg.confidence);
        out[k].dm_joint = proportion_estimate(dm_joint[k], cfg.trials, cfg.confidence);
        out[k].cm_joint = proportion_estimate(cm_joint[k], cfg.trials, cfg.confidence);
    }
    return out;
}

McEstimate mc_rate(const NetworkModel& model, double gamma_linear, const McConfig& cfg) {
    model.validate();
    cfg.validate();
    RunningStats stats;
    Draw d;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        auto rng = make_trial_rng(cfg.seed, t);
        sample_draw(model, rng, d);
        ServingSet set =
            comp_cluster(d.distances, gamma_linear, model.pathloss_exponent, model.max_comp_dus);
        stats.add(std::log1p(sinr_sample(set, d.distances, d.fading, model)));
    }
    return stats.estimate(cfg.confidence);
}

}  // namespace ffsim
