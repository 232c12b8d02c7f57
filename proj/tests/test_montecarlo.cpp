#include <cmath>
#include <vector>

#include <doctest.h>

#include "ffs/config.hpp"
#include "ffs/des.hpp"
#include "ffs/errors.hpp"
#include "ffs/montecarlo.hpp"
#include "ffs/radio.hpp"
#include "ffs/sweep.hpp"

using namespace ffsim;

namespace {

NetworkModel wide_model() {
    NetworkModel m;
    m.du_density = 20e-6;
    m.pathloss_exponent = 4.0;
    m.noise_dbm = -300.0;
    m.window_side_m = 2000.0;  // keeps truncated-interference bias small
    return m;
}

}  // namespace

TEST_CASE("mc_coverage matches the analytic oracle") {
    NetworkModel m = wide_model();
    McConfig cfg;
    cfg.trials = 10000;
    cfg.seed = 11;

    SUBCASE("very low threshold is always covered") {
        std::vector<double> t{1e-6};
        auto pts = mc_coverage(m, 1.0, t, cfg);
        CHECK(pts[0].total.mean > 0.999);
    }
    SUBCASE("interference-limited closed form at gamma=1, T=1") {
        std::vector<double> t{1.0};
        auto pts = mc_coverage(m, 1.0, t, cfg);
        double expected = 1.0 / (1.0 + 3.14159265358979 / 4.0);
        CHECK(std::abs(pts[0].total.mean - expected) <
              std::max(0.02, 3.0 * pts[0].total.half_width));
        CHECK(pts[0].cm_joint.mean == 0.0);
    }
    SUBCASE("wider clustering dominates at every threshold") {
        std::vector<double> t{0.1, 1.0, 10.0};
        auto narrow = mc_coverage(m, 1.0, t, cfg);
        auto wide = mc_coverage(m, 100.0, t, cfg);
        for (std::size_t k = 0; k < t.size(); ++k)
            CHECK(wide[k].total.mean >=
                  narrow[k].total.mean - narrow[k].total.half_width);
    }
    SUBCASE("empty grid is rejected") {
        std::vector<double> t;
        CHECK_THROWS_AS(mc_coverage(m, 1.0, t, cfg), NoSamples);
    }
}

TEST_CASE("mc_rate cross-validates the quadrature rate") {
    NetworkModel m = wide_model();
    McConfig cfg;
    cfg.trials = 20000;
    cfg.seed = 3;
    McEstimate mc = mc_rate(m, 1.0, cfg);
    RateResult analytic = ergodic_rate(1.0, m);
    CHECK(std::abs(mc.mean - analytic.rate_nats) < 0.02);

    McEstimate mc_wide = mc_rate(m, 100.0, cfg);
    CHECK(mc_wide.mean > mc.mean);

    SUBCASE("noise-dominated rate collapses") {
        NetworkModel noisy = m;
        noisy.noise_dbm = 200.0;
        McEstimate z = mc_rate(noisy, 1.0, cfg);
        CHECK(z.mean < 1e-6);
    }
}

TEST_CASE("des_queue M/M/1-PS oracle") {
    McConfig cfg;
    cfg.seed = 5;
    cfg.warmup_packets = 5000;
    cfg.horizon_packets = 400000;
    std::vector<DesClass> classes{{0.5, 1.0, true}};
    DesResult r = des_queue(Discipline::PS, classes, cfg);
    CHECK_FALSE(r.unstable);
    CHECK(r.sojourn_s[0].mean == doctest::Approx(2.0).epsilon(0.02));

    SUBCASE("rho grid") {
        for (double lambda : {0.3, 0.6}) {
            classes[0].arrival_rate = lambda;
            DesResult g = des_queue(Discipline::PS, classes, cfg);
            CHECK(g.sojourn_s[0].mean ==
                  doctest::Approx(1.0 / (1.0 - lambda)).epsilon(0.02));
        }
    }
}

TEST_CASE("des_queue light-traffic limit is the service time") {
    McConfig cfg;
    cfg.seed = 6;
    cfg.warmup_packets = 100;
    cfg.horizon_packets = 20000;
    std::vector<DesClass> classes{{1e-4, 1.0, false}};
    DesResult r = des_queue(Discipline::PS, classes, cfg);
    CHECK(r.sojourn_s[0].mean == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("des_queue PS analytic formula holds for deterministic service") {
    McConfig cfg;
    cfg.seed = 7;
    cfg.warmup_packets = 5000;
    cfg.horizon_packets = 400000;
    std::vector<DesClass> classes{{0.6, 1.0, false}};  // rho = 0.6
    DesResult r = des_queue(Discipline::PS, classes, cfg);
    CHECK(r.sojourn_s[0].mean == doctest::Approx(1.0 / (1.0 - 0.6)).epsilon(0.02));
}

TEST_CASE("short packets suffer under FCFS next to long ones") {
    McConfig cfg;
    cfg.seed = 8;
    cfg.warmup_packets = 5000;
    cfg.horizon_packets = 300000;
    // class 2 service is 20x class 1; total rho = 0.5
    std::vector<DesClass> classes{{0.25, 1.0, false}, {0.0125, 20.0, false}};
    DesResult fcfs = des_queue(Discipline::FCFS, classes, cfg);
    DesResult ps = des_queue(Discipline::PS, classes, cfg);
    CHECK(fcfs.sojourn_s[0].mean > ps.sojourn_s[0].mean);
}

TEST_CASE("des_queue is reproducible and CI shrinks like sqrt(n)") {
    McConfig cfg;
    cfg.seed = 9;
    cfg.warmup_packets = 2000;
    cfg.horizon_packets = 100000;
    std::vector<DesClass> classes{{0.5, 1.0, true}};
    DesResult a = des_queue(Discipline::PS, classes, cfg);
    DesResult b = des_queue(Discipline::PS, classes, cfg);
    CHECK(a.sojourn_s[0].mean == b.sojourn_s[0].mean);
    CHECK(a.sojourn_s[0].half_width == b.sojourn_s[0].half_width);

    McConfig doubled = cfg;
    doubled.horizon_packets = 200000;
    DesResult c = des_queue(Discipline::PS, classes, doubled);
    double ratio = a.sojourn_s[0].half_width / c.sojourn_s[0].half_width;
    CHECK(ratio > std::sqrt(2.0) * 0.7);
    CHECK(ratio < std::sqrt(2.0) * 1.3);
}

TEST_CASE("des_queue flags instability") {
    McConfig cfg;
    cfg.seed = 10;
    cfg.warmup_packets = 100;
    cfg.horizon_packets = 5000;
    std::vector<DesClass> classes{{1.2, 1.0, true}};
    DesResult r = des_queue(Discipline::PS, classes, cfg);
    CHECK(r.unstable);
}

TEST_CASE("sweep_outage rows keep their identities") {
    ExperimentConfig base = parse_config(default_config_json());
    Scenario sc = base.scenario;
    std::size_t u = sc.service_index(ServiceKind::Urllc);
    std::size_t e = sc.service_index(ServiceKind::Embb);
    sc.services[u].sinr_threshold_linear = 0.1;

    std::vector<double> grid{50, 100, 200, 400, 1200};
    auto rows = sweep_outage(sc, SweepAxis::EmbbDensity, grid, {});
    REQUIRE(rows.size() == grid.size());

    double prev_pcm_e = 2.0;
    bool saw_infeasible = false;
    for (const auto& r : rows) {
        CHECK(r.p_cm[e] + r.p_dm[e] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.p_cm[u] + r.p_dm[u] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.outage == 1.0 - r.reliability);  // exact by construction
        if (r.feasible) {
            CHECK(r.p_cm[e] <= prev_pcm_e + 1e-9);  // decreasing with density
            prev_pcm_e = r.p_cm[e];
        } else {
            saw_infeasible = true;
            CHECK_FALSE(r.note.empty());
        }
    }
    CHECK(saw_infeasible);  // the 1200/km2 point overloads the CU
}
