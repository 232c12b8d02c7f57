#include <cmath>
#include <numeric>

#include <doctest.h>

#include "ffs/errors.hpp"
#include "ffs/geometry.hpp"
#include "ffs/quadrature.hpp"

using namespace ffsim;

namespace {

NetworkModel base_model() {
    NetworkModel m;
    m.du_density = 20e-6;
    m.pathloss_exponent = 4.0;
    m.window_side_m = 1000.0;
    return m;
}

}  // namespace

TEST_CASE("torus distance wraps around") {
    CHECK(torus_distance({10, 10}, {990, 10}, 1000.0) == doctest::Approx(20.0));
    CHECK(torus_distance({10, 10}, {10, 990}, 1000.0) == doctest::Approx(20.0));
    CHECK(torus_distance({0, 0}, {500, 500}, 1000.0) ==
          doctest::Approx(std::sqrt(2.0) * 500.0));
}

TEST_CASE("sample_topology mean DU count matches the density") {
    NetworkModel m = base_model();
    double total = 0.0;
    const int trials = 100000;
    for (int t = 0; t < trials; ++t) {
        Topology topo = sample_topology(m, static_cast<std::uint64_t>(t + 1));
        total += static_cast<double>(topo.du_points.size());
    }
    CHECK(total / trials == doctest::Approx(20.0).epsilon(0.005));
}

TEST_CASE("sample_topology is deterministic in the seed") {
    NetworkModel m = base_model();
    m.user_densities = {50e-6};
    Topology a = sample_topology(m, 42);
    Topology b = sample_topology(m, 42);
    REQUIRE(a.du_points.size() == b.du_points.size());
    for (std::size_t i = 0; i < a.du_points.size(); ++i) {
        CHECK(a.du_points[i].x == b.du_points[i].x);
        CHECK(a.du_points[i].y == b.du_points[i].y);
    }
    REQUIRE(a.user_points.size() == 1);
    CHECK(a.user_points[0].size() == b.user_points[0].size());
}

TEST_CASE("degenerate window is rejected") {
    NetworkModel m = base_model();
    m.window_side_m = 0.0;
    CHECK_THROWS_AS(sample_topology(m, 1), InvalidModel);
}

TEST_CASE("empty-topology policy") {
    NetworkModel m = base_model();
    m.du_density = 5e-4;  // mean count 0.05: first draw is almost surely empty
    m.window_side_m = 10.0;
    CHECK_THROWS_AS(sample_topology(m, 1, EmptyPolicy::Error), EmptyTopology);
    Topology topo = sample_topology(m, 1, EmptyPolicy::Resample);
    CHECK(topo.du_points.size() >= 1);
}

TEST_CASE("pld_ratio direct values") {
    CHECK(pld_ratio(100, 100, 4) == doctest::Approx(1.0));
    CHECK(pld_ratio(100, 200, 4) == doctest::Approx(16.0));
    CHECK(pld_ratio(100, 150, 4) == doctest::Approx(5.0625));
    CHECK_THROWS_AS(pld_ratio(200, 100, 4), OrderingViolation);
}

TEST_CASE("comp_cluster selects by power level difference") {
    double d1[] = {100, 150, 400};
    ServingSet s = comp_cluster(d1, 10.0, 4.0, 2);
    CHECK(s.mode == Mode::CM);
    REQUIRE(s.du_indices.size() == 2);
    CHECK(s.du_indices[0] == 0);
    CHECK(s.du_indices[1] == 1);

    ServingSet dm = comp_cluster(d1, 1.0, 4.0, 2);
    CHECK(dm.mode == Mode::DM);
    CHECK(dm.du_indices.size() == 1);

    double d2[] = {100, 110, 120};
    ServingSet capped = comp_cluster(d2, 100.0, 4.0, 2);
    CHECK(capped.du_indices.size() == 2);  // capped at max_comp_dus
}

TEST_CASE("comp_cluster includes the boundary DU") {
    // upsilon == gamma exactly
    double d[] = {100.0, 100.0 * std::pow(10.0, 0.25)};
    ServingSet s = comp_cluster(d, 10.0, 4.0, 2);
    CHECK(s.du_indices.size() == 2);
}

TEST_CASE("joint_distance_density direct values") {
    const double lam = 1.0 / 3.14159265358979323846;
    double r1[] = {1.0};
    CHECK(joint_distance_density(r1, lam) == doctest::Approx(2.0 * std::exp(-1.0)));
    double r2[] = {1.0, 2.0};
    CHECK(joint_distance_density(r2, lam) == doctest::Approx(4.0 * 2.0 * std::exp(-5.0)));
}

TEST_CASE("nearest distance pdf normalizes") {
    const double lam = 20e-6;
    auto r = quad::integrate_to_inf([&](double x) { return nearest_distance_pdf(x, lam); },
                                    0.0, 1.0 / std::sqrt(lam));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("ordered pair density normalizes and dominates on r1 < r2") {
    const double lam = 20e-6;
    double scale = 1.0 / std::sqrt(lam);
    auto outer = quad::integrate_to_inf(
        [&](double r1) {
            if (r1 <= 0.0) return 0.0;
            auto inner = quad::integrate_to_inf(
                [&](double r2) { return ordered_pair_density(r1, r2, lam); }, r1, scale);
            return inner.value;
        },
        0.0, scale);
    CHECK(outer.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mar_analytic closed form") {
    auto [p_cm0, p_dm0] = mar_analytic(1.0, 4.0);
    CHECK(p_cm0 == doctest::Approx(0.0));
    CHECK(p_dm0 == doctest::Approx(1.0));

    auto [p_cm1, p_dm1] = mar_analytic(10.0, 4.0);
    CHECK(p_dm1 == doctest::Approx(0.31623).epsilon(1e-4));
    CHECK(p_cm1 == doctest::Approx(0.68377).epsilon(1e-4));

    auto [p_cm2, p_dm2] = mar_analytic(100.0, 4.0);
    CHECK(p_dm2 == doctest::Approx(0.1));
    CHECK(p_cm2 == doctest::Approx(0.9));

    CHECK(p_cm1 + p_dm1 == doctest::Approx(1.0));
    CHECK_THROWS_AS(mar_analytic(0.5, 4.0), InvalidThreshold);
}

TEST_CASE("mar_empirical matches the closed form") {
    NetworkModel m = base_model();
    SUBCASE("gamma=1 gives p_cm = 0 exactly") {
        MarEstimate e = mar_empirical(m, 1.0, 2000);
        CHECK(e.p_cm.mean == 0.0);
        CHECK(e.p_dm.mean == 1.0);
    }
    SUBCASE("gamma=10 within 0.01 of 0.68377") {
        MarEstimate e = mar_empirical(m, 10.0, 100000);
        CHECK(e.p_cm.mean == doctest::Approx(0.68377).epsilon(0.015));
        CHECK(e.p_cm.mean + e.p_dm.mean == doctest::Approx(1.0));
        CHECK(e.p_cm.half_width > 0.0);
    }
    SUBCASE("zero trials is rejected") {
        CHECK_THROWS_AS(mar_empirical(m, 10.0, 0), NoSamples);
    }
}
