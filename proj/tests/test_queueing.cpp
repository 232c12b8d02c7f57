#include <array>
#include <vector>

#include <doctest.h>

#include "ffs/errors.hpp"
#include "ffs/queueing.hpp"

using namespace ffsim;

namespace {

ServiceClass make_service(double users, double rate, double cycles) {
    ServiceClass s;
    s.user_count = users;
    s.arrival_rate = rate;
    s.cycles_per_packet = cycles;
    s.tti_s = 0.0000625;
    s.delay_budget_s = 0.001;
    s.reliability_target = 0.99999;
    return s;
}

ModeProfiles make_modes(double beta_cm_cu = 0.5, double beta_dm_cu = 0.5) {
    ModeProfiles m;
    m.cm = {beta_cm_cu, 1.0 - beta_cm_cu, 0.0, 2.0};
    m.dm = {beta_dm_cu, 1.0 - beta_dm_cu, 0.0, 1.0};
    return m;
}

}  // namespace

TEST_CASE("workload direct evaluation") {
    std::vector<ServiceClass> svcs{make_service(100, 10, 1000)};
    ModeProfiles modes = make_modes();
    ServerSpec spec;
    spec.cu_rate = 1e7;
    std::vector<ModeSplit> mars{{1.0, 0.0}};  // all CM
    SystemLoad load = workload(svcs, modes, mars, spec);
    CHECK(load.rho_cu == doctest::Approx(0.05));

    SUBCASE("no users means no load") {
        svcs[0].user_count = 0.0;
        load = workload(svcs, modes, mars, spec);
        CHECK(load.rho_cu == 0.0);
        CHECK(load.rho_du == 0.0);
    }
    SUBCASE("doubling the CU rate halves the CU load") {
        spec.cu_rate = 2e7;
        load = workload(svcs, modes, mars, spec);
        CHECK(load.rho_cu == doctest::Approx(0.025));
    }
}

TEST_CASE("ps_sojourn_mean") {
    double tau = service_time_s(0.5, 2500, 1e9);
    CHECK(tau == doctest::Approx(1.25e-6));
    CHECK(ps_sojourn_mean(tau, 0.0) == doctest::Approx(tau));
    CHECK(ps_sojourn_mean(tau, 0.5) == doctest::Approx(2.5e-6));
    CHECK(ps_sojourn_mean(tau, 0.999) == doctest::Approx(1000.0 * tau));
    CHECK_THROWS_AS(ps_sojourn_mean(tau, 1.0), NotOperable);
}

TEST_CASE("PS sojourn is convex increasing in the load") {
    double prev = ps_sojourn_mean(1.0, 0.0);
    double prev_diff = 0.0;
    for (int i = 1; i <= 90; ++i) {
        double rho = i / 100.0;
        double cur = ps_sojourn_mean(1.0, rho);
        double diff = cur - prev;
        CHECK(diff > 0.0);
        CHECK(diff >= prev_diff);  // positive second difference
        prev = cur;
        prev_diff = diff;
    }
}

TEST_CASE("queue_length_pmf") {
    CHECK(queue_length_pmf(0.0, 0) == doctest::Approx(1.0));
    CHECK(queue_length_pmf(0.5, 2) == doctest::Approx(0.125));
    double partial = 0.0;
    for (int q = 0; q <= 20; ++q) partial += queue_length_pmf(0.5, q);
    CHECK(partial == doctest::Approx(1.0 - std::pow(2.0, -21.0)).epsilon(1e-12));
    // mean of the geometric pmf is rho/(1-rho)
    double mean = 0.0;
    for (int q = 0; q < 400; ++q) mean += q * queue_length_pmf(0.5, q);
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fcfs_waiting_s Pollaczek-Khinchine") {
    SUBCASE("single deterministic class") {
        FcfsClass c{0.5, 1.0};  // rho = 0.5
        std::array<FcfsClass, 1> cs{c};
        double w = fcfs_waiting_s(cs);
        CHECK(w == doctest::Approx(0.5));
        CHECK(w + c.service_s == doctest::Approx(1.5));
    }
    SUBCASE("vanishing load gives vanishing wait") {
        std::array<FcfsClass, 1> cs{FcfsClass{1e-9, 1.0}};
        CHECK(fcfs_waiting_s(cs) == doctest::Approx(0.0).epsilon(1e-6));
    }
    SUBCASE("saturated server throws") {
        std::array<FcfsClass, 1> cs{FcfsClass{1.0, 1.0}};
        CHECK_THROWS_AS(fcfs_waiting_s(cs), NotOperable);
    }
}

TEST_CASE("one_way_delay_s sums the path components") {
    CHECK(one_way_delay_s(0, 0, 0.0000625, 0) == doctest::Approx(0.0000625));
    CHECK(one_way_delay_s(0.0001, 0.00005, 0.0000625, 0.000025) ==
          doctest::Approx(0.0002375));
}

TEST_CASE("max_retransmissions budget arithmetic") {
    CHECK(max_retransmissions(0.0003, 0.001, 0.0001) == 1);
    CHECK(max_retransmissions(0.0012, 0.001, 0.0001) == 0);
    CHECK(max_retransmissions(0.0005, 0.001, 0.0001) == 0);
}

TEST_CASE("retrans_success") {
    CHECK(retrans_success(1.0, 5) == doctest::Approx(1.0));
    CHECK(retrans_success(0.42, 0) == doctest::Approx(0.42));
    CHECK(retrans_success(0.9, 1) == doctest::Approx(0.99));
}

TEST_CASE("reliability mixes modes by their allocation") {
    std::array<ModeReliability, 2> per_mode;
    per_mode[mode_index(Mode::CM)] = {0.99, 0, 0.6};
    per_mode[mode_index(Mode::DM)] = {0.9, 0, 0.4};
    CHECK(reliability(per_mode) == doctest::Approx(0.954));

    SUBCASE("perfect attempts give certainty") {
        per_mode[0].p_succ = per_mode[1].p_succ = 1.0;
        CHECK(reliability(per_mode) == doctest::Approx(1.0));
    }
    SUBCASE("no CM mass leaves the DM term alone") {
        per_mode[mode_index(Mode::CM)].mar = 0.0;
        per_mode[mode_index(Mode::DM)].mar = 1.0;
        CHECK(reliability(per_mode) == doctest::Approx(0.9));
    }
}

TEST_CASE("evaluate_queues fills utilizations and delays") {
    std::vector<ServiceClass> svcs{make_service(200, 100, 50000),
                                   make_service(50, 10, 2500)};
    svcs[1].name = ServiceKind::Urllc;
    ModeProfiles modes = make_modes(0.7, 0.3);
    ServerSpec spec;  // defaults: 1e9, eta 0.2, N 20
    std::vector<ModeSplit> mars{{0.5, 0.5}, {0.5, 0.5}};

    QueueState ps = evaluate_queues(svcs, modes, mars, spec, Discipline::PS);
    REQUIRE(ps.operable);
    REQUIRE(ps.delays.size() == 2);
    for (std::size_t s = 0; s < 2; ++s)
        for (int m = 0; m < 2; ++m) {
            CHECK(ps.delays[s][m].cu_sojourn_s > 0.0);
            CHECK(ps.delays[s][m].one_way_s >=
                  ps.delays[s][m].cu_sojourn_s + ps.delays[s][m].du_sojourn_s);
        }

    QueueState fcfs = evaluate_queues(svcs, modes, mars, spec, Discipline::FCFS);
    REQUIRE(fcfs.operable);
    CHECK(fcfs.rho_cu == doctest::Approx(ps.rho_cu));
    // FCFS makes the short URLLC packets wait behind long eMBB ones.
    int cm = mode_index(Mode::CM);
    CHECK(fcfs.delays[1][cm].cu_sojourn_s > ps.delays[1][cm].cu_sojourn_s);

    SUBCASE("overload is reported, not thrown") {
        svcs[0].user_count = 1e5;
        QueueState over = evaluate_queues(svcs, modes, mars, spec, Discipline::PS);
        CHECK_FALSE(over.operable);
        CHECK(over.rho_cu >= 1.0);
    }
}

TEST_CASE("validation rejects malformed inputs") {
    ServiceClass s = make_service(10, 10, 1000);
    CHECK_NOTHROW(s.validate());
    s.delay_budget_s = s.tti_s;  // budget must exceed one TTI
    CHECK_THROWS_AS(s.validate(), InvalidModel);

    ModeProfiles modes = make_modes();
    modes.cm.beta_du = 0.6;  // breaks the split identity
    CHECK_THROWS_AS(modes.validate(), InvalidModel);

    ModeProfiles lagging = make_modes();
    lagging.dm.control_overhead_s = 1e-4;
    lagging.cm.control_overhead_s = 0.0;
    CHECK_THROWS_AS(lagging.validate(), InvalidModel);

    ServerSpec spec;
    spec.du_efficiency = 1.5;
    CHECK_THROWS_AS(spec.validate(), InvalidModel);
}
