#include "ffs/des.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ffs/errors.hpp"
#include "ffs/rng.hpp"

namespace ffsim {

namespace {

struct ArrivalStream {
    std::exponential_distribution<double> gap;
    double next = 0.0;
};

double draw_service(const DesClass& cls, std::mt19937_64& rng) {
    if (!cls.exponential_service) return cls.service_mean_s;
    std::exponential_distribution<double> d(1.0 / cls.service_mean_s);
    return d(rng);
}

}  // namespace

DesResult des_queue(Discipline discipline, std::span<const DesClass> classes,
                    const McConfig& cfg) {
    cfg.validate();
    if (classes.empty()) throw NoSamples("no traffic classes");
    for (const auto& c : classes)
        if (!(c.arrival_rate > 0.0) || !(c.service_mean_s > 0.0))
            throw InvalidModel("class rates and service times must be positive");

    DesResult result;
    double rho = 0.0;
    for (const auto& c : classes) rho += c.arrival_rate * c.service_mean_s;
    result.unstable = rho >= 1.0;

    auto rng = make_rng(cfg.seed);
    std::vector<ArrivalStream> streams;
    streams.reserve(classes.size());
    for (const auto& c : classes) {
        ArrivalStream s{std::exponential_distribution<double>(c.arrival_rate), 0.0};
        s.next = s.gap(rng);
        streams.push_back(s);
    }
    auto next_arrival_class = [&]() {
        std::size_t best = 0;
        for (std::size_t k = 1; k < streams.size(); ++k)
            if (streams[k].next < streams[best].next) best = k;
        return best;
    };

    std::vector<RunningStats> stats(classes.size());
    std::size_t completed = 0;
    auto record = [&](std::size_t cls, double sojourn) {
        ++completed;
        if (completed > cfg.warmup_packets) stats[cls].add(sojourn);
    };

    if (discipline == Discipline::FCFS) {
        double server_free = 0.0;
        while (completed < cfg.horizon_packets) {
            std::size_t k = next_arrival_class();
            double t_arr = streams[k].next;
            streams[k].next += streams[k].gap(rng);
            server_free = std::max(server_free, t_arr) + draw_service(classes[k], rng);
            record(k, server_free - t_arr);
        }
    } else {
        struct Job {
            std::size_t cls;
            double arrival;
            double remaining;
        };
        std::vector<Job> jobs;
        double now = 0.0;
        while (completed < cfg.horizon_packets) {
            std::size_t k = next_arrival_class();
            double t_arr = streams[k].next;
            double min_rem = std::numeric_limits<double>::infinity();
            for (const auto& j : jobs) min_rem = std::min(min_rem, j.remaining);
            double q = static_cast<double>(jobs.size());
            double dep_t = jobs.empty() ? std::numeric_limits<double>::infinity()
                                        : now + min_rem * q;
            if (t_arr <= dep_t) {
                double share = jobs.empty() ? 0.0 : (t_arr - now) / q;
                for (auto& j : jobs) j.remaining -= share;
                now = t_arr;
                streams[k].next += streams[k].gap(rng);
                jobs.push_back({k, t_arr, draw_service(classes[k], rng)});
            } else {
                for (auto& j : jobs) j.remaining -= min_rem;
                now = dep_t;
                for (std::size_t i = 0; i < jobs.size();) {
                    if (jobs[i].remaining <= 1e-15 * classes[jobs[i].cls].service_mean_s) {
                        record(jobs[i].cls, now - jobs[i].arrival);
                        jobs[i] = jobs.back();
                        jobs.pop_back();
                    } else {
                        ++i;
                    }
                }
            }
        }
    }

    result.sojourn_s.reserve(classes.size());
    for (auto& s : stats)
        result.sojourn_s.push_back(s.count() > 0 ? s.estimate(cfg.confidence) : McEstimate{});
    return result;
}

}  // namespace ffsim
